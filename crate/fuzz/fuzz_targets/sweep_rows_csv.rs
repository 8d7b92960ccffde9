#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(rows) = loopmesh::io::parse_sweep_rows(text) {
            let csv = loopmesh::io::sweep_rows_to_csv(&rows).expect("rows must format");
            let again =
                loopmesh::io::parse_sweep_rows(&csv).expect("formatter output must reparse");
            assert_eq!(rows.len(), again.len());
        }
    }
});
