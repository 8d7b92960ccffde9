#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // must never panic; on success the printer must round-trip
        if let Ok(matrix) = loopmesh::io::parse_matrix_csv(text) {
            let again = loopmesh::io::parse_matrix_csv(&loopmesh::io::matrix_to_csv(&matrix))
                .expect("formatter output must reparse");
            assert_eq!(matrix, again);
        }
    }
});
