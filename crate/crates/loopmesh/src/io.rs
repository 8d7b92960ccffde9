//! File-format surface: the complex-matrix CSV reader, the sweep config
//! (JSON) reader, and the CSV writers/readers for sweep rows, gate lists,
//! schedules and the catalog. These parsers take untrusted text and must
//! never panic; they are also the fuzzing entry points.

use num_complex::Complex64;
use serde::Deserialize;

use crate::architectures::ArchitectureConfig;
use crate::heuristics::{catalog, ComponentCatalogEntry};
use crate::mesh::{ControlSchedule, MeshDecomposition};
use crate::numerics::ComplexMatrix;
use crate::runner::{SweepConfig, SweepRow};
use crate::{Error, Result};

/// Parse one complex entry written as `re+imj` (e.g. `0.5-0.25j`, `1.5`,
/// `0.3j`, `1e-3+2e-4j`).
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some(body) = s.strip_suffix(['j', 'J']) {
        // find the sign splitting real and imaginary parts: the last '+'/'-'
        // that is not leading and not an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let b = bytes[idx];
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx].trim().parse().ok()?;
                let im_text = body[idx..].trim();
                let im: f64 = if im_text == "+" {
                    1.0
                } else if im_text == "-" {
                    -1.0
                } else {
                    im_text.parse().ok()?
                };
                Some(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() { 1.0 } else { body.trim().parse().ok()? };
                Some(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s.parse().ok()?;
        Some(Complex64::new(re, 0.0))
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}{}j", z.re, z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}

/// Parse a square complex matrix from CSV text, one row per line, entries as
/// `re+imj`.
pub fn parse_matrix_csv(text: &str) -> Result<ComplexMatrix> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split(',') {
            let z = parse_complex(field).ok_or_else(|| Error::Parse {
                line: lineno + 1,
                message: format!("invalid complex entry {field:?}"),
            })?;
            row.push(z);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected {} entries, got {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "empty matrix".into(),
        });
    }
    let nrows = rows.len();
    let ncols = rows[0].len();
    ComplexMatrix::from_entries(nrows, ncols, rows.into_iter().flatten().collect())
}

pub fn matrix_to_csv(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let fields: Vec<String> = (0..m.cols()).map(|j| format_complex(m[(i, j)])).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweepConfig {
    architecture: String,
    transmissions: RawTransmissions,
    n_values: Vec<usize>,
    #[serde(default = "default_trials")]
    trials: usize,
    seed: u64,
    output: String,
}

fn default_trials() -> usize {
    50
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransmissions {
    gate: f64,
    switch: Option<f64>,
    inner: Option<f64>,
    outer_base: Option<f64>,
}

/// Parse and validate a sweep configuration document (JSON). Unknown keys
/// are rejected.
pub fn parse_sweep_config(text: &str) -> Result<SweepConfig> {
    let raw: RawSweepConfig = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let t = &raw.transmissions;
    let architecture = match raw.architecture.as_str() {
        "chain_loop" => ArchitectureConfig::chain_loop(
            t.gate,
            t.inner
                .ok_or_else(|| Error::InvalidArgument("chain_loop requires transmissions.inner".into()))?,
        )?,
        "dual_loop" => ArchitectureConfig::dual_loop(
            t.gate,
            t.switch
                .ok_or_else(|| Error::InvalidArgument("dual_loop requires transmissions.switch".into()))?,
            t.inner
                .ok_or_else(|| Error::InvalidArgument("dual_loop requires transmissions.inner".into()))?,
            t.outer_base
                .ok_or_else(|| Error::InvalidArgument("dual_loop requires transmissions.outer_base".into()))?,
        )?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "architecture must be chain_loop or dual_loop, got {other:?}"
            )))
        }
    };
    if raw.trials < 1 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if raw.n_values.is_empty() {
        return Err(Error::InvalidArgument("n_values must not be empty".into()));
    }
    for &n in &raw.n_values {
        if n < 2 {
            return Err(Error::InvalidDimension { min: 2, got: n });
        }
    }
    Ok(SweepConfig {
        architecture,
        n_values: raw.n_values,
        trials: raw.trials,
        base_seed: raw.seed,
        output_path: raw.output.into(),
    })
}

pub const SWEEP_CSV_HEADER: &str =
    "N,eta_heuristic,avg_eta_bar,avg_eta_max,avg_eta_min,avg_delta_eta,trials,base_seed";

pub fn sweep_rows_to_csv(rows: &[SweepRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            r.eta_heuristic,
            r.avg_eta_bar,
            r.avg_eta_max,
            r.avg_eta_min,
            r.avg_delta_eta,
            r.trials,
            r.base_seed
        ));
    }
    Ok(out)
}

/// Parse sweep rows back from emitted CSV.
pub fn parse_sweep_rows(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == SWEEP_CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: "missing sweep CSV header".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected 8 fields, got {}", fields.len()),
            });
        }
        let bad = |message: String| Error::Parse {
            line: lineno + 1,
            message,
        };
        rows.push(SweepRow {
            n: fields[0].parse().map_err(|_| bad(format!("bad N {:?}", fields[0])))?,
            eta_heuristic: fields[1].parse().map_err(|_| bad("bad eta_heuristic".into()))?,
            avg_eta_bar: fields[2].parse().map_err(|_| bad("bad avg_eta_bar".into()))?,
            avg_eta_max: fields[3].parse().map_err(|_| bad("bad avg_eta_max".into()))?,
            avg_eta_min: fields[4].parse().map_err(|_| bad("bad avg_eta_min".into()))?,
            avg_delta_eta: fields[5].parse().map_err(|_| bad("bad avg_delta_eta".into()))?,
            trials: fields[6].parse().map_err(|_| bad("bad trials".into()))?,
            base_seed: fields[7].parse().map_err(|_| bad("bad base_seed".into()))?,
        });
    }
    Ok(rows)
}

/// Gate list CSV: one line per placed gate, then one `phase` line per mode.
pub fn mesh_to_csv(mesh: &MeshDecomposition) -> String {
    let mut out = String::from("record,layer,pair,theta,phi,is_padding\n");
    for g in mesh.gates() {
        out.push_str(&format!(
            "gate,{},{},{},{},{}\n",
            g.layer,
            g.pair,
            g.params.theta(),
            g.params.phi(),
            g.is_padding
        ));
    }
    for (mode, phase) in mesh.output_phases().iter().enumerate() {
        out.push_str(&format!("phase,{},,{},{},\n", mode + 1, phase.re, phase.im));
    }
    out
}

/// Schedule CSV: device,time,role,theta,phi,routing.
pub fn schedule_to_csv(schedule: &ControlSchedule) -> String {
    let mut out = String::from("device,time,role,theta,phi,routing\n");
    for ev in schedule.events() {
        let (theta, phi) = match ev.params {
            Some(p) => (p.theta().to_string(), p.phi().to_string()),
            None => (String::new(), String::new()),
        };
        let routing = ev.routing.map(|r| r.as_str()).unwrap_or("");
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            ev.device_id,
            ev.time,
            ev.role.as_str(),
            theta,
            phi,
            routing
        ));
    }
    out
}

/// Catalog CSV: name,kind,eta_gate,eta_switch,eta_inner,outer_base,tau,provenance.
pub fn catalog_to_csv() -> String {
    let mut out = String::from("name,kind,eta_gate,eta_switch,eta_inner,outer_base,tau,provenance\n");
    for entry in catalog() {
        out.push_str(&catalog_entry_csv(&entry));
    }
    out
}

fn catalog_entry_csv(entry: &ComponentCatalogEntry) -> String {
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{}\n",
        entry.name.as_str(),
        entry.kind.as_str(),
        entry.eta_gate,
        opt(entry.eta_switch),
        opt(entry.eta_inner),
        opt(entry.outer_base),
        opt(entry.tau),
        entry.provenance
    )
}

/// Write a text document, mapping failures to an I/O error carrying the path.
pub fn write_text(path: &std::path::Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_text(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
