//! Loss analysis for temporally-encoded linear multiport interferometers.
//!
//! The library decomposes an arbitrary unitary into a triangular mesh of
//! Mach-Zehnder gates, builds the chronological loss diagram of the dual-loop
//! or chain-loop delay architecture on top of it, assembles the lossy process
//! matrix, and extracts singular-value based effective transmissions. Closed
//! form per-mode-line heuristics, a physical component catalog, Monte-Carlo
//! sweep drivers and CSV/SVG emission live alongside.

pub mod architectures;
pub mod channel;
pub mod heuristics;
pub mod io;
pub mod mesh;
pub mod numerics;
pub mod runner;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension must be at least {min}, got {got}")]
    InvalidDimension { min: usize, got: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },
    #[error("invalid timing: {0}")]
    InvalidTiming(String),
    #[error("transmission {name} = {value} outside (0, 1]")]
    InvalidTransmission { name: &'static str, value: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("spatial encoding has no loss diagram; use the closed-form heuristic")]
    UnsupportedDiagram,
    #[error("unphysical channel: singular value {value} exceeds 1")]
    Physicality { value: f64 },
    #[error("unknown catalog name {name:?}; valid names: {valid}")]
    UnknownCatalogName { name: String, valid: String },
    #[error("trial {trial} failed: {source}")]
    TrialFailed {
        trial: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no rows to emit")]
    EmptyRows,
    #[error("svd did not converge")]
    SvdFailure,
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
