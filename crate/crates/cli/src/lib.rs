//! Library half of the `zxsurg` command-line tool.
//!
//! Everything the binary can do lives here as plain functions returning
//! strings and structured reports, so integration tests (and other tools)
//! can drive the same code paths without spawning processes. The binary in
//! `main.rs` is a thin argument-parsing and exit-code layer.
//!
//! Exit-code contract, kept stable:
//!
//! | code | meaning                                            |
//! |------|----------------------------------------------------|
//! | 0    | success, all checks passed                         |
//! | 1    | ran to completion but some verification case failed |
//! | 2    | unreadable or malformed input (file, JSON, flags)  |
//! | 3    | a size/evaluation cap was exceeded                 |
//! | 4    | internal soundness self-check failed               |

use thiserror::Error;

pub mod commands;
pub mod report;
pub mod suites;

/// Default comparison tolerance; override with the `ZXS_TOL` env var.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Reads the working tolerance from the environment.
pub fn tolerance_from_env() -> Result<f64, CliError> {
    match std::env::var("ZXS_TOL") {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t > 0.0)
            .ok_or_else(|| CliError::Parse(format!("ZXS_TOL={s:?} is not a positive number"))),
    }
}

/// Tool-level errors, each mapped to one documented exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input: exit code 2.
    #[error("{0}")]
    Parse(String),
    /// A size or evaluation cap was exceeded: exit code 3.
    #[error("{0}")]
    Cap(String),
    /// An internal self-check failed — the tool caught itself producing an
    /// unsound result: exit code 4.
    #[error("soundness: {0}")]
    Soundness(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Soundness(_) => 4,
        }
    }
}

impl From<zxgraph::ZxError> for CliError {
    fn from(e: zxgraph::ZxError) -> Self {
        match e {
            zxgraph::ZxError::CapExceeded(m) => CliError::Cap(m),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<surgery::SurgeryError> for CliError {
    fn from(e: surgery::SurgeryError) -> Self {
        match e {
            surgery::SurgeryError::TooManyOutcomeBits(n) => {
                CliError::Cap(format!("procedure has {n} outcome bits"))
            }
            surgery::SurgeryError::Zx(inner) => inner.into(),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<surfacesim::SurfaceError> for CliError {
    fn from(e: surfacesim::SurfaceError) -> Self {
        match e {
            surfacesim::SurfaceError::Capacity(n) => {
                CliError::Cap(format!("tableau capacity exceeded: {n} qubits"))
            }
            surfacesim::SurfaceError::DenseCapacity(n) => {
                CliError::Cap(format!("dense capacity exceeded: {n} qubits"))
            }
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<rewrite::RewriteError> for CliError {
    fn from(e: rewrite::RewriteError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(format!("i/o error: {e}"))
    }
}
