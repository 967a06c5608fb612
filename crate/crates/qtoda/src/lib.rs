//! Batch front-end for `qtoda-core`: runs the exact identity suites and the wave-function
//! evaluations, and writes newline-delimited JSON, CSV or text reports.

pub mod catalogue;
pub mod cli;
pub mod config;
pub mod eval;
pub mod hamiltonians;
pub mod report;
pub mod verify;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const IDENTITY_FAILED: i32 = 2;
    pub const QUADRATURE_FAILED: i32 = 3;
}

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "QTODA_WORKERS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => exit::USAGE,
            CliError::Quadrature(_) => exit::QUADRATURE_FAILED,
        }
    }
}

impl From<qtoda_core::wavefunc::WaveError> for CliError {
    fn from(e: qtoda_core::wavefunc::WaveError) -> Self {
        match e {
            qtoda_core::wavefunc::WaveError::Domain(what) => CliError::Usage(what.to_string()),
            other => CliError::Quadrature(other.to_string()),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
