//! Command-line front end for `isog7-core`: census output, counts,
//! constants and cross-checks.
//!
//! Exit statuses: 0 on success, 1 when a verification fails (or on a
//! runtime error such as I/O), 2 on a usage error.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod output;
pub mod parse;

use thiserror::Error;

pub use cli::{Cli, Command, Format, RunConfig};
pub use commands::run;

/// Environment variable naming the directory that relative `--output`
/// paths are resolved against.
pub const OUTPUT_DIR_ENV: &str = "ISOG7_OUTPUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid integer `{0}`")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] isog7_core::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad table cache {0}")]
    Cache(String),
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use isog7_core::Error as E;
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Core(E::AboveGuard { .. } | E::BelowMinimum { .. }) => 2,
            _ => 1,
        }
    }
}
