use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const COMPUTATION: u8 = 1;
    pub const IO: u8 = 2;
    pub const VALIDATION: u8 = 3;
    pub const USAGE: u8 = 64;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid scenario: {0}")]
    Validation(String),
    #[error("computation failed: {0}")]
    Computation(ctls_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl From<ctls_core::Error> for CliError {
    fn from(e: ctls_core::Error) -> Self {
        match e {
            ctls_core::Error::Config(msg) => CliError::Validation(msg),
            other => CliError::Computation(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Validation(_) => exit::VALIDATION,
            CliError::Computation(_) => exit::COMPUTATION,
            CliError::Usage(_) => exit::USAGE,
        }
    }
}
