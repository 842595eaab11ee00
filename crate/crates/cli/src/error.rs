use std::path::PathBuf;

use kgo_core::KgoError;
use thiserror::Error;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] KgoError),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numeric_contract() => EXIT_NUMERIC,
            CliError::Core(KgoError::NonFinite { .. }) => EXIT_NUMERIC,
            CliError::Usage(_) | CliError::Core(_) | CliError::Io { .. } => EXIT_USAGE,
        }
    }
}
