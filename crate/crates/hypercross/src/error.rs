use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] hypercross_core::Error),
    #[error("no command given on the command line or in the config")]
    NoCommand,
}

impl CliError {
    /// 1 for I/O, 3 for precondition and configuration errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Csv { .. } => 1,
            CliError::Config(_) | CliError::Core(_) | CliError::NoCommand => 3,
        }
    }
}
