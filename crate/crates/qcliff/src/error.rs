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
    #[error("{context}: malformed JSON: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid number {0:?}")]
    Number(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown suite {0:?} (expected one of: {1})")]
    UnknownSuite(String, String),
    #[error(transparent)]
    Core(#[from] qcliff_core::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        CliError::Json { context: context.into(), source }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
