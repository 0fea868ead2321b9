use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Mismatched dimensions or otherwise malformed fleet data.
    #[error("structural error: {0}")]
    Structure(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A configuration value is missing, mistyped or violates a constraint.
    #[error("configuration error in `{key}`: {message}")]
    Config { key: String, message: String },
    /// No vehicle of the fleet admits a mutation.
    #[error("no vehicle in the fleet can be mutated")]
    MutationExhausted,
    #[error("exhaustive exploration refused: {0}")]
    GuardExceeded(String),
    #[error("run {run_index} (seed {seed}) failed: {source}")]
    Run {
        run_index: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
    #[error("I/O error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
