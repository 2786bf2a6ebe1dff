use std::io;

use otto_core::OttoError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema error at `{key}`: {message}")]
    Schema { key: String, message: String },

    #[error("range error: {0}")]
    Range(String),

    #[error("numerical failure: {0}")]
    Numerical(OttoError),

    #[error("regime check failed: {0}")]
    Regime(String),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn schema(key: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Schema {
            key: key.into(),
            message: message.into(),
        }
    }

    /// Process exit status for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) => 1,
            Self::Schema { .. } => 2,
            Self::Range(_) => 3,
            Self::Numerical(_) => 4,
            Self::Regime(_) => 5,
        }
    }
}

impl From<OttoError> for CliError {
    fn from(e: OttoError) -> Self {
        match e {
            OttoError::InvalidConfig(msg) => Self::Range(msg),
            OttoError::NotEngine { .. } => Self::Regime(e.to_string()),
            other => Self::Numerical(other),
        }
    }
}
