use std::path::PathBuf;

use fht_core::FhtError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAILED: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_PARAMETER: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: line {line}: {msg}")]
    Parse {
        path: PathBuf,
        line: u64,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("input error: {0}")]
    Input(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse { .. } | Self::Io { .. } | Self::Input(_) => EXIT_INPUT,
            Self::Parameter(_) => EXIT_PARAMETER,
            Self::Internal(_) => EXIT_SUITE_FAILED,
        }
    }
}

impl From<FhtError> for CliError {
    fn from(e: FhtError) -> Self {
        match e {
            FhtError::InvalidParameter(_)
            | FhtError::UnknownPair(_)
            | FhtError::InvalidSize { .. } => Self::Parameter(e.to_string()),
            FhtError::Domain { .. }
            | FhtError::GridMismatch { .. }
            | FhtError::LengthMismatch { .. }
            | FhtError::DegreeCap { .. } => Self::Input(e.to_string()),
            FhtError::Solver(_) => Self::Internal(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
