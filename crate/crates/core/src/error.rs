use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A parameter combination outside the regime where a quantity exists.
    #[error("regime violation: {0}")]
    Regime(String),

    #[error("unsupported parametrization: {0}")]
    Unsupported(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("censoring {censored}/{total} exceeds cap {cap}")]
    Censoring { censored: usize, total: usize, cap: f64 },

    #[error("numerical failure in replication {replication}: {reason}")]
    Numerical { replication: u64, reason: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code: 2 config/regime, 3 numerical, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Regime(_) | Error::Unsupported(_) | Error::Config(_) => 2,
            Error::Structural(_) | Error::Censoring { .. } | Error::Numerical { .. } => 3,
            Error::Io { .. } => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
