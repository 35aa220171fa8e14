//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the simulator.
///
/// The variants map onto the process exit codes of the command-line front
/// end: configuration problems exit with 2, numerical failures with 3 and
/// exhausted resource budgets with 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid or inconsistent input parameters.
    #[error("invalid configuration for `{key}`: {reason}")]
    Config { key: String, reason: String },

    /// A numerical procedure failed to meet its accuracy contract.
    #[error("numerical failure in {context}: {reason}")]
    Numeric { context: String, reason: String },

    /// A problem size exceeded the configured budget.
    #[error("budget exceeded in {context}: requested {requested}, limit {limit}")]
    Budget {
        context: String,
        requested: usize,
        limit: usize,
    },

    /// Reading or writing a result file failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Encoding or decoding a structured file failed.
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn numeric(context: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Numeric {
            context: context.into(),
            reason: reason.into(),
        }
    }

    /// Process exit code associated with this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Io(_) | Error::Format(_) => 2,
            Error::Numeric { .. } => 3,
            Error::Budget { .. } => 4,
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
