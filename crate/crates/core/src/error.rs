use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors surfaced by the library. Each variant maps onto one of the CLI
/// exit codes via [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed XML at byte {offset}: {message}")]
    Xml { offset: u64, message: String },

    #[error("line {line}: {message}")]
    Json { line: usize, message: String },

    #[error("{0}")]
    Csv(String),

    #[error("{0}")]
    Format(String),

    #[error("graph cache version mismatch: found {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("unresolved laureates: {}", .0.join("; "))]
    Laureates(Vec<String>),

    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    #[error("power iteration did not converge after {iterations} iterations (last residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("{0}")]
    Parse(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// 0 success, 2 I/O, 3 parse, 4 validation, 5 numeric failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            Error::Xml { .. }
            | Error::Json { .. }
            | Error::Csv(_)
            | Error::Format(_)
            | Error::VersionMismatch { .. }
            | Error::Parse(_) => 3,
            Error::Argument(_) | Error::Validation(_) | Error::Laureates(_) => 4,
            Error::UndefinedCorrelation(_) | Error::NoConvergence { .. } => 5,
        }
    }
}
