use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the command-line front end, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("{0}")]
    Validation(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 2 for bad input, 3 for I/O, 4 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Validation(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<fhca::Error> for CliError {
    fn from(e: fhca::Error) -> Self {
        match e {
            fhca::Error::InvalidParameter { .. }
            | fhca::Error::IncompatibleAttack { .. }
            | fhca::Error::NoSolution(_) => CliError::Validation(e.to_string()),
            fhca::Error::InsufficientSamples { .. } | fhca::Error::NoConvergence(_) => {
                CliError::Internal(e.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
