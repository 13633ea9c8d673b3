use bandsolve::Error;

use crate::bandfile::ParseError;

/// Failure classes; each maps to one process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Dimension(String),
    #[error("{0}")]
    Rescue(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Singular => 2,
            CliError::Parse(_) | CliError::Io { .. } => 3,
            CliError::Dimension(_) => 4,
            CliError::Rescue(_) => 5,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularMatrix => CliError::Singular,
            Error::ParseScalar(text) => CliError::Parse(ParseError {
                line: 0,
                column: 0,
                message: format!("invalid scalar {text:?}"),
            }),
            Error::ZeroPivot(_) => CliError::Rescue(format!("{e}; try --mode symbolic")),
            Error::DegeneratePivot(_)
            | Error::RescueInsufficient(_)
            | Error::DivisionByZeroFunction
            | Error::PoleAtZero => CliError::Rescue(e.to_string()),
            Error::Dimension(_)
            | Error::BandwidthViolation { .. }
            | Error::InvalidBand(_)
            | Error::IndexOutOfRange { .. }
            | Error::UnsatisfiableSpec(_) => CliError::Dimension(e.to_string()),
        }
    }
}
