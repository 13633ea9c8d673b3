use thiserror::Error;

use crate::band::Violation;

/// Errors raised by the band solver and its supporting modules.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    /// The system is too small for the requested band width, or shapes disagree.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// A dense matrix has a nonzero entry outside the band.
    #[error("bandwidth violation: nonzero entry at ({row}, {col}) lies outside the band")]
    BandwidthViolation { row: usize, col: usize },
    /// A band matrix failed structural validation.
    #[error("invalid band matrix: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidBand(Vec<Violation>),
    #[error("index ({row}, {col}) out of range for n = {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    /// A pivot tested zero and no rescue was requested.
    #[error("zero pivot at row {0}; use the symbolic solver")]
    ZeroPivot(usize),
    /// After the single rescue, a later pivot is the identically zero function.
    #[error("pivot at row {0} is identically zero after rescue")]
    DegeneratePivot(usize),
    #[error("singular matrix")]
    SingularMatrix,
    /// The result still has a pole at `s = 0` after cancellation.
    #[error("rescue insufficient: {0}")]
    RescueInsufficient(String),
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("pole at s = 0")]
    PoleAtZero,
    /// A generator was asked for something it cannot produce.
    #[error("unsatisfiable generator spec: {0}")]
    UnsatisfiableSpec(String),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
