//! Direct solver for linear systems whose coefficient matrix has `M`
//! sub-diagonals and `M` super-diagonals (band width `2M + 1`).
//!
//! The solver is a generalization of the Thomas algorithm: an LU sweep
//! without pivoting followed by back substitution. It is generic over the
//! [`Scalar`] trait, so the same recurrences run over `f32`/`f64`, exact
//! rationals, and univariate rational functions. The last of these powers
//! [`solve_symbolic`], which replaces the first zero pivot by an
//! indeterminate `s`, finishes the sweep over `Q(s)` and evaluates the result
//! at `s = 0`. That makes nonsingularity the only requirement on the matrix.
//!
//! Supporting modules:
//! - [`oracle`]: exact dense Gaussian elimination used as ground truth.
//! - [`complexity`]: closed-form operation counts and the per-category
//!   counters recorded by the numeric solver.
//! - [`generators`]: seeded test-matrix factories.

#![forbid(unsafe_code)]

pub mod band;
pub mod complexity;
mod error;
pub mod generators;
pub mod oracle;
pub mod scalar;
pub mod solver;

pub use band::{BandMatrix, Slae, Violation};
pub use complexity::{OpCategory, OpCountReport};
pub use error::{Error, Result};
pub use scalar::{Polynomial, Rational, RationalFunction, Scalar};
pub use solver::{
    back_substitute, determinant_from_pivots, forward_reduce, forward_reduce_rescue, solve_numeric,
    solve_symbolic, FactorizationState, Solution, SolverConfig, SymbolicSolution,
};

/// Numerical zero threshold used when none is configured.
pub const DEFAULT_EPSILON: f64 = 1.0e-20;

/// Band matrix over `f64`.
pub type BandMatrixF64 = BandMatrix<f64>;
/// Band matrix over `f32`.
pub type BandMatrixF32 = BandMatrix<f32>;
/// Band matrix over exact rationals.
pub type BandMatrixQ = BandMatrix<Rational>;
/// Band matrix over rational functions in the rescue indeterminate.
pub type BandMatrixQs = BandMatrix<RationalFunction>;

/// Linear system over `f64`.
pub type SlaeF64 = Slae<f64>;
/// Linear system over `f32`.
pub type SlaeF32 = Slae<f32>;
/// Linear system over exact rationals.
pub type SlaeQ = Slae<Rational>;

/// Factorization over `f64`.
pub type FactorizationF64 = FactorizationState<f64>;
/// Factorization over exact rationals.
pub type FactorizationQ = FactorizationState<Rational>;
/// Factorization over rational functions (after a pivot rescue).
pub type FactorizationQs = FactorizationState<RationalFunction>;
