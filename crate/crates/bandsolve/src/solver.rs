//! Forward reduction, back substitution and the two solve drivers.
//!
//! Notation follows the band layout of [`BandMatrix`]: row `i` yields a pivot
//! `mu[i]`, sub-diagonal multipliers `alpha(i, 1..=m)` and normalized
//! super-diagonal entries `alpha(i, m+1..=2m)`, plus the transformed
//! right-hand side `z[i]`.
//!
//! Sub-diagonal multipliers are stored shifted: `alpha(i, k)` belongs to
//! column `max(0, i - m) + k - 1`, so rows `i < m` only use the first `i`
//! slots. `alpha(i, m + k)` belongs to column `i + k` and is zero once that
//! column falls off the matrix.

use num_traits::Zero;

use crate::band::Slae;
use crate::complexity::{OpCategory, OpCountReport};
use crate::error::{Error, Result};
use crate::oracle::{self, DenseMatrix};
use crate::scalar::{Rational, RationalFunction, Scalar};
use crate::DEFAULT_EPSILON;

/// Largest system for which `check_determinant` runs the dense oracle.
pub const DETERMINANT_PRECHECK_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Pivots with `|mu| < epsilon` are zero (float kinds only).
    pub epsilon: f64,
    /// Run the dense determinant oracle before a symbolic solve (`n <= 64`).
    pub check_determinant: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            check_determinant: false,
        }
    }
}

impl SolverConfig {
    pub fn with_epsilon(epsilon: f64) -> Result<Self> {
        if epsilon.is_nan() || epsilon <= 0.0 {
            return Err(Error::Dimension(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        Ok(Self {
            epsilon,
            ..Self::default()
        })
    }
}

/// Everything the forward sweep produces.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationState<T> {
    n: usize,
    m: usize,
    pub mu: Vec<T>,
    alpha: Vec<T>,
    pub z: Vec<T>,
    /// Whether a pivot was replaced by the indeterminate.
    pub rescue_used: bool,
    pub rescue_index: Option<usize>,
    pub ops: OpCountReport,
}

impl<T> FactorizationState<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `alpha_i^k` for `k` in `1..=2m`.
    #[inline]
    pub fn alpha(&self, i: usize, k: usize) -> &T {
        debug_assert!((1..=2 * self.m).contains(&k));
        &self.alpha[i * 2 * self.m + k - 1]
    }

    /// Row `i` of the multiplier table; index `k - 1` holds `alpha_i^k`.
    pub fn alpha_row(&self, i: usize) -> &[T] {
        &self.alpha[i * 2 * self.m..(i + 1) * 2 * self.m]
    }
}

/// Result of a numeric (float or exact, no rescue) solve.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<T> {
    pub x: Vec<T>,
    pub determinant: T,
    pub pivots: Vec<T>,
    pub ops: OpCountReport,
    pub rescue_used: bool,
}

/// Result of a solve with zero-pivot rescue, after substituting `s := 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicSolution {
    pub x: Vec<Rational>,
    pub determinant: Rational,
    /// Pivots as functions of `s`; the rescued pivot is `s` itself.
    pub pivots: Vec<RationalFunction>,
    /// Unknowns before substitution, in lowest terms.
    pub x_symbolic: Vec<RationalFunction>,
    /// Field operations over `Q(s)`, counted like the numeric sweep.
    pub ops: OpCountReport,
    pub rescue_used: bool,
    pub rescue_index: Option<usize>,
}

/// Scalars that can host the rescue symbol.
pub trait Indeterminate: Scalar {
    fn indeterminate() -> Self;
}

impl Indeterminate for RationalFunction {
    fn indeterminate() -> Self {
        RationalFunction::indeterminate()
    }
}

/// What to do with a pivot; returns the pivot to divide by.
trait PivotPolicy<T> {
    fn check(&mut self, row: usize, pivot: T) -> Result<T>;
}

struct Strict {
    epsilon: f64,
}

impl<T: Scalar> PivotPolicy<T> for Strict {
    fn check(&mut self, row: usize, pivot: T) -> Result<T> {
        if pivot.is_rescue_zero(self.epsilon) {
            Err(Error::ZeroPivot(row))
        } else {
            Ok(pivot)
        }
    }
}

/// One indeterminate per solve; once it is spent the epsilon test is skipped.
struct Rescue {
    epsilon: f64,
    flagged: Option<usize>,
}

impl<T: Indeterminate> PivotPolicy<T> for Rescue {
    fn check(&mut self, row: usize, pivot: T) -> Result<T> {
        match self.flagged {
            None if pivot.is_rescue_zero(self.epsilon) => {
                self.flagged = Some(row);
                Ok(T::indeterminate())
            }
            Some(_) if pivot.is_zero() => Err(Error::DegeneratePivot(row)),
            _ => Ok(pivot),
        }
    }
}

fn reduce<T: Scalar>(
    slae: &Slae<T>,
    policy: &mut impl PivotPolicy<T>,
) -> Result<FactorizationState<T>> {
    let a = slae.matrix();
    let y = slae.rhs();
    let (n, m) = (a.n(), a.m());
    let width = 2 * m;
    let at = |i: usize, k: usize| i * width + k - 1;

    let mut alpha = vec![T::zero(); n * width];
    let mut mu = Vec::with_capacity(n);
    let mut z: Vec<T> = Vec::with_capacity(n);
    let mut ops = OpCountReport::default();

    for i in 0..n {
        let (sub_cat, mu_cat, sup_cat, z_cat) = if i < m {
            (
                OpCategory::AlphaSubLowrows,
                OpCategory::MuLowrows,
                OpCategory::AlphaSuperLowrows,
                OpCategory::ZLowrows,
            )
        } else {
            (
                OpCategory::AlphaSubMain,
                OpCategory::MuMain,
                OpCategory::AlphaSuperMain,
                OpCategory::ZMain,
            )
        };
        // first column reached by row i
        let base = i.saturating_sub(m);
        let lower = i - base;

        let (done, row) = alpha.split_at_mut(i * width);
        let prev = |t: usize, k: usize| &done[at(t, k)];

        // sub-diagonal multipliers: column c = base + k - 1
        for k in 1..=lower {
            let col = base + k - 1;
            let mut v = a.get(i, col + m - i).clone();
            for t in base..col {
                v.sub_product(prev(t, m + col - t), &row[t - base]);
            }
            ops.add(sub_cat, 2 * (col - base) as u64);
            row[k - 1] = v;
        }

        let mut pivot = a.get(i, m).clone();
        for t in base..i {
            pivot.sub_product(prev(t, m + i - t), &row[t - base]);
        }
        ops.add(mu_cat, 2 * lower as u64);
        let pivot = policy.check(i, pivot)?;

        // normalized super-diagonal entries: column i + k
        for k in 1..=m.min(n - 1 - i) {
            let col = i + k;
            let mut v = a.get(i, m + k).clone();
            let first = (col.saturating_sub(m)).max(base);
            for t in first..i {
                v.sub_product(prev(t, m + col - t), &row[t - base]);
            }
            v.div_by(&pivot);
            ops.add(sup_cat, 2 * (i - first) as u64 + 1);
            row[m + k - 1] = v;
        }

        let mut zi = y[i].clone();
        for t in base..i {
            zi.sub_product(&row[t - base], &z[t]);
        }
        zi.div_by(&pivot);
        ops.add(z_cat, 2 * lower as u64 + 1);

        z.push(zi);
        mu.push(pivot);
    }

    Ok(FactorizationState {
        n,
        m,
        mu,
        alpha,
        z,
        rescue_used: false,
        rescue_index: None,
        ops,
    })
}

/// Forward sweep without rescue; a zero pivot is an error.
pub fn forward_reduce<T: Scalar>(
    slae: &Slae<T>,
    config: &SolverConfig,
) -> Result<FactorizationState<T>> {
    reduce(
        slae,
        &mut Strict {
            epsilon: config.epsilon,
        },
    )
}

/// Forward sweep that turns the first zero pivot into the indeterminate `s`.
///
/// A pivot that is identically zero after the rescue has been spent yields
/// [`Error::DegeneratePivot`].
pub fn forward_reduce_rescue<T: Indeterminate>(
    slae: &Slae<T>,
    config: &SolverConfig,
) -> Result<FactorizationState<T>> {
    let mut policy = Rescue {
        epsilon: config.epsilon,
        flagged: None,
    };
    let mut state = reduce(slae, &mut policy)?;
    state.rescue_index = policy.flagged;
    state.rescue_used = policy.flagged.is_some();
    Ok(state)
}

fn back_substitute_counted<T: Scalar>(
    state: &FactorizationState<T>,
    ops: &mut OpCountReport,
) -> Vec<T> {
    let (n, m) = (state.n, state.m);
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut v = state.z[i].clone();
        let reach = m.min(n - 1 - i);
        for k in 1..=reach {
            v.sub_product(state.alpha(i, m + k), &x[i + k]);
        }
        let cat = if i + m >= n {
            OpCategory::XTail
        } else {
            OpCategory::XMain
        };
        ops.add(cat, 2 * reach as u64);
        x[i] = v;
    }
    x
}

/// Recovers `x` from a completed forward sweep, last unknown first.
pub fn back_substitute<T: Scalar>(state: &FactorizationState<T>) -> Vec<T> {
    back_substitute_counted(state, &mut OpCountReport::default())
}

/// Product of all pivots.
pub fn determinant_from_pivots<T: Scalar>(state: &FactorizationState<T>) -> T {
    state.mu.iter().fold(T::one(), |acc, p| acc * p.clone())
}

/// Pivot product with `s := 0` substituted after cancellation.
pub fn rescued_determinant(state: &FactorizationState<RationalFunction>) -> Result<Rational> {
    determinant_from_pivots(state)
        .eval_at_zero()
        .map_err(|_| Error::RescueInsufficient("determinant has a pole at s = 0".into()))
}

/// Banded solve without pivot rescue, over any [`Scalar`].
///
/// A zero pivot in the last row means the matrix is singular (every earlier
/// leading minor is nonzero and the last one vanishes); earlier zero pivots are
/// reported as [`Error::ZeroPivot`], which [`solve_symbolic`] can handle.
pub fn solve_numeric<T: Scalar>(slae: &Slae<T>, config: &SolverConfig) -> Result<Solution<T>> {
    let n = slae.n();
    let state = forward_reduce(slae, config).map_err(|e| match e {
        Error::ZeroPivot(i) if i + 1 == n => Error::SingularMatrix,
        e => e,
    })?;
    let mut ops = state.ops.clone();
    let x = back_substitute_counted(&state, &mut ops);
    Ok(Solution {
        x,
        determinant: determinant_from_pivots(&state),
        pivots: state.mu,
        ops,
        rescue_used: false,
    })
}

/// Exact solve that survives zero leading principal minors.
///
/// Entries are lifted into `Q(s)`, the first zero pivot becomes `s`, and
/// every unknown is brought to lowest terms before `s := 0` is substituted.
/// Nonsingularity of the matrix is the only requirement.
pub fn solve_symbolic(slae: &Slae<Rational>, config: &SolverConfig) -> Result<SymbolicSolution> {
    let n = slae.n();
    if config.check_determinant && n <= DETERMINANT_PRECHECK_LIMIT {
        let dense = DenseMatrix::from_band(slae.matrix());
        if oracle::det_exact(&dense).is_zero() {
            return Err(Error::SingularMatrix);
        }
    }

    let lifted = slae.map(|q| RationalFunction::constant(q.clone()));
    let state = forward_reduce_rescue(&lifted, config).map_err(|e| match e {
        Error::DegeneratePivot(i) if i + 1 == n => Error::SingularMatrix,
        Error::DegeneratePivot(i) => {
            Error::RescueInsufficient(format!("pivot at row {i} is identically zero after rescue"))
        }
        e => e,
    })?;

    let determinant = rescued_determinant(&state)?;
    if determinant.is_zero() {
        return Err(Error::SingularMatrix);
    }

    let mut ops = state.ops.clone();
    let x_symbolic = back_substitute_counted(&state, &mut ops);
    let x = x_symbolic
        .iter()
        .enumerate()
        .map(|(i, xi)| {
            xi.eval_at_zero()
                .map_err(|_| Error::RescueInsufficient(format!("x[{i}] has a pole at s = 0")))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SymbolicSolution {
        x,
        determinant,
        pivots: state.mu,
        x_symbolic,
        ops,
        rescue_used: state.rescue_used,
        rescue_index: state.rescue_index,
    })
}
