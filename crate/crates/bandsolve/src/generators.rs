//! Seeded test-matrix factories.
//!
//! Random entries are small fractions `p/q` with `|p| <= 99` and
//! `1 <= q <= 99`, drawn from a ChaCha8 stream seeded with
//! `seed_from_u64`, so a seed reproduces the same system on every platform.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::band::{in_band, BandMatrix, Slae};
use crate::error::{Error, Result};
use crate::oracle::{leading_principal_minors, DenseMatrix};
use crate::scalar::Rational;

const MAX_NUMERATOR: i64 = 99;
const MAX_DENOMINATOR: i64 = 99;

/// Largest `n` for which the canonical zero-minor pattern is certified with the dense oracle.
const CANONICAL_CHECK_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Random band with a strictly dominant main diagonal.
    DiagDominant,
    /// Second-difference stencil `(-1, 2, -1)`, `m = 1`.
    Poisson1d,
    /// Fourth-difference stencil `(1, -4, 6, -4, 1)`, `m = 2`.
    Biharmonic1d,
    /// Nonsingular matrix whose first leading principal minor is zero.
    ZeroMinor,
    /// One random coefficient tuple repeated down every row.
    ToeplitzBand,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 5] = [
        Self::DiagDominant,
        Self::Poisson1d,
        Self::Biharmonic1d,
        Self::ZeroMinor,
        Self::ToeplitzBand,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::DiagDominant => "diag_dominant",
            Self::Poisson1d => "poisson_1d",
            Self::Biharmonic1d => "biharmonic_1d",
            Self::ZeroMinor => "zero_minor",
            Self::ToeplitzBand => "toeplitz_band",
        }
    }

    /// Band half-width the stencil kinds are fixed to.
    pub fn fixed_m(self) -> Option<usize> {
        match self {
            Self::Poisson1d => Some(1),
            Self::Biharmonic1d => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    /// Accepts `snake_case`, `kebab-case` or the squashed form (`poisson1d`).
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| *c != '_' && *c != '-')
            .collect::<String>()
            .to_lowercase();
        Self::ALL
            .into_iter()
            .find(|k| k.name().replace('_', "") == key)
            .ok_or_else(|| Error::UnsatisfiableSpec(format!("unknown generator kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub m: usize,
    /// `None` selects the deterministic canonical instance where one exists
    /// (the zero-minor kind), otherwise seed 0.
    pub seed: Option<u64>,
    /// Closed interval for random off-diagonal entries and right-hand sides.
    pub value_range: (Rational, Rational),
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, m: usize) -> Self {
        Self {
            kind,
            n,
            m,
            seed: None,
            value_range: (-Rational::one(), Rational::one()),
        }
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_range(mut self, lo: Rational, hi: Rational) -> Self {
        self.value_range = (lo, hi);
        self
    }
}

struct Draw {
    rng: ChaCha8Rng,
    lo: Rational,
    hi: Rational,
}

impl Draw {
    fn value(&mut self) -> Rational {
        loop {
            let q = self.rng.random_range(1..=MAX_DENOMINATOR);
            let (lo, hi) = self.numerator_bounds(q);
            let (lo, hi) = (lo.max(-MAX_NUMERATOR), hi.min(MAX_NUMERATOR));
            if lo <= hi {
                let p = self.rng.random_range(lo..=hi);
                return small_ratio(p, q);
            }
        }
    }

    /// `ceil(lo * q)` and `floor(hi * q)`, clamped to the `i64` range.
    fn numerator_bounds(&self, q: i64) -> (i64, i64) {
        let scaled = |r: &Rational, up: bool| {
            let (num, den) = (r.numer() * q, r.denom());
            let v = if up {
                num.div_ceil(den)
            } else {
                num.div_floor(den)
            };
            v.to_i64()
                .unwrap_or(if v.is_negative() { i64::MIN } else { i64::MAX })
        };
        (scaled(&self.lo, true), scaled(&self.hi, false))
    }

    /// Uniform fraction in `(0, 1]`.
    fn positive_unit(&mut self) -> Rational {
        let q = self.rng.random_range(1..=MAX_DENOMINATOR);
        let p = self.rng.random_range(1..=q);
        small_ratio(p, q)
    }

    /// `±(sum |others| + extra)` with `extra` in `(0, 1]`.
    fn dominant(&mut self, others: Rational) -> Rational {
        let extra = self.positive_unit();
        let magnitude =
            small_abs_sum([&others, &extra].into_iter()).unwrap_or_else(|| others + extra);
        if self.rng.random_bool(0.5) {
            magnitude
        } else {
            -magnitude
        }
    }
}

/// `p/q` in lowest terms without a big-integer gcd; `q > 0`.
fn small_ratio(p: i64, q: i64) -> Rational {
    let g = p.gcd(&q);
    Rational::new_raw((p / g).into(), (q / g).into())
}

fn check_dims(n: usize, m: usize) -> Result<()> {
    if m == 0 || n < 2 * m + 2 {
        return Err(Error::Dimension(format!(
            "n must exceed 2m+1 (n = {n}, m = {m})"
        )));
    }
    Ok(())
}

/// Builds the system described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<Slae<Rational>> {
    let (n, m) = (spec.n, spec.m);
    check_dims(n, m)?;
    if let Some(fixed) = spec.kind.fixed_m() {
        if m != fixed {
            return Err(Error::UnsatisfiableSpec(format!(
                "{} requires m = {fixed}, got {m}",
                spec.kind
            )));
        }
    }
    let (lo, hi) = spec.value_range.clone();
    if lo > hi {
        return Err(Error::UnsatisfiableSpec(format!(
            "empty value range [{lo}, {hi}]"
        )));
    }
    let mut draw = Draw {
        rng: ChaCha8Rng::seed_from_u64(spec.seed.unwrap_or(0)),
        lo,
        hi,
    };
    let int = |v: i64| Rational::from_integer(v.into());

    let slae = match spec.kind {
        GeneratorKind::Poisson1d => {
            let a = BandMatrix::from_stencil(n, &[int(-1), int(2), int(-1)])?;
            Slae::new(a, vec![Rational::one(); n])?
        }
        GeneratorKind::Biharmonic1d => {
            let a = BandMatrix::from_stencil(n, &[int(1), int(-4), int(6), int(-4), int(1)])?;
            Slae::new(a, vec![Rational::one(); n])?
        }
        GeneratorKind::ToeplitzBand => {
            let stencil: Vec<Rational> = (0..=2 * m).map(|_| draw.value()).collect();
            let a = BandMatrix::from_stencil(n, &stencil)?;
            let rhs = (0..n).map(|_| draw.value()).collect();
            Slae::new(a, rhs)?
        }
        GeneratorKind::DiagDominant => {
            let mut diags = random_off_diagonals(n, m, &mut draw);
            for i in 0..n {
                let others = row_abs_sum(&diags, i, m);
                diags[m][i] = draw.dominant(others);
            }
            let rhs = (0..n).map(|_| draw.value()).collect();
            Slae::new(BandMatrix::from_diagonals(n, m, diags)?, rhs)?
        }
        GeneratorKind::ZeroMinor if spec.seed.is_none() => canonical_zero_minor(n, m)?,
        GeneratorKind::ZeroMinor => {
            // Swapping rows 0 and 1 gives a strictly diagonally dominant matrix, so A
            // and every leading block of size >= 2 is nonsingular while M_0 = 0.
            let mut diags = random_off_diagonals(n, m, &mut draw);
            for i in 2..n {
                let others = row_abs_sum(&diags, i, m);
                diags[m][i] = draw.dominant(others);
            }
            diags[m][0] = Rational::zero();
            diags[m][1] = draw.value();
            diags[m + 1][0] = Rational::zero();
            let others = row_abs_sum(&diags, 0, m);
            diags[m + 1][0] = draw.dominant(others);
            diags[m - 1][1] = Rational::zero();
            let others = row_abs_sum(&diags, 1, m) + diags[m][1].abs();
            diags[m - 1][1] = draw.dominant(others);
            let rhs = (0..n).map(|_| draw.value()).collect();
            Slae::new(BandMatrix::from_diagonals(n, m, diags)?, rhs)?
        }
    };
    Ok(slae)
}

fn random_off_diagonals(n: usize, m: usize, draw: &mut Draw) -> Vec<Vec<Rational>> {
    (0..=2 * m)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if j != m && in_band(n, m, i, j) {
                        draw.value()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Sum of `|b[i][j]|` over all bands except the main one.
fn row_abs_sum(diags: &[Vec<Rational>], i: usize, m: usize) -> Rational {
    let cells = || {
        diags
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != m)
            .map(|(_, band)| &band[i])
    };
    small_abs_sum(cells()).unwrap_or_else(|| cells().fold(Rational::zero(), |acc, v| acc + v.abs()))
}

/// Machine-integer fast path for sums of small fractions; `None` on overflow.
fn small_abs_sum<'a>(values: impl Iterator<Item = &'a Rational>) -> Option<Rational> {
    let (mut num, mut den) = (0i128, 1i128);
    for v in values {
        let p = v.numer().to_i128()?.checked_abs()?;
        let q = v.denom().to_i128()?;
        let g = den.gcd(&q);
        let lcm = (den / g).checked_mul(q)?;
        num = num
            .checked_mul(lcm / den)?
            .checked_add(p.checked_mul(lcm / q)?)?;
        den = lcm;
        let r = num.gcd(&den);
        if r > 1 {
            num /= r;
            den /= r;
        }
    }
    Some(Rational::new_raw(num.into(), den.into()))
}

/// Zero main diagonal, ones elsewhere in the band, ones on the right.
///
/// Only emitted when it is nonsingular and a single rescue at row 0 suffices:
/// with `mu_0 = s` the leading minors become `M_j + s * C_j` (`C_j` being the
/// minor of rows/columns `1..=j`), so no later pivot may have both vanish.
fn canonical_zero_minor(n: usize, m: usize) -> Result<Slae<Rational>> {
    let mut stencil = vec![Rational::one(); 2 * m + 1];
    stencil[m] = Rational::zero();
    let a = BandMatrix::from_stencil(n, &stencil)?;
    let usable = if m == 1 {
        // D_k = -D_{k-2}, D_1 = 0, D_2 = -1: exactly one of M_j, C_j vanishes
        n.is_multiple_of(2)
    } else if n <= CANONICAL_CHECK_LIMIT {
        single_rescue_suffices(&DenseMatrix::from_band(&a))
    } else {
        return Err(Error::UnsatisfiableSpec(format!(
            "canonical zero-minor pattern is only certified for n <= {CANONICAL_CHECK_LIMIT} when m > 1; pass a seed"
        )));
    };
    if !usable {
        return Err(Error::UnsatisfiableSpec(format!(
            "canonical zero-minor pattern is singular or not rescuable for n = {n}, m = {m}; pass a seed"
        )));
    }
    Slae::new(a, vec![Rational::one(); n])
}

/// Nonsingular, and `M_j`, `C_j` never vanish together.
fn single_rescue_suffices(a: &DenseMatrix) -> bool {
    let n = a.n();
    let trailing =
        DenseMatrix::new(a.rows()[1..].iter().map(|r| r[1..].to_vec()).collect()).expect("square");
    let minors = leading_principal_minors(a);
    let cofactors = leading_principal_minors(&trailing);
    !minors[n - 1].is_zero() && (1..n).all(|j| !minors[j].is_zero() || !cofactors[j - 1].is_zero())
}
