//! Exact dense Gaussian elimination over the rationals.
//!
//! This is the ground truth for solutions, determinants and leading principal
//! minors. It ignores the band structure, clears denominators row by row and
//! runs fraction-free (Bareiss) elimination over the integers, pivoting on the
//! first nonzero entry of each column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::band::BandMatrix;
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Square matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    n: usize,
    entries: Vec<Vec<Rational>>,
}

impl DenseMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("dense matrix must be square".into()));
        }
        Ok(Self { n, entries })
    }

    pub fn from_band(a: &BandMatrix<Rational>) -> Self {
        Self {
            n: a.n(),
            entries: a.to_dense(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Rational::zero(), |acc, k| {
                            acc + &self.entries[i][k] * &other.entries[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        Self { n, entries }
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        Self {
            n: k,
            entries: self.entries[..k].iter().map(|r| r[..k].to_vec()).collect(),
        }
    }
}

/// Rows multiplied by the lcm of their denominators, optionally augmented with
/// the right-hand side. Returns the integer rows and the per-row multipliers.
fn integer_rows(
    entries: &[Vec<Rational>],
    rhs: Option<&[Rational]>,
) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    entries
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let extra = rhs.map(|y| &y[i]);
            let cells = row.iter().chain(extra);
            let l = cells
                .clone()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints = cells.map(|c| c.numer() * (&l / c.denom())).collect();
            (ints, l)
        })
        .unzip()
}

/// Fraction-free (Bareiss) elimination of the first `n` columns.
///
/// Returns the pivots produced before stopping and whether an odd number of
/// row swaps happened. Without `pivoting`, pivot `k` is the order-`k+1`
/// leading minor and elimination stops at the first zero; with it, a short
/// pivot list means the matrix is singular.
fn bareiss(rows: &mut [Vec<BigInt>], n: usize, pivoting: bool) -> (Vec<BigInt>, bool) {
    let mut pivots = Vec::with_capacity(n);
    let mut negated = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if rows[k][k].is_zero() {
            if !pivoting {
                break;
            }
            let Some(p) = (k + 1..n).find(|&r| !rows[r][k].is_zero()) else {
                break;
            };
            rows.swap(p, k);
            negated = !negated;
        }
        let (upper, lower) = rows.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = &pivot_row[k];
        for row in lower {
            let factor = std::mem::take(&mut row[k]);
            for (dst, src) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                let mut v = if dst.is_zero() {
                    BigInt::zero()
                } else {
                    &*dst * pivot
                };
                if !factor.is_zero() && !src.is_zero() {
                    v -= &factor * src;
                }
                if !v.is_zero() && !prev.is_one() {
                    v /= &prev;
                }
                *dst = v;
            }
        }
        prev = pivot.clone();
        pivots.push(prev.clone());
    }
    (pivots, negated)
}

/// Exact solution of `a x = y`, checked by re-multiplication.
pub fn gauss_solve_exact(a: &DenseMatrix, y: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.n;
    if y.len() != n {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, expected {n}",
            y.len()
        )));
    }
    let (original, _) = integer_rows(&a.entries, Some(y));
    let mut rows = original.clone();
    let pivots = bareiss(&mut rows, n, true).0;
    if pivots.len() < n {
        return Err(Error::SingularMatrix);
    }
    // Cramer numerators: w = d x is integral for d = det of the reduced system.
    let d = &pivots[n - 1];
    let mut w = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut v = d * &rows[i][n];
        for j in i + 1..n {
            if !rows[i][j].is_zero() {
                v -= &rows[i][j] * &w[j];
            }
        }
        w[i] = v / &rows[i][i];
    }
    for row in &original {
        let lhs = row[..n]
            .iter()
            .zip(&w)
            .filter(|(c, _)| !c.is_zero())
            .fold(BigInt::zero(), |acc, (c, v)| acc + c * v);
        assert_eq!(lhs, d * &row[n], "oracle solution failed re-multiplication");
    }
    Ok(w.into_iter().map(|v| Rational::new(v, d.clone())).collect())
}

/// Exact determinant; zero for singular input.
pub fn det_exact(a: &DenseMatrix) -> Rational {
    let n = a.n;
    if n == 0 {
        return Rational::one();
    }
    let (mut rows, scales) = integer_rows(&a.entries, None);
    let (pivots, negated) = bareiss(&mut rows, n, true);
    if pivots.len() < n {
        return Rational::zero();
    }
    let det = Rational::new(pivots[n - 1].clone(), scales.iter().product());
    if negated {
        -det
    } else {
        det
    }
}

/// `M_0, ..., M_{n-1}` where `M_i` is the determinant of the top-left `(i+1) x (i+1)` block.
///
/// One unpivoted Bareiss pass yields every minor up to the first zero; the
/// blocks past that point are evaluated one at a time.
pub fn leading_principal_minors(a: &DenseMatrix) -> Vec<Rational> {
    let n = a.n;
    let (mut rows, scales) = integer_rows(&a.entries, None);
    let (pivots, _) = bareiss(&mut rows, n, false);
    let mut scale = BigInt::one();
    let mut minors: Vec<Rational> = pivots
        .into_iter()
        .zip(&scales)
        .map(|(p, l)| {
            scale *= l;
            Rational::new(p, scale.clone())
        })
        .collect();
    if minors.len() < n {
        minors.push(Rational::zero());
    }
    for k in minors.len() + 1..=n {
        minors.push(det_exact(&a.leading_block(k)));
    }
    minors
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64) -> Rational {
        Rational::from_integer(p.into())
    }

    fn tridiag(n: usize, sub: i64, main: i64, sup: i64) -> DenseMatrix {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match j as i64 - i as i64 {
                        -1 => q(sub),
                        0 => q(main),
                        1 => q(sup),
                        _ => q(0),
                    })
                    .collect()
            })
            .collect();
        DenseMatrix::new(entries).unwrap()
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(a: &[Vec<Rational>]) -> Rational {
        let n = a.len();
        if n == 0 {
            return Rational::one();
        }
        (0..n).fold(Rational::zero(), |acc, j| {
            if a[0][j].is_zero() {
                return acc;
            }
            let minor: Vec<Vec<Rational>> = a[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &a[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }

    #[test]
    fn solves_tridiagonal() {
        let a = tridiag(4, 1, 2, 1);
        let x = gauss_solve_exact(&a, &[q(1), q(0), q(0), q(1)]).unwrap();
        let fifth = |p: i64| Rational::new(p.into(), 5.into());
        assert_eq!(x, vec![fifth(3), fifth(-1), fifth(-1), fifth(3)]);
        let y = vec![q(4), q(-2), q(7), q(1)];
        assert_eq!(gauss_solve_exact(&DenseMatrix::identity(4), &y).unwrap(), y);
    }

    #[test]
    fn singular_input_is_rejected() {
        let a = tridiag(5, 1, 0, 1);
        assert_eq!(
            gauss_solve_exact(&a, &vec![q(1); 5]),
            Err(Error::SingularMatrix)
        );
        assert!(det_exact(&a).is_zero());
    }

    #[test]
    fn determinants_and_minors() {
        assert_eq!(det_exact(&tridiag(4, 1, 2, 1)), q(5));
        assert_eq!(det_exact(&tridiag(4, 1, 0, 1)), q(1));
        assert_eq!(det_exact(&DenseMatrix::identity(6)), q(1));
        assert_eq!(
            leading_principal_minors(&tridiag(4, 1, 2, 1)),
            vec![q(2), q(3), q(4), q(5)]
        );
        assert_eq!(
            leading_principal_minors(&tridiag(4, 1, 0, 1)),
            vec![q(0), q(-1), q(0), q(1)]
        );
        assert_eq!(
            leading_principal_minors(&DenseMatrix::identity(4)),
            vec![q(1); 4]
        );
    }

    #[test]
    fn row_swaps_flip_sign() {
        // [[0, 1], [1, 0]] needs one swap
        let a = DenseMatrix::new(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert_eq!(det_exact(&a), q(-1));
    }

    fn arb_dense() -> impl Strategy<Value = DenseMatrix> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
                DenseMatrix::new(
                    v.chunks(n)
                        .map(|r| r.iter().copied().map(q).collect())
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn det_matches_cofactor_expansion(a in arb_dense()) {
            prop_assert_eq!(det_exact(&a), cofactor_det(a.rows()));
            let minors = leading_principal_minors(&a);
            prop_assert_eq!(minors.last().cloned().unwrap(), det_exact(&a));
        }

        #[test]
        fn solution_satisfies_system(a in arb_dense(), seed in proptest::collection::vec(-5i64..=5, 6)) {
            let y: Vec<Rational> = seed[..a.n()].iter().copied().map(q).collect();
            match gauss_solve_exact(&a, &y) {
                Ok(x) => prop_assert_eq!(a.mul_vec(&x), y),
                Err(e) => {
                    prop_assert_eq!(e, Error::SingularMatrix);
                    prop_assert!(det_exact(&a).is_zero());
                }
            }
        }
    }
}
