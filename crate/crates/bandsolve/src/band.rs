//! Diagonal-major storage for matrices with `m` sub- and `m` super-diagonals.
//!
//! Band `j` (for `j` in `0..=2m`) holds the entries `b[i][j]` at column
//! `i + j - m`, so band `m` is the main diagonal, band `0` the lowest
//! sub-diagonal and band `2m` the highest super-diagonal. Every band has
//! length `n`; slots whose column would fall outside the matrix must be zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One broken structural rule of a [`BandMatrix`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    ZeroBandwidth,
    TooSmall {
        n: usize,
        m: usize,
    },
    DiagonalCount {
        expected: usize,
        found: usize,
    },
    DiagonalLength {
        diagonal: usize,
        expected: usize,
        found: usize,
    },
    OutOfBandNonzero {
        diagonal: usize,
        row: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroBandwidth => write!(f, "m must be positive"),
            Self::TooSmall { n, m } => write!(f, "n must exceed 2m+1 (n = {n}, m = {m})"),
            Self::DiagonalCount { expected, found } => {
                write!(f, "expected {expected} diagonals, found {found}")
            }
            Self::DiagonalLength {
                diagonal,
                expected,
                found,
            } => {
                write!(
                    f,
                    "diagonal j={diagonal} has length {found}, expected {expected}"
                )
            }
            Self::OutOfBandNonzero { diagonal, row } => {
                write!(f, "out-of-band slot (j={diagonal}, i={row}) is nonzero")
            }
        }
    }
}

/// An `n x n` matrix with `2m + 1` stored diagonals.
#[derive(Clone, Debug, PartialEq)]
pub struct BandMatrix<T> {
    n: usize,
    m: usize,
    diags: Vec<Vec<T>>,
}

/// Whether band `j` of row `i` maps to a real column.
#[inline]
pub fn in_band(n: usize, m: usize, i: usize, j: usize) -> bool {
    i + j >= m && i + j - m < n
}

impl<T: Scalar> BandMatrix<T> {
    /// Builds and validates a band matrix from its diagonals `b^0 ..= b^{2m}`.
    pub fn from_diagonals(n: usize, m: usize, diags: Vec<Vec<T>>) -> Result<Self> {
        let matrix = Self::from_diagonals_unchecked(n, m, diags);
        match matrix.validate() {
            Ok(()) => Ok(matrix),
            Err(violations) => Err(Error::InvalidBand(violations)),
        }
    }

    /// No checks; call [`BandMatrix::validate`] before using the result.
    pub fn from_diagonals_unchecked(n: usize, m: usize, diags: Vec<Vec<T>>) -> Self {
        Self { n, m, diags }
    }

    pub fn zeros(n: usize, m: usize) -> Result<Self> {
        Self::from_diagonals(n, m, vec![vec![T::zero(); n]; 2 * m + 1])
    }

    pub fn identity(n: usize, m: usize) -> Result<Self> {
        let mut a = Self::zeros(n, m)?;
        a.diags[m].iter_mut().for_each(|v| *v = T::one());
        Ok(a)
    }

    /// Toeplitz band repeating `stencil` (lowest band first) down every row.
    pub fn from_stencil(n: usize, stencil: &[T]) -> Result<Self> {
        if stencil.len().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "stencil length {} is not of the form 2m+1",
                stencil.len()
            )));
        }
        let m = stencil.len() / 2;
        let diags = stencil
            .iter()
            .enumerate()
            .map(|(j, v)| {
                (0..n)
                    .map(|i| {
                        if in_band(n, m, i, j) {
                            v.clone()
                        } else {
                            T::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_diagonals(n, m, diags)
    }

    /// Every violated invariant, or `Ok` when the matrix is well formed.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let (n, m) = (self.n, self.m);
        let mut violations = Vec::new();
        if m == 0 {
            violations.push(Violation::ZeroBandwidth);
        }
        if n < 2 * m + 2 {
            violations.push(Violation::TooSmall { n, m });
        }
        if self.diags.len() != 2 * m + 1 {
            violations.push(Violation::DiagonalCount {
                expected: 2 * m + 1,
                found: self.diags.len(),
            });
        }
        for (j, band) in self.diags.iter().enumerate() {
            if band.len() != n {
                violations.push(Violation::DiagonalLength {
                    diagonal: j,
                    expected: n,
                    found: band.len(),
                });
            }
            for (i, v) in band.iter().enumerate() {
                if !in_band(n, m, i, j) && !v.is_zero() {
                    violations.push(Violation::OutOfBandNonzero {
                        diagonal: j,
                        row: i,
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn diagonals(&self) -> &[Vec<T>] {
        &self.diags
    }

    /// Band `j`, indexed by row.
    pub fn band(&self, j: usize) -> &[T] {
        &self.diags[j]
    }

    /// `b[i][j]`: row `i`, band `j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.diags[j][i]
    }

    /// Dense entry `(row, col)`; zero outside the band.
    pub fn entry(&self, row: usize, col: usize) -> Result<T> {
        let n = self.n;
        if row >= n || col >= n {
            return Err(Error::IndexOutOfRange { row, col, n });
        }
        if row.abs_diff(col) > self.m {
            return Ok(T::zero());
        }
        Ok(self.diags[col + self.m - row][row].clone())
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut dense = vec![vec![T::zero(); self.n]; self.n];
        for (j, band) in self.diags.iter().enumerate() {
            for (i, v) in band.iter().enumerate() {
                if in_band(self.n, self.m, i, j) {
                    dense[i][i + j - self.m] = v.clone();
                }
            }
        }
        dense
    }

    pub fn from_dense(dense: &[Vec<T>], m: usize) -> Result<Self> {
        let n = dense.len();
        if let Some(row) = dense.iter().position(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "row {row} has length {}, expected {n}",
                dense[row].len()
            )));
        }
        if m == 0 || n < 2 * m + 2 {
            return Err(Error::Dimension(format!(
                "n must exceed 2m+1 (n = {n}, m = {m})"
            )));
        }
        for (row, r) in dense.iter().enumerate() {
            for (col, v) in r.iter().enumerate() {
                if row.abs_diff(col) > m && !v.is_zero() {
                    return Err(Error::BandwidthViolation { row, col });
                }
            }
        }
        let diags = (0..=2 * m)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        if in_band(n, m, i, j) {
                            dense[i][i + j - m].clone()
                        } else {
                            T::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_diagonals(n, m, diags)
    }

    /// `A x`
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..=2 * self.m {
                    if in_band(self.n, self.m, i, j) {
                        acc.sub_product(&self.diags[j][i], &x[i + j - self.m]);
                    }
                }
                -acc
            })
            .collect()
    }

    /// Entry-wise conversion into another scalar kind.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> BandMatrix<U> {
        BandMatrix {
            n: self.n,
            m: self.m,
            diags: self
                .diags
                .iter()
                .map(|b| b.iter().map(&f).collect())
                .collect(),
        }
    }
}

/// A linear system `A x = y` with banded `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Slae<T> {
    matrix: BandMatrix<T>,
    rhs: Vec<T>,
}

impl<T: Scalar> Slae<T> {
    pub fn new(matrix: BandMatrix<T>, rhs: Vec<T>) -> Result<Self> {
        matrix.validate().map_err(Error::InvalidBand)?;
        if rhs.len() != matrix.n() {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {}",
                rhs.len(),
                matrix.n()
            )));
        }
        Ok(Self { matrix, rhs })
    }

    pub fn matrix(&self) -> &BandMatrix<T> {
        &self.matrix
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    pub fn n(&self) -> usize {
        self.matrix.n
    }

    pub fn m(&self) -> usize {
        self.matrix.m
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Slae<U> {
        Slae {
            matrix: self.matrix.map(&f),
            rhs: self.rhs.iter().map(f).collect(),
        }
    }

    /// Same matrix, different right-hand side.
    pub fn with_rhs(&self, rhs: Vec<T>) -> Result<Self> {
        Self::new(self.matrix.clone(), rhs)
    }
}
