//! Arithmetic-operation accounting for the numeric band solver.
//!
//! Every scalar multiply, add/subtract and divide performed by the
//! recurrences is counted once and attributed to one of ten expression
//! categories: sub-diagonal multipliers, pivots, normalized super-diagonal
//! entries and the transformed right-hand side, each split into the first
//! `m` rows and the rest, plus the two back-substitution ranges.
//! Assignments, comparisons and index arithmetic are free.
//!
//! [`predicted_per_category`] gives the closed forms; the solver's counters
//! must reproduce them exactly for every `(n, m)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::Solution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpCategory {
    /// Sub-diagonal multipliers, rows `i < m`.
    AlphaSubLowrows,
    /// Sub-diagonal multipliers, rows `i >= m`.
    AlphaSubMain,
    MuLowrows,
    MuMain,
    /// Normalized super-diagonal entries, rows `i < m`.
    AlphaSuperLowrows,
    AlphaSuperMain,
    ZLowrows,
    ZMain,
    /// Back substitution for the last `m` unknowns.
    XTail,
    /// Back substitution for rows `i <= n - m - 1`.
    XMain,
}

impl OpCategory {
    pub const ALL: [OpCategory; 10] = [
        Self::AlphaSubLowrows,
        Self::AlphaSubMain,
        Self::MuLowrows,
        Self::MuMain,
        Self::AlphaSuperLowrows,
        Self::AlphaSuperMain,
        Self::ZLowrows,
        Self::ZMain,
        Self::XTail,
        Self::XMain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::AlphaSubLowrows => "alpha_sub_lowrows",
            Self::AlphaSubMain => "alpha_sub_main",
            Self::MuLowrows => "mu_lowrows",
            Self::MuMain => "mu_main",
            Self::AlphaSuperLowrows => "alpha_super_lowrows",
            Self::AlphaSuperMain => "alpha_super_main",
            Self::ZLowrows => "z_lowrows",
            Self::ZMain => "z_main",
            Self::XTail => "x_tail",
            Self::XMain => "x_main",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Operation counts per category.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCountReport {
    pub alpha_sub_lowrows: u64,
    pub alpha_sub_main: u64,
    pub mu_lowrows: u64,
    pub mu_main: u64,
    pub alpha_super_lowrows: u64,
    pub alpha_super_main: u64,
    pub z_lowrows: u64,
    pub z_main: u64,
    pub x_tail: u64,
    pub x_main: u64,
    pub total: u64,
}

impl OpCountReport {
    pub fn from_counts(counts: [u64; 10]) -> Self {
        let mut report = Self::default();
        for (cat, c) in OpCategory::ALL.into_iter().zip(counts) {
            report.add(cat, c);
        }
        report
    }

    #[inline]
    pub fn add(&mut self, category: OpCategory, count: u64) {
        *self.slot(category) += count;
        self.total += count;
    }

    pub fn get(&self, category: OpCategory) -> u64 {
        self.counts()[category.index()]
    }

    pub fn counts(&self) -> [u64; 10] {
        [
            self.alpha_sub_lowrows,
            self.alpha_sub_main,
            self.mu_lowrows,
            self.mu_main,
            self.alpha_super_lowrows,
            self.alpha_super_main,
            self.z_lowrows,
            self.z_main,
            self.x_tail,
            self.x_main,
        ]
    }

    pub fn category_sum(&self) -> u64 {
        self.counts().iter().sum()
    }

    pub fn merge(&mut self, other: &Self) {
        for cat in OpCategory::ALL {
            self.add(cat, other.get(cat));
        }
    }

    fn slot(&mut self, category: OpCategory) -> &mut u64 {
        match category {
            OpCategory::AlphaSubLowrows => &mut self.alpha_sub_lowrows,
            OpCategory::AlphaSubMain => &mut self.alpha_sub_main,
            OpCategory::MuLowrows => &mut self.mu_lowrows,
            OpCategory::MuMain => &mut self.mu_main,
            OpCategory::AlphaSuperLowrows => &mut self.alpha_super_lowrows,
            OpCategory::AlphaSuperMain => &mut self.alpha_super_main,
            OpCategory::ZLowrows => &mut self.z_lowrows,
            OpCategory::ZMain => &mut self.z_main,
            OpCategory::XTail => &mut self.x_tail,
            OpCategory::XMain => &mut self.x_main,
        }
    }
}

fn check_dims(n: u64, m: u64) -> Result<()> {
    if m == 0 || n < 2 * m + 2 {
        return Err(Error::Dimension(format!(
            "n must exceed 2m+1 (n = {n}, m = {m})"
        )));
    }
    Ok(())
}

/// `2NM^2 + 5NM + N - 4M^3/3 - 7M^2/2 - 13M/6`, computed exactly.
pub fn predicted_total(n: u64, m: u64) -> Result<u64> {
    check_dims(n, m)?;
    let (n, m) = (i128::from(n), i128::from(m));
    let six_times = 6 * (2 * n * m * m + 5 * n * m + n) - 8 * m.pow(3) - 21 * m * m - 13 * m;
    debug_assert_eq!(six_times % 6, 0);
    u64::try_from(six_times / 6).map_err(|_| Error::Dimension("count overflows u64".into()))
}

/// Closed-form count for each category.
pub fn predicted_per_category(n: u64, m: u64) -> Result<OpCountReport> {
    check_dims(n, m)?;
    let (n, m) = (i128::from(n), i128::from(m));
    let sq_sum = m * (m + 1) * (2 * m + 1) / 6;
    let tri = m * (m + 1) / 2;
    let counts = [
        (m - 1) * m * (2 * m - 1) / 6 - (m - 1) * m / 2,
        (n - m) * (m * m - m),
        m * m - m,
        2 * m * n - 2 * m * m,
        m.pow(3) - sq_sum + tri,
        n * m * m - 2 * m.pow(3) - m * m + 2 * sq_sum - tri,
        m * m,
        2 * n * m + n - m - 2 * m * m,
        m * m - m,
        2 * n * m - 2 * m * m,
    ];
    let counts = counts.map(|c| u64::try_from(c).expect("category counts are non-negative"));
    Ok(OpCountReport::from_counts(counts))
}

/// Operation counts recorded while producing `solution`.
pub fn measure<T>(solution: &Solution<T>) -> OpCountReport {
    solution.ops.clone()
}

/// Length of the serial dependency chain: one forward and one backward step per row.
pub fn step_count(n: u64) -> u64 {
    2 * n
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct summation of the per-row operation counts, independent of the closed forms.
    fn summed(n: u64, m: u64) -> [u64; 10] {
        let mut c = [0u64; 10];
        for i in 0..n {
            let low = i < m;
            let subs = i.min(m);
            let sub_terms: u64 = (1..=subs).map(|k| 2 * (k - 1)).sum();
            let mu = 2 * subs;
            let sup: u64 = (1..=m)
                .filter(|k| i + k < n)
                .map(|k| 2 * i.min(m - k) + 1)
                .sum();
            let z = 2 * subs + 1;
            let off = if low { 0 } else { 1 };
            c[off] += sub_terms;
            c[2 + off] += mu;
            c[4 + off] += sup;
            c[6 + off] += z;
            let back = 2 * (n - 1 - i).min(m);
            if i + m >= n {
                c[8] += back;
            } else {
                c[9] += back;
            }
        }
        c
    }

    #[test]
    fn closed_forms_match_row_summation() {
        for m in 1..=6 {
            for n in 2 * m + 2..=60 {
                assert_eq!(
                    predicted_per_category(n, m).unwrap().counts(),
                    summed(n, m),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn totals_from_the_table() {
        assert_eq!(predicted_total(10, 2).unwrap(), 161);
        assert_eq!(predicted_total(100, 3).unwrap(), 3326);
        assert_eq!(predicted_total(20, 4).unwrap(), 910);
        for n in 4..50 {
            assert_eq!(predicted_total(n, 1).unwrap(), 8 * n - 7);
            if n >= 6 {
                assert_eq!(predicted_total(n, 2).unwrap(), 19 * n - 29);
            }
            if n >= 8 {
                assert_eq!(predicted_total(n, 3).unwrap(), 34 * n - 74);
            }
            if n >= 10 {
                assert_eq!(predicted_total(n, 4).unwrap(), 53 * n - 150);
            }
        }
    }

    #[test]
    fn per_category_examples() {
        let r = predicted_per_category(10, 2).unwrap();
        assert_eq!(r.counts(), [0, 16, 2, 32, 6, 27, 4, 40, 2, 32]);
        assert_eq!(r.total, 161);
        for n in 6..30 {
            assert_eq!(predicted_per_category(n, 2).unwrap().alpha_super_lowrows, 6);
        }
        assert_eq!(predicted_per_category(5, 1).unwrap().alpha_sub_lowrows, 0);
    }

    #[test]
    fn table_columns_for_m_3_and_4() {
        let n = 40;
        let r3 = predicted_per_category(n, 3).unwrap();
        assert_eq!(
            r3.counts(),
            [
                2,
                6 * (n - 3),
                6,
                6 * n - 18,
                19,
                9 * n - 41,
                9,
                7 * n - 21,
                6,
                6 * n - 18
            ]
        );
        let r4 = predicted_per_category(n, 4).unwrap();
        assert_eq!(
            r4.counts(),
            [
                8,
                12 * (n - 4),
                12,
                8 * n - 32,
                44,
                16 * n - 94,
                16,
                9 * n - 36,
                12,
                8 * n - 32
            ]
        );
    }

    #[test]
    fn total_is_sum_of_categories() {
        for m in 1..=6 {
            for n in 2 * m + 2..=200 {
                let r = predicted_per_category(n, m).unwrap();
                assert_eq!(r.category_sum(), predicted_total(n, m).unwrap());
                assert_eq!(r.total, r.category_sum());
            }
        }
    }

    #[test]
    fn linear_in_n() {
        for m in 1..=6 {
            let base = 2 * m + 2;
            let gap = |n: u64| {
                2 * predicted_total(n, m).unwrap() as i64
                    - predicted_total(2 * n, m).unwrap() as i64
            };
            let g0 = gap(base);
            for n in base..base + 100 {
                assert_eq!(gap(n), g0);
            }
        }
    }

    #[test]
    fn rejects_small_systems() {
        assert!(matches!(predicted_total(5, 2), Err(Error::Dimension(_))));
        assert!(matches!(
            predicted_per_category(3, 1),
            Err(Error::Dimension(_))
        ));
        assert!(predicted_total(6, 0).is_err());
    }

    #[test]
    fn steps() {
        assert_eq!(step_count(100), 200);
        assert_eq!(step_count(1), 2);
        assert_eq!(step_count(4), 8);
    }
}
