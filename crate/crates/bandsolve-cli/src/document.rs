use std::collections::BTreeMap;
use std::time::Instant;

use bandsolve::OpCountReport;
use serde::Serialize;

/// Arithmetic used by `solve` and `det`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `f64` with the epsilon zero test.
    Numeric,
    /// Exact rationals with zero-pivot rescue.
    Symbolic,
    /// Exact rationals, no rescue.
    Exact,
}

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub solution: bool,
    pub determinant: bool,
    /// Prefix pivot products (at `s = 0` after a rescue) against leading minors.
    pub leading_minors: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.solution && self.determinant && self.leading_minors
    }
}

/// JSON printed by every command.
///
/// Fields that do not apply to a command are `null`; `x` and `x_float` are
/// omitted entirely unless a solution was produced.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub mode: Option<Mode>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    /// Exact `p/q` strings (shortest round-trip decimals in numeric mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_float: Option<Vec<f64>>,
    pub determinant: Option<String>,
    pub determinant_float: Option<f64>,
    pub rescue_used: Option<bool>,
    pub rescue_index: Option<usize>,
    pub pivots: Option<Vec<String>>,
    pub op_report: Option<OpCountReport>,
    pub predicted: Option<OpCountReport>,
    #[serde(rename = "match")]
    pub counts_match: Option<bool>,
    pub checks: Option<Checks>,
    pub error: Option<String>,
    pub exit_code: u8,
    pub timings_ms: BTreeMap<String, f64>,
}

impl ResultDocument {
    pub fn new(command: &str, mode: Option<Mode>) -> Self {
        Self {
            command: command.to_string(),
            mode,
            ..Self::default()
        }
    }

    /// Records the time elapsed since `start` under `phase`.
    pub fn time(&mut self, phase: &str, start: Instant) {
        self.timings_ms
            .insert(phase.to_string(), start.elapsed().as_secs_f64() * 1e3);
    }
}
