use std::time::Instant;

use bandsolve::complexity::{predicted_per_category, predicted_total};
use bandsolve::generators::{generate, GeneratorKind, GeneratorSpec};
use bandsolve::oracle::{det_exact, gauss_solve_exact, leading_principal_minors, DenseMatrix};
use bandsolve::scalar::rational_to_f64;
use bandsolve::solver::DETERMINANT_PRECHECK_LIMIT;
use bandsolve::{solve_numeric, solve_symbolic, Error, Rational, Slae, SolverConfig};
use num_traits::{One, Zero};

use crate::bandfile;
use crate::document::{Checks, Mode, ResultDocument};
use crate::error::CliError;

pub fn read_system(path: &str) -> Result<Slae<Rational>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    bandfile::parse(&text)
}

fn config(epsilon: Option<f64>) -> Result<SolverConfig, CliError> {
    match epsilon {
        Some(eps) => Ok(SolverConfig::with_epsilon(eps)?),
        None => Ok(SolverConfig::default()),
    }
}

fn exact_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn float_strings(values: &[f64]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

/// Solves `slae` in `mode`; `with_x = false` leaves the solution out (the `det` command).
pub fn solve(
    command: &str,
    slae: &Slae<Rational>,
    mode: Mode,
    epsilon: Option<f64>,
    with_x: bool,
) -> Result<ResultDocument, CliError> {
    let cfg = config(epsilon)?;
    let mut doc = ResultDocument::new(command, Some(mode));
    doc.n = Some(slae.n());
    doc.m = Some(slae.m());
    let start = Instant::now();
    let (x, x_float) = match mode {
        Mode::Numeric => {
            let floats = slae.map(rational_to_f64);
            let sol = solve_numeric(&floats, &cfg)?;
            doc.determinant = Some(sol.determinant.to_string());
            doc.determinant_float = Some(sol.determinant);
            doc.rescue_used = Some(false);
            doc.pivots = Some(float_strings(&sol.pivots));
            doc.op_report = Some(sol.ops);
            (float_strings(&sol.x), sol.x)
        }
        Mode::Exact => {
            let sol = solve_numeric(slae, &cfg)?;
            doc.determinant_float = Some(rational_to_f64(&sol.determinant));
            doc.determinant = Some(sol.determinant.to_string());
            doc.rescue_used = Some(false);
            doc.pivots = Some(exact_strings(&sol.pivots));
            doc.op_report = Some(sol.ops);
            (
                exact_strings(&sol.x),
                sol.x.iter().map(rational_to_f64).collect(),
            )
        }
        Mode::Symbolic => {
            let sol = solve_symbolic(slae, &cfg)?;
            doc.determinant_float = Some(rational_to_f64(&sol.determinant));
            doc.determinant = Some(sol.determinant.to_string());
            doc.rescue_used = Some(sol.rescue_used);
            doc.rescue_index = sol.rescue_index;
            doc.pivots = Some(sol.pivots.iter().map(ToString::to_string).collect());
            doc.op_report = Some(sol.ops);
            (
                exact_strings(&sol.x),
                sol.x.iter().map(rational_to_f64).collect(),
            )
        }
    };
    doc.time("solve", start);
    if with_x {
        doc.x = Some(x);
        doc.x_float = Some(x_float);
    }
    Ok(doc)
}

/// Closed-form counts for `(n, m)`, plus measured counts when a system is given.
pub fn count(
    n: usize,
    m: usize,
    slae: Option<&Slae<Rational>>,
) -> Result<ResultDocument, CliError> {
    let mut doc = ResultDocument::new("count", None);
    doc.n = Some(n);
    doc.m = Some(m);
    let predicted = predicted_per_category(n as u64, m as u64)?;
    debug_assert_eq!(Ok(predicted.total), predicted_total(n as u64, m as u64));
    if let Some(slae) = slae {
        if (slae.n(), slae.m()) != (n, m) {
            return Err(CliError::Dimension(format!(
                "file holds n = {}, m = {}, flags say n = {n}, m = {m}",
                slae.n(),
                slae.m()
            )));
        }
        doc.mode = Some(Mode::Numeric);
        let start = Instant::now();
        let sol = solve_numeric(&slae.map(rational_to_f64), &SolverConfig::default())?;
        doc.time("solve", start);
        doc.counts_match = Some(sol.ops == predicted);
        doc.op_report = Some(sol.ops);
    }
    doc.predicted = Some(predicted);
    Ok(doc)
}

/// Band file text for a generated system.
pub fn generate_file(
    kind: GeneratorKind,
    n: usize,
    m: Option<usize>,
    seed: Option<u64>,
) -> Result<String, CliError> {
    let m = match (m, kind.fixed_m()) {
        (Some(m), _) | (None, Some(m)) => m,
        (None, None) => {
            return Err(CliError::Dimension(format!(
                "--m is required for kind {kind}"
            )))
        }
    };
    let mut spec = GeneratorSpec::new(kind, n, m);
    if let Some(seed) = seed {
        spec = spec.seeded(seed);
    }
    let slae = generate(&spec)?;
    let seed_text = seed.map_or_else(|| "none".to_string(), |s| s.to_string());
    let comment = format!("generated kind={kind} n={n} m={m} seed={seed_text}");
    Ok(bandfile::write(&slae, &[comment]))
}

/// What the solver claims, as compared by [`verify_with`].
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub x: Vec<Rational>,
    pub determinant: Rational,
    /// `prefix_products[j]` is the product of pivots `0..=j`, at `s = 0` after a rescue.
    pub prefix_products: Vec<Option<Rational>>,
    pub rescue_used: bool,
}

fn candidate(slae: &Slae<Rational>) -> Result<Candidate, CliError> {
    let cfg = SolverConfig::default();
    match solve_numeric(slae, &cfg) {
        Ok(sol) => {
            let mut acc = Rational::one();
            let prefix_products = sol
                .pivots
                .iter()
                .map(|p| {
                    acc *= p;
                    Some(acc.clone())
                })
                .collect();
            Ok(Candidate {
                x: sol.x,
                determinant: sol.determinant,
                prefix_products,
                rescue_used: false,
            })
        }
        Err(Error::ZeroPivot(_)) => {
            let sol = solve_symbolic(slae, &cfg)?;
            let mut acc = bandsolve::RationalFunction::one();
            let prefix_products = sol
                .pivots
                .iter()
                .map(|p| {
                    acc = &acc * p;
                    acc.eval_at_zero().ok()
                })
                .collect();
            Ok(Candidate {
                x: sol.x,
                determinant: sol.determinant,
                prefix_products,
                rescue_used: sol.rescue_used,
            })
        }
        Err(e) => Err(e.into()),
    }
}

/// Checks the solver against the dense oracle.
pub fn verify(slae: &Slae<Rational>) -> Result<ResultDocument, CliError> {
    verify_with(slae, |_| {})
}

/// [`verify`] with a hook that may alter the solver's answer before comparison.
pub fn verify_with(
    slae: &Slae<Rational>,
    tamper: impl FnOnce(&mut Candidate),
) -> Result<ResultDocument, CliError> {
    let n = slae.n();
    if n > DETERMINANT_PRECHECK_LIMIT {
        return Err(CliError::Dimension(format!(
            "verify supports n <= {DETERMINANT_PRECHECK_LIMIT}, got n = {n}"
        )));
    }
    let mut doc = ResultDocument::new("verify", Some(Mode::Symbolic));
    doc.n = Some(n);
    doc.m = Some(slae.m());

    let start = Instant::now();
    let dense = DenseMatrix::from_band(slae.matrix());
    let det = det_exact(&dense);
    if det.is_zero() {
        return Err(CliError::Singular);
    }
    let x = gauss_solve_exact(&dense, slae.rhs())?;
    let minors = leading_principal_minors(&dense);
    doc.time("oracle", start);

    let start = Instant::now();
    let mut claim = candidate(slae)?;
    doc.time("solve", start);
    tamper(&mut claim);

    let checks = Checks {
        solution: claim.x == x,
        determinant: claim.determinant == det,
        leading_minors: claim.prefix_products.len() == n
            && claim
                .prefix_products
                .iter()
                .zip(&minors)
                .all(|(p, m)| p.as_ref() == Some(m)),
    };
    doc.rescue_used = Some(claim.rescue_used);
    doc.determinant_float = Some(rational_to_f64(&claim.determinant));
    doc.determinant = Some(claim.determinant.to_string());
    if !checks.all() {
        let failed: Vec<&str> = [
            (checks.solution, "solution"),
            (checks.determinant, "determinant"),
            (checks.leading_minors, "leading minors"),
        ]
        .iter()
        .filter(|(ok, _)| !ok)
        .map(|&(_, name)| name)
        .collect();
        return Err(CliError::Mismatch(failed.join(", ")));
    }
    doc.x_float = Some(claim.x.iter().map(rational_to_f64).collect());
    doc.x = Some(exact_strings(&claim.x));
    doc.checks = Some(checks);
    Ok(doc)
}
