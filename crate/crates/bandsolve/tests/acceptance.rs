//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bandsolve::complexity::{measure, predicted_per_category, predicted_total, step_count};
use bandsolve::generators::{generate, GeneratorKind, GeneratorSpec};
use bandsolve::oracle::{det_exact, gauss_solve_exact, leading_principal_minors, DenseMatrix};
use bandsolve::scalar::Scalar;
use bandsolve::{
    determinant_from_pivots, forward_reduce, solve_numeric, solve_symbolic, BandMatrix, Error,
    Rational, Slae, SolverConfig,
};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn(&mut Shared) -> Outcome,
}

/// Data handed from criterion 3 to criterion 4.
#[derive(Default)]
struct Shared {
    dominant: Vec<Slae<Rational>>,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(p: i64) -> Rational {
    Rational::from_integer(p.into())
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn table_reproduction(_: &mut Shared) -> Outcome {
    let mut pairs = 0;
    let mut skipped = Vec::new();
    for m in 1..=5u64 {
        for n in [2 * m + 2, 10, 17, 50, 101] {
            if n < 2 * m + 2 {
                skipped.push(format!("(m={m}, n={n})"));
                continue;
            }
            let spec = GeneratorSpec::new(GeneratorKind::DiagDominant, n as usize, m as usize)
                .seeded(n * 10 + m);
            let slae = generate(&spec)
                .map_err(|e| e.to_string())?
                .map(f64::from_rational);
            let sol = solve_numeric(&slae, &cfg()).map_err(|e| e.to_string())?;
            let predicted = predicted_per_category(n, m).map_err(|e| e.to_string())?;
            ensure(measure(&sol) == predicted, || {
                format!(
                    "n={n} m={m}: measured {:?} predicted {predicted:?}",
                    measure(&sol)
                )
            })?;
            let n = n as i64;
            let closed = match m {
                2 => Some(19 * n - 29),
                3 => Some(34 * n - 74),
                4 => Some(53 * n - 150),
                _ => None,
            };
            if let Some(t) = closed {
                ensure(sol.ops.total as i64 == t, || {
                    format!("n={n} m={m}: total {} != {t}", sol.ops.total)
                })?;
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} (m, n) pairs, all ten categories equal; skipped n < 2m+2: {}",
        skipped.join(" ")
    ))
}

fn total_consistency(_: &mut Shared) -> Outcome {
    let mut checked = 0;
    for m in 1..=6u64 {
        for n in 2 * m + 2..=200 {
            let total = predicted_total(n, m).map_err(|e| e.to_string())?;
            let per = predicted_per_category(n, m).map_err(|e| e.to_string())?;
            ensure(total == per.category_sum() && total == per.total, || {
                format!("n={n} m={m}: total {total} vs sum {}", per.category_sum())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (m, n) pairs"))
}

/// `(n, m)` for instance `k`: m cycles through 1..=5, n spreads over [2m+2, 40].
fn shape(k: u64) -> (usize, usize) {
    let m = 1 + (k % 5) as usize;
    let lo = 2 * m + 2;
    let n = lo + ((k * 7919) % (41 - lo as u64)) as usize;
    (n, m)
}

fn oracle_equivalence(shared: &mut Shared) -> Outcome {
    for k in 0..200u64 {
        let (n, m) = shape(k);
        let slae =
            generate(&GeneratorSpec::new(GeneratorKind::DiagDominant, n, m).seeded(1000 + k))
                .map_err(|e| e.to_string())?;
        let sol = solve_numeric(&slae, &cfg()).map_err(|e| format!("instance {k}: {e}"))?;
        let dense = DenseMatrix::from_band(slae.matrix());
        let x = gauss_solve_exact(&dense, slae.rhs()).map_err(|e| e.to_string())?;
        ensure(sol.x == x, || {
            format!("instance {k} (n={n}, m={m}): solution differs")
        })?;
        ensure(sol.determinant == det_exact(&dense), || {
            format!("instance {k}: determinant differs")
        })?;
        shared.dominant.push(slae);
    }
    Ok("200 diag_dominant instances, n <= 40, m <= 5: x and det identical".into())
}

fn pivot_determinants(shared: &mut Shared) -> Outcome {
    ensure(shared.dominant.len() == 200, || {
        "criterion 3 instances unavailable".into()
    })?;
    for (k, slae) in shared.dominant.iter().enumerate() {
        let state = forward_reduce(slae, &cfg()).map_err(|e| e.to_string())?;
        let dense = DenseMatrix::from_band(slae.matrix());
        ensure(determinant_from_pivots(&state) == det_exact(&dense), || {
            format!("diag_dominant instance {k}: pivot product differs")
        })?;
        ensure(!state.rescue_used, || {
            format!("instance {k}: unexpected rescue")
        })?;
        let mut prefix = Rational::one();
        for (j, (mu, minor)) in state
            .mu
            .iter()
            .zip(leading_principal_minors(&dense))
            .enumerate()
        {
            prefix *= mu;
            ensure(prefix == minor, || {
                format!("instance {k}: prefix product {j} differs")
            })?;
        }
    }
    for k in 0..50u64 {
        let (n, m) = shape(k);
        let slae = generate(&GeneratorSpec::new(GeneratorKind::ZeroMinor, n, m).seeded(2000 + k))
            .map_err(|e| e.to_string())?;
        let sol =
            solve_symbolic(&slae, &cfg()).map_err(|e| format!("zero_minor instance {k}: {e}"))?;
        ensure(sol.rescue_used, || {
            format!("zero_minor instance {k}: rescue did not fire")
        })?;
        let det = det_exact(&DenseMatrix::from_band(slae.matrix()));
        ensure(sol.determinant == det, || {
            format!("zero_minor instance {k}: determinant differs")
        })?;
    }
    Ok("200 diag_dominant (det and all prefix minors) + 50 zero_minor with rescue".into())
}

fn tridiag(n: usize, sub: i64, main: i64, sup: i64, rhs: Vec<Rational>) -> Slae<Rational> {
    Slae::new(
        BandMatrix::from_stencil(n, &[q(sub), q(main), q(sup)]).unwrap(),
        rhs,
    )
    .unwrap()
}

fn rescue_correctness(_: &mut Shared) -> Outcome {
    let slae = tridiag(4, 1, 0, 1, vec![q(1); 4]);
    let sol = solve_symbolic(&slae, &cfg()).map_err(|e| e.to_string())?;
    ensure(sol.x == [q(0), q(1), q(1), q(0)], || {
        format!("tridiag(1;0;1) x = {:?}", sol.x)
    })?;
    ensure(sol.determinant == q(1) && sol.rescue_used, || {
        "tridiag(1;0;1) det or flag wrong".into()
    })?;

    let mut systems = Vec::new();
    for m in 1..=3 {
        for n in 2 * m + 2..=2 * m + 9 {
            if let Ok(s) = generate(&GeneratorSpec::new(GeneratorKind::ZeroMinor, n, m)) {
                systems.push(s);
            }
        }
    }
    for seed in 0..30u64 {
        let m = 1 + (seed % 4) as usize;
        let n = 2 * m + 2 + (seed % 13) as usize;
        systems.push(
            generate(&GeneratorSpec::new(GeneratorKind::ZeroMinor, n, m).seeded(seed))
                .map_err(|e| e.to_string())?,
        );
    }
    for (k, slae) in systems.iter().enumerate() {
        let dense = DenseMatrix::from_band(slae.matrix());
        ensure(dense.rows()[0][0].is_zero(), || {
            format!("system {k}: mu_0 is not zero")
        })?;
        let sol = solve_symbolic(slae, &cfg()).map_err(|e| format!("system {k}: {e}"))?;
        let x = gauss_solve_exact(&dense, slae.rhs()).map_err(|e| e.to_string())?;
        ensure(sol.x == x && sol.rescue_used, || {
            format!("system {k} (n={}, m={}) differs", slae.n(), slae.m())
        })?;
        ensure(sol.determinant == det_exact(&dense), || {
            format!("system {k}: determinant differs")
        })?;
    }
    Ok(format!(
        "tridiag(1;0;1) n=4 -> x=(0,1,1,0), det=1; {} further zero-pivot systems",
        systems.len()
    ))
}

fn singularity(_: &mut Shared) -> Outcome {
    let slae = tridiag(5, 1, 0, 1, vec![q(1); 5]);
    let got = solve_symbolic(&slae, &cfg());
    ensure(matches!(got, Err(Error::SingularMatrix)), || {
        format!("solve_symbolic returned {got:?}")
    })?;
    let det = det_exact(&DenseMatrix::from_band(slae.matrix()));
    ensure(det.is_zero(), || format!("oracle det = {det}"))?;
    Ok("SingularMatrix from the solver, det 0 from the oracle".into())
}

fn best_time(slae: &Slae<f64>, reps: usize) -> Result<(Duration, u64), String> {
    let mut best = Duration::MAX;
    let mut total = 0;
    for _ in 0..reps {
        let start = Instant::now();
        let sol = solve_numeric(slae, &cfg()).map_err(|e| e.to_string())?;
        best = best.min(start.elapsed());
        total = sol.ops.total;
    }
    Ok((best, total))
}

fn linear_scaling(_: &mut Shared) -> Outcome {
    let mut times = Vec::new();
    for (n, reps) in [(1_000usize, 50), (10_000, 15), (100_000, 5)] {
        let slae =
            generate(&GeneratorSpec::new(GeneratorKind::DiagDominant, n, 3).seeded(n as u64))
                .map_err(|e| e.to_string())?
                .map(f64::from_rational);
        let (t, total) = best_time(&slae, reps)?;
        let want = 34 * n as u64 - 74;
        ensure(total == want, || format!("n={n}: total {total} != {want}"))?;
        times.push(t);
    }
    let ratios: Vec<f64> = times
        .windows(2)
        .map(|w| w[1].as_secs_f64() / w[0].as_secs_f64())
        .collect();
    ensure(ratios.iter().all(|&r| r <= 15.0), || {
        format!("time ratios {ratios:.2?} exceed 15")
    })?;
    Ok(format!(
        "totals = 34N-74; best times {times:?}, growth per 10x {ratios:.2?}"
    ))
}

fn float_accuracy(_: &mut Shared) -> Outcome {
    let n = 100_000;
    let mut worst = 0.0f64;
    for m in 1..=4 {
        let slae =
            generate(&GeneratorSpec::new(GeneratorKind::DiagDominant, n, m).seeded(77 + m as u64))
                .map_err(|e| e.to_string())?
                .map(f64::from_rational);
        let sol = solve_numeric(&slae, &cfg()).map_err(|e| e.to_string())?;
        let ax = slae.matrix().mul_vec(&sol.x);
        let res = ax
            .iter()
            .zip(slae.rhs())
            .map(|(a, y)| (a - y).abs())
            .fold(0.0, f64::max);
        let scale = slae.rhs().iter().map(|y| y.abs()).fold(0.0, f64::max);
        let rel = res / scale;
        ensure(rel <= 1e-10, || format!("m={m}: relative residual {rel:e}"))?;
        worst = worst.max(rel);
    }
    Ok(format!(
        "n=1e5, m=1..4: max ||Ax-y||_inf / ||y||_inf = {worst:.2e}"
    ))
}

fn step_model(_: &mut Shared) -> Outcome {
    let samples = [1u64, 2, 7, 100, 4096, 99_999, 1 << 40];
    for &n in &samples {
        ensure(step_count(n) == 2 * n, || {
            format!("step_count({n}) = {}", step_count(n))
        })?;
    }
    Ok(format!("{} sampled n", samples.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "operation counts reproduce the complexity table",
            limit: Duration::from_secs(1),
            run: table_reproduction,
        },
        Criterion {
            id: 2,
            name: "total formula equals the per-category sum",
            limit: Duration::from_secs(1),
            run: total_consistency,
        },
        Criterion {
            id: 3,
            name: "exact mode matches the dense oracle",
            limit: Duration::from_secs(30),
            run: oracle_equivalence,
        },
        Criterion {
            id: 4,
            name: "pivot products give det and leading minors",
            limit: Duration::from_secs(30),
            run: pivot_determinants,
        },
        Criterion {
            id: 5,
            name: "symbolic rescue matches the oracle",
            limit: Duration::from_secs(5),
            run: rescue_correctness,
        },
        Criterion {
            id: 6,
            name: "singular matrix is detected",
            limit: Duration::from_secs(1),
            run: singularity,
        },
        Criterion {
            id: 7,
            name: "O(N) counts and wall time at m = 3",
            limit: Duration::from_secs(10),
            run: linear_scaling,
        },
        Criterion {
            id: 8,
            name: "float residual at n = 1e5",
            limit: Duration::from_secs(5),
            run: float_accuracy,
        },
        Criterion {
            id: 9,
            name: "step model is 2n",
            limit: Duration::from_secs(1),
            run: step_model,
        },
    ];
    let mut shared = Shared::default();
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)(&mut shared);
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= c.limit {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, limit {:?}", c.limit))
            }
        });
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {}: {} ({detail}) [{elapsed:.2?}]",
                c.id, c.name
            ),
            Err(why) => {
                failures += 1;
                println!(
                    "FAIL criterion {}: {} ({why}) [{elapsed:.2?}]",
                    c.id, c.name
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
