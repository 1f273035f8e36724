//! Acceptance criteria 1 to 7, run in order. Prints one PASS/FAIL line per
//! criterion and exits non-zero if any failed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use fuzzy_fixpoint::fuzzy::{check_fm_axioms, check_tnorm_axioms, Axiom, CarrierSpace, CrispMetric, FuzzyMetric, NearnessTable, Point, TGrid, TNorm};
use fuzzy_fixpoint::harness::{run_suite, seeded_specs, InstanceSpec, SuiteConfig};
use fuzzy_fixpoint::hypotheses::{check_recurrence_thm1, estimate_k_thm1, estimate_k_thm1_dual, SampleSet};
use fuzzy_fixpoint::maps::{MapPair, Mapping};
use fuzzy_fixpoint::solver::{iterate_pair, SolveConfig, SolveStatus, UniquenessVerdict};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn real_line() -> FuzzyMetric {
    FuzzyMetric::induced_standard(CarrierSpace::real_line())
}

fn closed_form_pair() -> MapPair {
    MapPair::new(Mapping::scalar_affine(0.5, 1.0), Mapping::scalar_affine(1.0 / 3.0, 1.0)).unwrap()
}

fn scalar(p: &Point) -> f64 {
    p.coords().unwrap()[0]
}

fn closed_form_regression() -> Outcome {
    let fm = real_line();
    let start = Instant::now();
    let r = iterate_pair(&closed_form_pair(), &fm, &fm, &Point::scalar(0.0), &SolveConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.status == SolveStatus::Converged, format!("status {:?}", r.status))?;
    ensure(r.iterations <= 60, format!("{} iterations", r.iterations))?;
    let (z, w) = (scalar(&r.z), scalar(&r.w));
    ensure((z - 1.6).abs() <= 1e-6 && (w - 1.8).abs() <= 1e-6, format!("z = {z}, w = {w}"))?;
    ensure(r.conclusions.residuals.len() == 4, "expected four residuals")?;
    ensure(r.conclusions.residuals.iter().all(|c| c.value >= 1.0 - 1e-6), "a residual is below 1 - 1e-6")?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!(
        "z = {z:.12}, w = {w:.12} after {} iterations, min residual {:.3e} below 1, {elapsed:?}",
        r.iterations,
        1.0 - r.conclusions.min_residual()
    ))
}

fn suite_soundness() -> Outcome {
    let mut specs = seeded_specs(&InstanceSpec::pair(0), 1, 100);
    specs.extend(seeded_specs(&InstanceSpec::quadruple(0), 101, 100));
    let start = Instant::now();
    let v = run_suite(&specs, &SuiteConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let a = &v.aggregate;
    ensure(a.converged == 200, format!("{} of 200 converged", a.converged))?;
    ensure(a.conclusions_passed == 200, format!("{} of 200 verified", a.conclusions_passed))?;
    ensure(
        v.rows.iter().all(|r| r.uniqueness == UniquenessVerdict::Unique && r.uniqueness_spread <= 1e-6),
        "a uniqueness probe disagreed",
    )?;
    ensure(v.rows.iter().all(|r| r.min_residual >= 1.0 - 1e-6), "a residual is below 1 - 1e-6")?;
    ensure(elapsed < Duration::from_secs(30), format!("took {elapsed:?}"))?;
    let spread = v.rows.iter().map(|r| r.uniqueness_spread).fold(0.0, f64::max);
    Ok(format!(
        "200/200 converged and verified, max uniqueness spread {spread:.2e}, {elapsed:.2?}"
    ))
}

fn negative_controls() -> Outcome {
    let specs = seeded_specs(&InstanceSpec::expansive_pair(0), 1001, 10);
    let cfg = SuiteConfig::default();
    let v = run_suite(&specs, &cfg).map_err(|e| e.to_string())?;
    ensure(v.aggregate.diverging == 10, format!("{} of 10 diverging", v.aggregate.diverging))?;
    ensure(v.rows.iter().all(|r| r.iterations <= cfg.solve.max_iter), "ran past max_iter")?;

    let dbl = MapPair::new(Mapping::scalar_affine(2.0, 0.0), Mapping::scalar_affine(2.0, 0.0)).unwrap();
    let mut ts = TGrid::default().values().to_vec();
    ts.push(2.0);
    ts.sort_by(f64::total_cmp);
    let grid = TGrid::new(ts).unwrap();
    let pts = vec![Point::scalar(0.0), Point::scalar(0.5)];
    let samples = SampleSet::new(pts.clone(), pts, grid).with_table();
    let fm = real_line();
    let rep = estimate_k_thm1(&dbl, &fm, &fm, &samples).map_err(|e| e.to_string())?;
    ensure(rep.k_hat > 1.0, format!("k_hat = {}", rep.k_hat))?;
    let row = rep
        .table
        .as_ref()
        .unwrap()
        .iter()
        .find(|r| {
            r.tuple.t == 2.0 && r.tuple.x.as_ref().map(scalar) == Some(0.0) && r.tuple.x2.as_ref().map(scalar) == Some(0.5)
        })
        .ok_or("witness tuple (0, 0.5, 2) missing")?;
    ensure((row.ratio - 8.0 / 7.0).abs() < 1e-12, format!("witness ratio {}", row.ratio))?;
    Ok(format!(
        "10/10 diverging (max {} iterations); doubling pair k_hat = {:.4}, ratio at (0, 0.5, 2) = {:.6}",
        v.rows.iter().map(|r| r.iterations).max().unwrap_or(0),
        rep.k_hat,
        row.ratio
    ))
}

fn axiom_suites() -> Outcome {
    let grid = TGrid::default();
    let carrier = CarrierSpace::real(2, CrispMetric::Euclidean).unwrap();
    let mut checks = 0;
    for op in TNorm::ALL {
        let r = check_tnorm_axioms(&op, 1000, 42);
        ensure(r.passed(), format!("{}: {:?}", r.subject, r.violations.first()))?;
        for fm in [FuzzyMetric::induced_standard(carrier.clone()), FuzzyMetric::induced_exponential(carrier.clone())] {
            let r = check_fm_axioms(&fm, &op, 1000, &grid, 42);
            ensure(r.passed(), format!("{}: {:?}", r.subject, r.violations.first()))?;
            checks += r.checks;
        }
    }

    let finite = CarrierSpace::finite(vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]).unwrap();
    let n = grid.len();
    let mut values = vec![vec![vec![0.5; n]; 3]; 3];
    for (i, row) in values.iter_mut().enumerate() {
        row[i] = vec![1.0; n];
    }
    values[0][0] = vec![0.9; n];
    let broken = FuzzyMetric::table(finite, NearnessTable { grid: grid.clone(), values }).unwrap();
    let r = check_fm_axioms(&broken, &TNorm::Minimum, 1000, &grid, 42);
    ensure(r.violations.len() == 1, format!("{} violations on the broken table", r.violations.len()))?;
    ensure(r.violations[0].axiom == Axiom::Identity, format!("found {}", r.violations[0].axiom))?;
    Ok(format!(
        "0 violations in {checks} fuzzy metric checks (2 forms x 3 t-norms); broken table: exactly 1, {}",
        r.violations[0].axiom
    ))
}

fn vacuity_demonstration() -> Outcome {
    let xs: Vec<Point> = (0..9).map(|i| Point::scalar(0.4 * i as f64)).collect();
    let fm = real_line();
    let mut ks = Vec::new();
    let mut provenance = Vec::new();
    for t_max in [1e2, 1e3, 1e4] {
        let grid = TGrid::with_t_max(t_max).unwrap();
        let rep = estimate_k_thm1(&closed_form_pair(), &fm, &fm, &SampleSet::new(xs.clone(), xs.clone(), grid.clone()))
            .map_err(|e| e.to_string())?;
        ensure(rep.grid == grid.values(), "report does not carry its grid")?;
        provenance.push(format!("{} pts in [{}, {}]", rep.grid.len(), rep.grid[0], rep.grid[rep.grid.len() - 1]));
        ks.push(rep.k_hat);
    }
    ensure(ks.windows(2).all(|w| w[1] >= w[0]), format!("k_hat not nondecreasing: {ks:?}"))?;
    ensure(ks[2] > 0.99, format!("k_hat at t_max = 1e4 is {}", ks[2]))?;
    Ok(format!(
        "k_hat = {:.10} / {:.10} / {:.10} on grids {} (log lattice, 4 per decade from 1e-2)",
        ks[0],
        ks[1],
        ks[2],
        provenance.join(", ")
    ))
}

fn recurrence_validation() -> Outcome {
    let fm = real_line();
    let pair = closed_form_pair();
    let grid = TGrid::default();
    let r = iterate_pair(&pair, &fm, &fm, &Point::scalar(0.0), &SolveConfig::default()).map_err(|e| e.to_string())?;
    let samples = SampleSet::new(r.trace_x.points().to_vec(), r.trace_y.points().to_vec(), grid.clone()).include_diagonal();
    let kx = estimate_k_thm1(&pair, &fm, &fm, &samples).map_err(|e| e.to_string())?.k_hat;
    let ky = estimate_k_thm1_dual(&pair, &fm, &fm, &samples).map_err(|e| e.to_string())?.k_hat;
    let k = kx.max(ky);
    let clean = check_recurrence_thm1(&r.trace_x, &r.trace_y, &fm, &fm, k, &grid).map_err(|e| e.to_string())?;
    ensure(clean.clean(), format!("{} violations at k = k_hat", clean.violations))?;
    let half = check_recurrence_thm1(&r.trace_x, &r.trace_y, &fm, &fm, k / 2.0, &grid).map_err(|e| e.to_string())?;
    let again = check_recurrence_thm1(&r.trace_x, &r.trace_y, &fm, &fm, k / 2.0, &grid).map_err(|e| e.to_string())?;
    ensure(half.violations >= 1, "no violation at k_hat / 2")?;
    let w = half.first_violation.clone().ok_or("violation without witness")?;
    ensure(again.first_violation.as_ref() == Some(&w), "witness not reproducible")?;
    Ok(format!(
        "k_hat = {k:.12}: 0 of {} steps violate; k_hat/2: {} violations, first at n = {}, t = {}",
        clean.evaluated, half.violations, w.n, w.t
    ))
}

fn determinism() -> Outcome {
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/suite.json");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for run in ["first", "second"] {
        let out = dir.path().join(run);
        let code = fuzzy_fixpoint::cli::main_with_args([
            "fuzzyfix".as_ref(),
            "suite".as_ref(),
            "--config".as_ref(),
            config.as_os_str(),
            "--seed".as_ref(),
            "7".as_ref(),
            "--out".as_ref(),
            out.as_os_str(),
        ]);
        ensure(code == 0, format!("{run} run exited with {code}"))?;
        let json = std::fs::read(out.join("verdict.json")).map_err(|e| e.to_string())?;
        let csv = std::fs::read(out.join("verdict.csv")).map_err(|e| e.to_string())?;
        files.push((json, csv));
    }
    ensure(files[0] == files[1], "verdict files differ")?;
    Ok(format!("verdict.json ({} bytes) and verdict.csv identical across two runs", files[0].0.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("closed-form regression", closed_form_regression),
        ("suite soundness", suite_soundness),
        ("negative controls", negative_controls),
        ("axiom suites", axiom_suites),
        ("vacuity demonstration", vacuity_demonstration),
        ("recurrence validation", recurrence_validation),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
