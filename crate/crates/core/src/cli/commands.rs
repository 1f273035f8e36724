use serde::Serialize;

use super::config::{RunConfig, Spaces};
use super::output::{write_trace_csv, Header, OutDir};
use super::{CommonArgs, Outcome};
use crate::defaults;
use crate::error::{Error, Result};
use crate::fuzzy::{check_fm_axioms, check_tnorm_axioms, AxiomReport, Point};
use crate::harness::{run_suite, spread, InstanceRow, SuiteVerdict};
use crate::hypotheses::{
    estimate_k_cor3, estimate_k_thm1, estimate_k_thm1_dual, estimate_k_thm2, HypothesisReport, SampleSet,
};
use crate::maps::Problem;
use crate::rng::DetRng;
use crate::solver::{solve, uniqueness_probe, FixedPointResult, SolveConfig, SolveStatus, UniquenessReport};

fn seed_of(args: &CommonArgs, cfg: &RunConfig) -> u64 {
    args.seed.or(cfg.seed).unwrap_or(defaults::AXIOM_SEED)
}

fn fmt(v: f64) -> String {
    v.to_string()
}

#[derive(Serialize)]
struct AxiomsFile<'a> {
    header: Header,
    passed: bool,
    tnorms: &'a [AxiomReport],
    metrics: &'a [AxiomReport],
}

pub fn cmd_axioms(args: &CommonArgs) -> Result<Outcome> {
    let cfg = RunConfig::load(&args.config)?;
    let seed = seed_of(args, &cfg);
    let grid = cfg.grid(args.t_max)?;
    let Spaces { mu, nu } = cfg.spaces()?;
    let solve_cfg = cfg.solve.build(grid.clone())?;

    let tnorms: Vec<AxiomReport> = cfg
        .axioms
        .tnorms
        .iter()
        .map(|op| check_tnorm_axioms(op, cfg.axioms.samples, seed))
        .collect();
    let mut metrics = vec![check_fm_axioms(&mu, &cfg.tnorm, cfg.axioms.samples, &grid, seed)];
    if nu != mu {
        metrics.push(check_fm_axioms(&nu, &cfg.tnorm, cfg.axioms.samples, &grid, seed));
    }
    let passed = tnorms.iter().chain(&metrics).all(AxiomReport::passed);

    let out = OutDir::create(&args.out)?;
    if args.format.json() {
        let header = Header::new("axioms", seed, &grid, &solve_cfg).with_metrics(&mu, &nu);
        out.json("axioms.json", &AxiomsFile { header, passed, tnorms: &tnorms, metrics: &metrics })?;
    }
    if args.format.csv() {
        let header: Vec<String> = ["subject", "axiom", "magnitude", "points", "params"].map(String::from).to_vec();
        let mut rows = Vec::new();
        for r in tnorms.iter().chain(&metrics) {
            for v in &r.violations {
                let points: Vec<String> = v.witness.points.iter().map(Point::to_string).collect();
                let params: Vec<String> = v.witness.params.iter().map(|p| fmt(*p)).collect();
                rows.push(vec![
                    r.subject.clone(),
                    v.axiom.to_string(),
                    fmt(v.magnitude),
                    points.join(" "),
                    params.join(" "),
                ]);
            }
        }
        out.csv("axiom_violations.csv", &header, &rows)?;
    }

    for r in tnorms.iter().chain(&metrics) {
        let verdict = if r.passed() { "ok" } else { "VIOLATED" };
        println!("{:<40} {:>6} checks  {:>4} violations  {verdict}", r.subject, r.checks, r.violations.len());
        if let Some(v) = r.violations.first() {
            println!("    first: {} at {:?}", v.axiom, v.witness);
        }
    }
    Ok(Outcome::from_bool(passed))
}

#[derive(Serialize)]
struct Entry {
    inequality: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<HypothesisReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct HypothesesFile<'a> {
    header: Header,
    k_hat: Option<f64>,
    holds: bool,
    sample_x: &'a [Point],
    sample_y: &'a [Point],
    reports: &'a [Entry],
}

fn start_point(cfg: &RunConfig, spaces: &Spaces, rng: &mut DetRng) -> Point {
    cfg.solve.x0.clone().unwrap_or_else(|| spaces.mu.carrier().sample(rng))
}

pub fn cmd_hypotheses(args: &CommonArgs) -> Result<Outcome> {
    let cfg = RunConfig::load(&args.config)?;
    let seed = seed_of(args, &cfg);
    let grid = cfg.grid(args.t_max)?;
    let spaces = cfg.spaces()?;
    let problem = cfg.problem()?;
    let solve_cfg = cfg.solve.build(grid.clone())?;
    let h = &cfg.hypotheses;
    let mut rng = DetRng::new(seed);

    let (points_x, points_y) = match (&h.samples_x, &h.samples_y) {
        (Some(x), Some(y)) => (x.clone(), y.clone()),
        (Some(x), None) if spaces.mu.carrier() == spaces.nu.carrier() => (x.clone(), x.clone()),
        (Some(_), None) => {
            return Err(Error::Config("`hypotheses.samples_y` is required when X and Y differ".into()))
        }
        (None, Some(_)) => return Err(Error::Config("`hypotheses.samples_y` needs `samples_x`".into())),
        (None, None) => {
            let x0 = start_point(&cfg, &spaces, &mut rng);
            let run = solve(problem, &spaces.mu, &spaces.nu, &x0, &solve_cfg)?;
            let mut px = spread(run.trace_x.points(), h.sample_trajectory);
            let mut py = spread(run.trace_y.points(), h.sample_trajectory);
            for _ in 0..h.sample_random {
                px.push(spaces.mu.carrier().sample(&mut rng));
                py.push(spaces.nu.carrier().sample(&mut rng));
            }
            (px, py)
        }
    };
    for p in &points_x {
        spaces.mu.carrier().check(p)?;
    }
    for p in &points_y {
        spaces.nu.carrier().check(p)?;
    }
    let mut samples = SampleSet::new(points_x.clone(), points_y.clone(), grid.clone());
    if h.include_diagonal || args.include_diagonal {
        samples = samples.include_diagonal();
    }
    if h.record_table {
        samples = samples.with_table();
    }

    let results: Vec<(String, Result<HypothesisReport>)> = match problem {
        Problem::Pair(p) => vec![
            ("pair/X".into(), estimate_k_thm1(p, &spaces.mu, &spaces.nu, &samples)),
            ("pair/Y".into(), estimate_k_thm1_dual(p, &spaces.mu, &spaces.nu, &samples)),
        ],
        Problem::Quadruple(q) if h.self_maps => {
            if spaces.mu != spaces.nu {
                return Err(Error::Config("`self_maps` needs X = Y with the same fuzzy metric".into()));
            }
            let (a, b) = estimate_k_cor3(q, &spaces.mu, &samples);
            vec![("self-quadruple/SA,TB".into(), a), ("self-quadruple/BS,AT".into(), b)]
        }
        Problem::Quadruple(q) => {
            let (a, b) = estimate_k_thm2(q, &spaces.mu, &spaces.nu, &samples);
            vec![("quadruple/X".into(), a), ("quadruple/Y".into(), b)]
        }
    };
    let mut entries = Vec::new();
    for (name, r) in results {
        match r {
            Ok(rep) => entries.push(Entry { inequality: rep.inequality.clone(), report: Some(rep), error: None }),
            Err(e @ Error::EmptySample { .. }) => entries.push(Entry { inequality: name, report: None, error: Some(e.to_string()) }),
            Err(e) => return Err(e),
        }
    }
    let k_hat = entries
        .iter()
        .filter_map(|e| e.report.as_ref().map(|r| r.k_hat))
        .fold(None, |acc: Option<f64>, k| Some(acc.map_or(k, |a| a.max(k))));
    let holds = entries.iter().all(|e| e.report.as_ref().is_some_and(HypothesisReport::holds));

    let out = OutDir::create(&args.out)?;
    if args.format.json() {
        let header = Header::new("hypotheses", seed, &grid, &solve_cfg).with_metrics(&spaces.mu, &spaces.nu);
        out.json(
            "hypotheses.json",
            &HypothesesFile { header, k_hat, holds, sample_x: &points_x, sample_y: &points_y, reports: &entries },
        )?;
    }
    if args.format.csv() {
        let header: Vec<String> = [
            "inequality", "k_hat", "evaluated", "skipped", "exclude_diagonal", "witness_t", "witness_lhs", "witness_rhs",
        ]
        .map(String::from)
        .to_vec();
        let rows: Vec<Vec<String>> = entries
            .iter()
            .map(|e| match &e.report {
                Some(r) => {
                    let (wt, wl, wr) = r
                        .witness
                        .as_ref()
                        .map_or((String::new(), String::new(), String::new()), |w| (fmt(w.tuple.t), fmt(w.lhs), fmt(w.rhs)));
                    vec![
                        e.inequality.clone(),
                        fmt(r.k_hat),
                        r.evaluated_count.to_string(),
                        r.skipped_count.to_string(),
                        r.exclude_diagonal.to_string(),
                        wt,
                        wl,
                        wr,
                    ]
                }
                None => vec![e.inequality.clone(), String::new(), "0".into(), String::new(), String::new(), String::new(), String::new(), String::new()],
            })
            .collect();
        out.csv("hypotheses.csv", &header, &rows)?;
    }

    for e in &entries {
        match &e.report {
            Some(r) => println!(
                "{:<45} k_hat = {:.9}  evaluated {}  skipped {}",
                e.inequality, r.k_hat, r.evaluated_count, r.skipped_count
            ),
            None => println!("{:<45} {}", e.inequality, e.error.as_deref().unwrap_or("")),
        }
    }
    println!("grid: {} points in [{}, {}]", grid.len(), grid.t_min(), grid.t_max());
    Ok(Outcome::from_bool(holds))
}

#[derive(Serialize)]
struct SolveFile<'a> {
    header: Header,
    x0: &'a Point,
    status: SolveStatus,
    iterations: usize,
    z: &'a Point,
    w: &'a Point,
    conclusions: &'a crate::solver::ConclusionCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: &'a Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    uniqueness: Option<&'a UniquenessReport>,
}

pub fn cmd_solve(args: &CommonArgs) -> Result<Outcome> {
    let cfg = RunConfig::load(&args.config)?;
    let seed = seed_of(args, &cfg);
    let grid = cfg.grid(args.t_max)?;
    let spaces = cfg.spaces()?;
    let problem = cfg.problem()?;
    let solve_cfg: SolveConfig = cfg.solve.build(grid.clone())?;
    let mut rng = DetRng::new(seed);
    let x0 = start_point(&cfg, &spaces, &mut rng);

    let result: FixedPointResult = solve(problem, &spaces.mu, &spaces.nu, &x0, &solve_cfg)?;
    let probe = match &cfg.solve.uniqueness_starts {
        Some(starts) => Some(uniqueness_probe(problem, &spaces.mu, &spaces.nu, starts, &solve_cfg)?),
        None => None,
    };
    let passed = result.status == SolveStatus::Converged
        && result.conclusions.passed
        && probe.as_ref().is_none_or(UniquenessReport::passed);

    let out = OutDir::create(&args.out)?;
    if args.format.json() {
        let header = Header::new("solve", seed, &grid, &solve_cfg).with_metrics(&spaces.mu, &spaces.nu);
        out.json(
            "solve.json",
            &SolveFile {
                header,
                x0: &x0,
                status: result.status,
                iterations: result.iterations,
                z: &result.z,
                w: &result.w,
                conclusions: &result.conclusions,
                note: &result.note,
                uniqueness: probe.as_ref(),
            },
        )?;
    }
    if args.format.csv() {
        let path = out.path("trace.csv");
        let file = std::fs::File::create(&path).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?;
        write_trace_csv(&result, &spaces.mu, &spaces.nu, &grid, std::io::BufWriter::new(file))?;
    }

    println!("status: {:?} after {} iterations", result.status, result.iterations);
    println!("z = {}", result.z);
    println!("w = {}", result.w);
    for r in &result.conclusions.residuals {
        println!("  {:<8} min_t = {:.12}  {}", r.name, r.value, if r.passed { "ok" } else { "FAILED" });
    }
    if let Some(note) = &result.note {
        println!("note: {note}");
    }
    if let Some(p) = &probe {
        println!("uniqueness: {:?} (spread {:e}, tolerance {:e})", p.verdict, p.max_z_distance.max(p.max_w_distance), p.tolerance);
    }
    Ok(Outcome::from_bool(passed))
}

#[derive(Serialize)]
struct VerdictFile<'a> {
    header: Header,
    passed: bool,
    verdict: &'a SuiteVerdict,
}

pub fn cmd_suite(args: &CommonArgs) -> Result<Outcome> {
    let cfg = RunConfig::load(&args.config)?;
    let seed = args.seed.unwrap_or(cfg.suite.seed);
    let specs = cfg.suite.specs(seed, args.t_max);
    let solve_cfg = cfg.solve.build(cfg.grid(args.t_max)?)?;
    let suite_cfg = cfg.suite.config(solve_cfg.clone());
    let verdict = run_suite(&specs, &suite_cfg)?;
    let passed = verdict.passed();

    let out = OutDir::create(&args.out)?;
    if args.format.json() {
        let header = Header::new("suite", seed, &solve_cfg.grid, &solve_cfg);
        out.json("verdict.json", &VerdictFile { header, passed, verdict: &verdict })?;
    }
    if args.format.csv() {
        let header: Vec<String> = [
            "index", "seed", "scheme", "expected", "status", "iterations", "k_hat", "k_hat_monotone",
            "conclusions_passed", "min_residual", "uniqueness", "passed",
        ]
        .map(String::from)
        .to_vec();
        let rows: Vec<Vec<String>> = verdict.rows.iter().map(csv_row).collect();
        out.csv("verdict.csv", &header, &rows)?;
    }

    let a = &verdict.aggregate;
    println!(
        "{} instances: {} passed, {} converged, {} diverging, {} at max_iter, {} errors",
        a.instances, a.passed, a.converged, a.diverging, a.max_iter, a.errors
    );
    println!(
        "conclusions verified {}, unique {}, k_hat < 1 on {}, k_hat nondecreasing in t_max on {}",
        a.conclusions_passed, a.uniqueness_passed, a.k_hat_below_one, a.k_hat_monotone
    );
    for r in verdict.rows.iter().filter(|r| !r.passed) {
        println!("  failed: #{} seed {} {:?} {:?} {}", r.index, r.seed, r.scheme, r.status, r.error.as_deref().unwrap_or(""));
    }
    Ok(Outcome::from_bool(passed))
}

fn csv_row(r: &InstanceRow) -> Vec<String> {
    vec![
        r.index.to_string(),
        r.seed.to_string(),
        serde_name(&r.scheme),
        serde_name(&r.expected),
        serde_name(&r.status),
        r.iterations.to_string(),
        r.k_hat.map(fmt).unwrap_or_default(),
        r.k_hat_monotone.to_string(),
        r.conclusions_passed.to_string(),
        fmt(r.min_residual),
        serde_name(&r.uniqueness),
        r.passed.to_string(),
    ]
}

/// Serialized name of a unit enum value, without the JSON quotes.
fn serde_name<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_default().trim_matches('"').to_string()
}
