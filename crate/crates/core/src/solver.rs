//! Constructive iteration for related fixed points (pair scheme) and common
//! fixed points (interleaved quadruple scheme), with verification of the
//! fixed-point identities and a multi-start uniqueness probe.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};
use crate::fuzzy::{is_cauchy, FuzzyMetric, Point, SequenceTrace, TGrid};
use crate::maps::{MapPair, MapQuadruple, Problem};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    /// Nearness tolerance: a step has settled when μ ≥ 1 − eps at every grid t.
    pub eps: f64,
    pub max_iter: usize,
    pub grid: TGrid,
    /// Consecutive strictly decreasing step nearness values (at the smallest
    /// grid t) after which the run is declared diverging.
    pub stall_window: usize,
    /// Depth of the Cauchy probe run on the tail before stopping.
    pub p_max: usize,
    /// Conclusion residuals must be ≥ 1 − verify_tol.
    pub verify_tol: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            eps: defaults::EPS,
            max_iter: defaults::MAX_ITER,
            grid: TGrid::default(),
            stall_window: defaults::STALL_WINDOW,
            p_max: defaults::P_MAX,
            verify_tol: defaults::VERIFY_TOL,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::Config(format!("eps = {} must lie in (0, 1)", self.eps)));
        }
        if self.max_iter < 1 {
            return Err(Error::Config("max_iter must be ≥ 1".into()));
        }
        if self.stall_window < 2 {
            return Err(Error::Config("stall_window must be ≥ 2".into()));
        }
        if self.p_max < 1 {
            return Err(Error::Config("p_max must be ≥ 1".into()));
        }
        if !(self.verify_tol > 0.0 && self.verify_tol < 1.0) {
            return Err(Error::Config(format!("verify_tol = {} must lie in (0, 1)", self.verify_tol)));
        }
        Ok(())
    }

    /// Crisp distance below which two limits from different starts are
    /// considered the same point: 10³ × the distance a settled step may
    /// still span at the smallest grid t, t_min·eps / (1 − eps).
    pub fn uniqueness_tolerance(&self) -> f64 {
        1e3 * self.grid.t_min() * self.eps / (1.0 - self.eps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    MaxIter,
    Diverging,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    /// The identity being checked, e.g. `"STz = z"`.
    pub name: String,
    /// min over the grid of the nearness of both sides.
    pub value: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConclusionCheck {
    pub tol: f64,
    pub residuals: Vec<Residual>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ConclusionCheck {
    fn from_residuals(residuals: Vec<(&str, f64)>, tol: f64) -> Self {
        let residuals: Vec<Residual> = residuals
            .into_iter()
            .map(|(name, value)| Residual {
                name: name.to_string(),
                value,
                passed: value >= 1.0 - tol,
            })
            .collect();
        let passed = residuals.iter().all(|r| r.passed);
        Self { tol, residuals, passed, error: None }
    }

    fn failed(tol: f64, err: Error) -> Self {
        Self {
            tol,
            residuals: vec![],
            passed: false,
            error: Some(err.to_string()),
        }
    }

    pub fn min_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.value).fold(1.0, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointResult {
    pub z: Point,
    pub w: Point,
    pub status: SolveStatus,
    pub iterations: usize,
    /// x_0, x_1, …
    pub trace_x: SequenceTrace,
    /// y_1, y_2, … (y_{n} is the image of x_{n−1})
    pub trace_y: SequenceTrace,
    pub conclusions: ConclusionCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One iteration `n`: x_{n−1} ↦ (y_n, x_n).
type StepFn<'a> = Box<dyn Fn(usize, &Point) -> Result<(Point, Point)> + 'a>;

/// Settings of the shared iteration loop that differ by scheme.
struct Scheme<'a> {
    /// Steps of each sequence that must have settled before stopping.
    settled_steps: usize,
    step: StepFn<'a>,
}

struct Outcome {
    xs: Vec<Point>,
    ys: Vec<Point>,
    status: SolveStatus,
    iterations: usize,
    note: Option<String>,
}

fn settled(fm: &FuzzyMetric, pts: &[Point], steps: usize, grid: &TGrid, eps: f64) -> Result<bool> {
    if pts.len() < steps + 1 {
        return Ok(false);
    }
    for w in pts[pts.len() - steps - 1..].windows(2) {
        for t in grid.iter() {
            if fm.eval(&w[0], &w[1], t)? < 1.0 - eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn tail_is_cauchy(fm: &FuzzyMetric, pts: &[Point], cfg: &SolveConfig) -> Result<bool> {
    let p = cfg.p_max.min(pts.len().saturating_sub(1));
    if p == 0 {
        return Ok(false);
    }
    let window = pts[pts.len() - p - 1..].to_vec();
    let trace = SequenceTrace::build(window, fm, &cfg.grid)?;
    is_cauchy(&trace, fm, &cfg.grid, cfg.eps, p)
}

fn run(scheme: Scheme<'_>, mu: &FuzzyMetric, nu: &FuzzyMetric, x0: &Point, cfg: &SolveConfig) -> Result<Outcome> {
    cfg.validate()?;
    mu.carrier().check(x0)?;
    let t_min = cfg.grid.t_min();
    let mut xs = vec![x0.clone()];
    let mut ys: Vec<Point> = Vec::new();
    let mut prev_near: Option<f64> = None;
    let mut decreasing = 0usize;

    for n in 1..=cfg.max_iter {
        let (y, x) = match (scheme.step)(n, &xs[n - 1]) {
            Ok(v) => v,
            Err(e @ Error::Codomain { .. }) => {
                return Ok(Outcome { xs, ys, status: SolveStatus::Diverging, iterations: n - 1, note: Some(e.to_string()) });
            }
            Err(e) => return Err(e),
        };
        ys.push(y);
        xs.push(x);

        let near = mu.eval(&xs[n - 1], &xs[n], t_min)?;
        decreasing = match prev_near {
            Some(p) if near < p => decreasing + 1,
            _ => 0,
        };
        prev_near = Some(near);
        if decreasing >= cfg.stall_window {
            return Ok(Outcome {
                xs,
                ys,
                status: SolveStatus::Diverging,
                iterations: n,
                note: Some(format!(
                    "step nearness at t = {t_min} decreased strictly for {decreasing} consecutive steps"
                )),
            });
        }

        let steps = scheme.settled_steps;
        if settled(mu, &xs, steps, &cfg.grid, cfg.eps)?
            && settled(nu, &ys, steps, &cfg.grid, cfg.eps)?
            && tail_is_cauchy(mu, &xs[1..], cfg)?
            && tail_is_cauchy(nu, &ys, cfg)?
        {
            return Ok(Outcome { xs, ys, status: SolveStatus::Converged, iterations: n, note: None });
        }
    }
    let iterations = cfg.max_iter;
    Ok(Outcome { xs, ys, status: SolveStatus::MaxIter, iterations, note: None })
}

/// Pair scheme: x_n = ST x_{n−1}, y_n = T x_{n−1}. On return z is the last
/// x iterate and w = Tz.
pub fn iterate_pair(
    pair: &MapPair,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    x0: &Point,
    cfg: &SolveConfig,
) -> Result<FixedPointResult> {
    let scheme = Scheme {
        settled_steps: 1,
        step: Box::new(|_, x| {
            let y = pair.apply_t(x, nu)?;
            let x = pair.apply_s(&y, mu)?;
            Ok((y, x))
        }),
    };
    let out = run(scheme, mu, nu, x0, cfg)?;
    let z = out.xs.last().expect("trace holds x0").clone();
    let w = match pair.apply_t(&z, nu) {
        Ok(w) => w,
        Err(_) => out.ys.last().cloned().unwrap_or_else(|| z.clone()),
    };
    let conclusions = verify_conclusions_pair(pair, mu, nu, &z, &w, &cfg.grid, cfg.verify_tol)
        .unwrap_or_else(|e| ConclusionCheck::failed(cfg.verify_tol, e));
    finish(out, z, w, conclusions, mu, nu, cfg)
}

/// Interleaved scheme: y_{2n−1} = A x_{2n−2}, x_{2n−1} = S y_{2n−1},
/// y_{2n} = B x_{2n−1}, x_{2n} = T y_{2n}. z and w are the last iterates.
pub fn iterate_quadruple(
    quad: &MapQuadruple,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    x0: &Point,
    cfg: &SolveConfig,
) -> Result<FixedPointResult> {
    let scheme = Scheme {
        settled_steps: 2,
        step: Box::new(|n, x| {
            if n % 2 == 1 {
                let y = quad.apply_a(x, nu)?;
                Ok((y.clone(), quad.apply_s(&y, mu)?))
            } else {
                let y = quad.apply_b(x, nu)?;
                Ok((y.clone(), quad.apply_t(&y, mu)?))
            }
        }),
    };
    let out = run(scheme, mu, nu, x0, cfg)?;
    let z = out.xs.last().expect("trace holds x0").clone();
    let w = out.ys.last().cloned().unwrap_or_else(|| z.clone());
    let conclusions = verify_conclusions_quadruple(quad, mu, nu, &z, &w, &cfg.grid, cfg.verify_tol)
        .unwrap_or_else(|e| ConclusionCheck::failed(cfg.verify_tol, e));
    finish(out, z, w, conclusions, mu, nu, cfg)
}

fn finish(
    out: Outcome,
    z: Point,
    w: Point,
    conclusions: ConclusionCheck,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    cfg: &SolveConfig,
) -> Result<FixedPointResult> {
    Ok(FixedPointResult {
        z,
        w,
        status: out.status,
        iterations: out.iterations,
        trace_x: SequenceTrace::build(out.xs, mu, &cfg.grid)?,
        trace_y: SequenceTrace::build(out.ys, nu, &cfg.grid)?,
        conclusions,
        note: out.note,
    })
}

/// Solves either problem shape.
pub fn solve(problem: &Problem, mu: &FuzzyMetric, nu: &FuzzyMetric, x0: &Point, cfg: &SolveConfig) -> Result<FixedPointResult> {
    match problem {
        Problem::Pair(p) => iterate_pair(p, mu, nu, x0, cfg),
        Problem::Quadruple(q) => iterate_quadruple(q, mu, nu, x0, cfg),
    }
}

/// Residuals of STz = z, TSw = w, Tz = w and Sw = z.
pub fn verify_conclusions_pair(
    pair: &MapPair,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    z: &Point,
    w: &Point,
    grid: &TGrid,
    tol: f64,
) -> Result<ConclusionCheck> {
    let tz = pair.apply_t(z, nu)?;
    let sw = pair.apply_s(w, mu)?;
    let stz = pair.apply_s(&tz, mu)?;
    let tsw = pair.apply_t(&sw, nu)?;
    Ok(ConclusionCheck::from_residuals(
        vec![
            ("STz = z", mu.min_over_grid(&stz, z, grid)?),
            ("TSw = w", nu.min_over_grid(&tsw, w, grid)?),
            ("Tz = w", nu.min_over_grid(&tz, w, grid)?),
            ("Sw = z", mu.min_over_grid(&sw, z, grid)?),
        ],
        tol,
    ))
}

/// Residuals of SAz = z, TBz = z, BSw = w, ATw = w, Az = w, Bz = w, Sw = z
/// and Tw = z.
pub fn verify_conclusions_quadruple(
    quad: &MapQuadruple,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    z: &Point,
    w: &Point,
    grid: &TGrid,
    tol: f64,
) -> Result<ConclusionCheck> {
    let az = quad.apply_a(z, nu)?;
    let bz = quad.apply_b(z, nu)?;
    let sw = quad.apply_s(w, mu)?;
    let tw = quad.apply_t(w, mu)?;
    let saz = quad.apply_s(&az, mu)?;
    let tbz = quad.apply_t(&bz, mu)?;
    let bsw = quad.apply_b(&sw, nu)?;
    let atw = quad.apply_a(&tw, nu)?;
    Ok(ConclusionCheck::from_residuals(
        vec![
            ("SAz = z", mu.min_over_grid(&saz, z, grid)?),
            ("TBz = z", mu.min_over_grid(&tbz, z, grid)?),
            ("BSw = w", nu.min_over_grid(&bsw, w, grid)?),
            ("ATw = w", nu.min_over_grid(&atw, w, grid)?),
            ("Az = w", nu.min_over_grid(&az, w, grid)?),
            ("Bz = w", nu.min_over_grid(&bz, w, grid)?),
            ("Sw = z", mu.min_over_grid(&sw, z, grid)?),
            ("Tw = z", mu.min_over_grid(&tw, z, grid)?),
        ],
        tol,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UniquenessVerdict {
    Unique,
    NotUnique,
    /// Some run did not converge.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRun {
    pub start: Point,
    pub status: SolveStatus,
    pub iterations: usize,
    pub z: Point,
    pub w: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub runs: Vec<ProbeRun>,
    pub max_z_distance: f64,
    pub max_w_distance: f64,
    pub tolerance: f64,
    pub verdict: UniquenessVerdict,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.verdict == UniquenessVerdict::Unique
    }
}

/// Solves from every start (concurrently; results keep start order) and
/// compares the limits pairwise in the crisp metric.
pub fn uniqueness_probe(
    problem: &Problem,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    starts: &[Point],
    cfg: &SolveConfig,
) -> Result<UniquenessReport> {
    if starts.len() < 2 {
        return Err(Error::Usage("a uniqueness probe needs at least 2 starts".into()));
    }
    let results = starts
        .par_iter()
        .map(|s| solve(problem, mu, nu, s, cfg))
        .collect::<Result<Vec<_>>>()?;
    let runs: Vec<ProbeRun> = starts
        .iter()
        .zip(&results)
        .map(|(s, r)| ProbeRun {
            start: s.clone(),
            status: r.status,
            iterations: r.iterations,
            z: r.z.clone(),
            w: r.w.clone(),
        })
        .collect();
    let tolerance = cfg.uniqueness_tolerance();
    let all_converged = runs.iter().all(|r| r.status == SolveStatus::Converged);
    let (mut dz, mut dw) = (0.0f64, 0.0f64);
    if all_converged {
        for i in 0..runs.len() {
            for j in i + 1..runs.len() {
                dz = dz.max(mu.distance(&runs[i].z, &runs[j].z)?);
                dw = dw.max(nu.distance(&runs[i].w, &runs[j].w)?);
            }
        }
    } else {
        dz = f64::NAN;
        dw = f64::NAN;
    }
    let verdict = if !all_converged {
        UniquenessVerdict::Inconclusive
    } else if dz <= tolerance && dw <= tolerance {
        UniquenessVerdict::Unique
    } else {
        UniquenessVerdict::NotUnique
    };
    Ok(UniquenessReport { runs, max_z_distance: dz, max_w_distance: dw, tolerance, verdict })
}
