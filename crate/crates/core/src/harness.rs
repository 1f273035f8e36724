//! Seeded random problem instances and the end-to-end property suite.
//!
//! Every instance is built around a planted anchor pair (z, w): affine maps
//! have the form `x ↦ M(x − z) + w` (X → Y) or `y ↦ M(y − w) + z` (Y → X),
//! so z and w are the expected related / common fixed points whenever the
//! maps contract.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};
use crate::fuzzy::{check_fm_axioms, CarrierSpace, CrispMetric, FuzzyMetric, Point, TGrid, TNorm};
use crate::hypotheses::{estimate_k_cor3, estimate_k_thm1, estimate_k_thm1_dual, estimate_k_thm2, HypothesisReport, SampleSet};
use crate::maps::{operator_norm, MapPair, MapQuadruple, Mapping, Problem};
use crate::rng::{generator_info, DetRng, GeneratorInfo};
use crate::solver::{solve, uniqueness_probe, FixedPointResult, SolveConfig, SolveStatus, UniquenessVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceScheme {
    Pair,
    Quadruple,
    /// Four self-maps of one space with μ = ν.
    SelfQuadruple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapFamily {
    #[default]
    Affine,
    Constant,
    /// Each map is independently affine or constant.
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InducedForm {
    #[default]
    Standard,
    Exponential,
}

impl InducedForm {
    pub fn build(self, carrier: CarrierSpace) -> FuzzyMetric {
        match self {
            InducedForm::Standard => FuzzyMetric::induced_standard(carrier),
            InducedForm::Exponential => FuzzyMetric::induced_exponential(carrier),
        }
    }
}

fn default_dim() -> usize {
    2
}

fn default_factor() -> [f64; 2] {
    defaults::SUITE_FACTOR
}

fn default_t_max() -> f64 {
    defaults::GRID_T_MAX
}

fn default_tnorm() -> TNorm {
    TNorm::Minimum
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub scheme: InstanceScheme,
    #[serde(default = "default_dim")]
    pub dim_x: usize,
    /// Ignored by `self_quadruple`, which lives in a single space.
    #[serde(default = "default_dim")]
    pub dim_y: usize,
    #[serde(default)]
    pub family: MapFamily,
    /// Range of the per-map operator norms.
    #[serde(default = "default_factor")]
    pub factor: [f64; 2],
    #[serde(default)]
    pub metric: InducedForm,
    /// t-norm of the axiom spot-check.
    #[serde(default = "default_tnorm")]
    pub tnorm: TNorm,
    /// The grid is the default lattice extended or truncated to this value.
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    pub seed: u64,
    /// Diagnostic override: draw expanding maps c·Q (Q orthogonal) with
    /// c in `factor`, which must then lie in (1, ∞).
    #[serde(default)]
    pub expansive: bool,
}

impl InstanceSpec {
    pub fn pair(seed: u64) -> Self {
        Self {
            scheme: InstanceScheme::Pair,
            dim_x: 2,
            dim_y: 2,
            family: MapFamily::Affine,
            factor: defaults::SUITE_FACTOR,
            metric: InducedForm::Standard,
            tnorm: TNorm::Minimum,
            t_max: defaults::GRID_T_MAX,
            seed,
            expansive: false,
        }
    }

    pub fn quadruple(seed: u64) -> Self {
        Self { scheme: InstanceScheme::Quadruple, ..Self::pair(seed) }
    }

    pub fn self_quadruple(seed: u64) -> Self {
        Self { scheme: InstanceScheme::SelfQuadruple, ..Self::pair(seed) }
    }

    /// Expanding pair on ℝ² with factors in [1.2, 1.8].
    pub fn expansive_pair(seed: u64) -> Self {
        Self { factor: [1.2, 1.8], expansive: true, ..Self::pair(seed) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim_x == 0 || (self.scheme != InstanceScheme::SelfQuadruple && self.dim_y == 0) {
            return Err(Error::Config("instance dimensions must be ≥ 1".into()));
        }
        let [lo, hi] = self.factor;
        if !(lo <= hi) || !hi.is_finite() {
            return Err(Error::Config(format!("factor range [{lo}, {hi}] is empty")));
        }
        if self.expansive {
            if !(lo > 1.0) {
                return Err(Error::Config(format!("expansive factor range [{lo}, {hi}] must lie above 1")));
            }
            if self.family != MapFamily::Affine {
                return Err(Error::Config("expansive instances need the affine family".into()));
            }
            if self.scheme != InstanceScheme::SelfQuadruple && self.dim_x != self.dim_y {
                return Err(Error::Config("expansive instances need dim_x = dim_y".into()));
            }
        } else if !(lo > 0.0 && hi < 1.0) {
            return Err(Error::Config(format!(
                "contractive factor range [{lo}, {hi}] must satisfy 0 < lo ≤ hi < 1"
            )));
        }
        self.grid()?;
        Ok(())
    }

    pub fn grid(&self) -> Result<TGrid> {
        if self.t_max == defaults::GRID_T_MAX {
            Ok(TGrid::default())
        } else {
            TGrid::with_t_max(self.t_max)
        }
    }

    fn dim_y_effective(&self) -> usize {
        match self.scheme {
            InstanceScheme::SelfQuadruple => self.dim_x,
            _ => self.dim_y,
        }
    }
}

/// A generated problem with its metrics and the planted fixed points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub problem: Problem,
    pub mu: FuzzyMetric,
    pub nu: FuzzyMetric,
    pub anchor_z: Point,
    pub anchor_w: Point,
    /// Operator norm of each map, in the order T, S (pair) or A, B, S, T.
    pub map_norms: Vec<f64>,
}

impl Instance {
    /// Upper bound on the Lipschitz constant of the composites that drive
    /// the iteration (ST, or SA and TB).
    pub fn composite_bound(&self) -> f64 {
        match self.map_norms.as_slice() {
            [t, s] => t * s,
            [a, b, s, t] => (s * a).max(t * b),
            _ => f64::NAN,
        }
    }
}

/// Builds the instance described by `spec`; the same spec always yields
/// bit-identical maps.
pub fn gen_instance(spec: &InstanceSpec) -> Result<Instance> {
    gen_with(spec, &mut DetRng::new(spec.seed))
}

fn gen_with(spec: &InstanceSpec, rng: &mut DetRng) -> Result<Instance> {
    spec.validate()?;
    let dx = spec.dim_x;
    let dy = spec.dim_y_effective();
    let cx = CarrierSpace::real(dx, CrispMetric::Euclidean)?;
    let cy = CarrierSpace::real(dy, CrispMetric::Euclidean)?;
    let anchor_z = cx.sample(rng);
    let anchor_w = cy.sample(rng);
    let mu = spec.metric.build(cx);
    let nu = spec.metric.build(cy);

    let mut norms = Vec::new();
    let mut draw = |rows: usize, cols: usize, from: &Point, to: &Point, rng: &mut DetRng| -> Result<Mapping> {
        let constant = match spec.family {
            MapFamily::Affine => false,
            MapFamily::Constant => true,
            MapFamily::Mixed => rng.unit() < 0.5,
        };
        if constant {
            norms.push(0.0);
            return Ok(Mapping::constant(to.clone()));
        }
        let c = rng.uniform(spec.factor[0], spec.factor[1]);
        let m = if spec.expansive {
            orthogonal(rows, rng).scale(c)
        } else {
            let g = DMatrix::from_fn(rows, cols, |_, _| rng.normal());
            let rows_vec = to_rows(&g);
            let n = operator_norm(&rows_vec, CrispMetric::Euclidean);
            if n == 0.0 {
                DMatrix::zeros(rows, cols)
            } else {
                g.scale(c / n)
            }
        };
        let matrix = to_rows(&m);
        norms.push(operator_norm(&matrix, CrispMetric::Euclidean));
        let from = DMatrix::from_column_slice(cols, 1, &from.export_coords());
        let to = DMatrix::from_column_slice(rows, 1, &to.export_coords());
        let offset = to - &m * from;
        Mapping::affine(matrix, offset.iter().copied().collect())
    };

    let problem = match spec.scheme {
        InstanceScheme::Pair => {
            let t = draw(dy, dx, &anchor_z, &anchor_w, rng)?;
            let s = draw(dx, dy, &anchor_w, &anchor_z, rng)?;
            Problem::Pair(MapPair::new(t, s)?)
        }
        InstanceScheme::Quadruple | InstanceScheme::SelfQuadruple => {
            let a = draw(dy, dx, &anchor_z, &anchor_w, rng)?;
            let b = draw(dy, dx, &anchor_z, &anchor_w, rng)?;
            let s = draw(dx, dy, &anchor_w, &anchor_z, rng)?;
            let t = draw(dx, dy, &anchor_w, &anchor_z, rng)?;
            Problem::Quadruple(MapQuadruple::new(a, b, s, t)?)
        }
    };
    Ok(Instance { spec: spec.clone(), problem, mu, nu, anchor_z, anchor_w, map_norms: norms })
}

fn to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn orthogonal(n: usize, rng: &mut DetRng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.normal());
    g.qr().q()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub solve: SolveConfig,
    pub sample_trajectory: usize,
    pub sample_random: usize,
    pub uniqueness_starts: usize,
    pub axiom_samples: usize,
    pub t_max_scales: Vec<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            solve: SolveConfig::default(),
            sample_trajectory: defaults::SAMPLE_TRAJECTORY,
            sample_random: defaults::SAMPLE_RANDOM,
            uniqueness_starts: defaults::UNIQUENESS_STARTS,
            axiom_samples: defaults::SUITE_AXIOM_SAMPLES,
            t_max_scales: defaults::T_MAX_SCALES.to_vec(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        self.solve.validate()?;
        if self.uniqueness_starts < 2 {
            return Err(Error::Config("uniqueness_starts must be ≥ 2".into()));
        }
        if self.sample_trajectory + self.sample_random < 2 {
            return Err(Error::Config("the hypothesis sample needs at least 2 points".into()));
        }
        if self.t_max_scales.iter().any(|&s| !(s > 1.0 && s.is_finite())) {
            return Err(Error::Config("t_max scales must be finite and > 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Converge,
    Diverge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KHatAtTMax {
    pub t_max: f64,
    pub grid_points: usize,
    /// Largest k̂ over the inequalities of the scheme; `None` when every
    /// sampled tuple was skipped.
    pub k_hat: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRow {
    pub index: usize,
    pub seed: u64,
    pub scheme: InstanceScheme,
    pub family: MapFamily,
    pub expected: Expectation,
    pub map_norms: Vec<f64>,
    pub composite_bound: f64,
    pub axiom_violations: usize,
    pub k_hat: Option<f64>,
    /// k̂ on the base grid followed by each scaled t_max, same sample.
    pub k_hat_by_t_max: Vec<KHatAtTMax>,
    pub k_hat_monotone: bool,
    pub status: SolveStatus,
    pub iterations: usize,
    pub z: Point,
    pub w: Point,
    pub anchor_error: f64,
    pub conclusions_passed: bool,
    pub min_residual: f64,
    pub uniqueness: UniquenessVerdict,
    pub uniqueness_spread: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aggregate {
    pub instances: usize,
    pub passed: usize,
    pub converged: usize,
    pub max_iter: usize,
    pub diverging: usize,
    pub errors: usize,
    pub conclusions_passed: usize,
    pub uniqueness_passed: usize,
    pub axioms_passed: usize,
    pub k_hat_below_one: usize,
    pub k_hat_monotone: usize,
}

impl Aggregate {
    fn of(rows: &[InstanceRow]) -> Self {
        let count = |f: &dyn Fn(&InstanceRow) -> bool| rows.iter().filter(|r| f(r)).count();
        Self {
            instances: rows.len(),
            passed: count(&|r| r.passed),
            converged: count(&|r| r.error.is_none() && r.status == SolveStatus::Converged),
            max_iter: count(&|r| r.error.is_none() && r.status == SolveStatus::MaxIter),
            diverging: count(&|r| r.error.is_none() && r.status == SolveStatus::Diverging),
            errors: count(&|r| r.error.is_some()),
            conclusions_passed: count(&|r| r.conclusions_passed),
            uniqueness_passed: count(&|r| r.uniqueness == UniquenessVerdict::Unique),
            axioms_passed: count(&|r| r.error.is_none() && r.axiom_violations == 0),
            k_hat_below_one: count(&|r| r.k_hat.is_some_and(|k| k < 1.0)),
            k_hat_monotone: count(&|r| r.k_hat_monotone),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteVerdict {
    /// Generator description; `seed` is the seed of the first instance.
    pub generator: GeneratorInfo,
    pub config: SuiteConfig,
    pub rows: Vec<InstanceRow>,
    pub aggregate: Aggregate,
}

impl SuiteVerdict {
    pub fn passed(&self) -> bool {
        self.aggregate.passed == self.aggregate.instances
    }
}

/// Runs every instance (in parallel; rows keep spec order). Per-instance
/// failures, including generation errors, are recorded in the row.
pub fn run_suite(specs: &[InstanceSpec], cfg: &SuiteConfig) -> Result<SuiteVerdict> {
    if specs.is_empty() {
        return Err(Error::Usage("the suite needs at least one instance".into()));
    }
    cfg.validate()?;
    let rows: Vec<InstanceRow> = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| run_instance(i, spec, cfg))
        .collect();
    Ok(SuiteVerdict {
        generator: generator_info(specs[0].seed),
        config: cfg.clone(),
        aggregate: Aggregate::of(&rows),
        rows,
    })
}

fn run_instance(index: usize, spec: &InstanceSpec, cfg: &SuiteConfig) -> InstanceRow {
    let expected = if spec.expansive { Expectation::Diverge } else { Expectation::Converge };
    match try_run_instance(index, spec, cfg, expected) {
        Ok(row) => row,
        Err(e) => InstanceRow {
            index,
            seed: spec.seed,
            scheme: spec.scheme,
            family: spec.family,
            expected,
            map_norms: vec![],
            composite_bound: f64::NAN,
            axiom_violations: 0,
            k_hat: None,
            k_hat_by_t_max: vec![],
            k_hat_monotone: false,
            status: SolveStatus::MaxIter,
            iterations: 0,
            z: Point::Vector(vec![]),
            w: Point::Vector(vec![]),
            anchor_error: f64::NAN,
            conclusions_passed: false,
            min_residual: f64::NAN,
            uniqueness: UniquenessVerdict::Inconclusive,
            uniqueness_spread: f64::NAN,
            passed: false,
            error: Some(e.to_string()),
        },
    }
}

fn try_run_instance(index: usize, spec: &InstanceSpec, cfg: &SuiteConfig, expected: Expectation) -> Result<InstanceRow> {
    let mut rng = DetRng::new(spec.seed);
    let inst = gen_with(spec, &mut rng)?;
    let grid = spec.grid()?;
    let solve_cfg = SolveConfig { grid: grid.clone(), ..cfg.solve.clone() };

    let mut axiom_violations = check_fm_axioms(&inst.mu, &spec.tnorm, cfg.axiom_samples, &grid, spec.seed)
        .violations
        .len();
    if spec.scheme != InstanceScheme::SelfQuadruple {
        axiom_violations += check_fm_axioms(&inst.nu, &spec.tnorm, cfg.axiom_samples, &grid, spec.seed)
            .violations
            .len();
    }

    let x0 = inst.mu.carrier().sample(&mut rng);
    let run = solve(&inst.problem, &inst.mu, &inst.nu, &x0, &solve_cfg)?;

    let (traj, random) = match spec.scheme {
        // The quadruple scan visits n⁴ tuples, so it gets half of each budget.
        InstanceScheme::Quadruple => (cfg.sample_trajectory / 2, cfg.sample_random / 2),
        _ => (cfg.sample_trajectory, cfg.sample_random),
    };
    let mut points_x = spread(run.trace_x.points(), traj);
    let mut points_y = spread(run.trace_y.points(), traj);
    for _ in 0..random {
        points_x.push(inst.mu.carrier().sample(&mut rng));
        points_y.push(inst.nu.carrier().sample(&mut rng));
    }

    let mut k_hat_by_t_max = Vec::new();
    let mut scan_grid = grid.clone();
    for scale in std::iter::once(1.0).chain(cfg.t_max_scales.iter().copied()) {
        if scale != 1.0 {
            scan_grid = scan_grid.extend_to(grid.t_max() * scale)?;
        }
        let samples = SampleSet::new(points_x.clone(), points_y.clone(), scan_grid.clone());
        k_hat_by_t_max.push(KHatAtTMax {
            t_max: scan_grid.t_max(),
            grid_points: scan_grid.len(),
            k_hat: k_hat(&inst, &samples)?,
        });
    }
    let k_hat_monotone = k_hat_by_t_max.windows(2).all(|w| match (w[0].k_hat, w[1].k_hat) {
        (Some(a), Some(b)) => b >= a,
        (None, _) => true,
        (Some(_), None) => false,
    });

    let starts: Vec<Point> = (0..cfg.uniqueness_starts).map(|_| inst.mu.carrier().sample(&mut rng)).collect();
    let probe = uniqueness_probe(&inst.problem, &inst.mu, &inst.nu, &starts, &solve_cfg)?;
    let spread = probe.max_z_distance.max(probe.max_w_distance);

    let anchor_error = anchor_error(&inst, &run)?;
    let passed = axiom_violations == 0
        && match expected {
            Expectation::Converge => {
                run.status == SolveStatus::Converged && run.conclusions.passed && probe.passed()
            }
            Expectation::Diverge => run.status == SolveStatus::Diverging,
        };
    Ok(InstanceRow {
        index,
        seed: spec.seed,
        scheme: spec.scheme,
        family: spec.family,
        expected,
        composite_bound: inst.composite_bound(),
        map_norms: inst.map_norms.clone(),
        axiom_violations,
        k_hat: k_hat_by_t_max[0].k_hat,
        k_hat_by_t_max,
        k_hat_monotone,
        status: run.status,
        iterations: run.iterations,
        z: run.z.clone(),
        w: run.w.clone(),
        anchor_error,
        conclusions_passed: run.conclusions.passed,
        min_residual: run.conclusions.min_residual(),
        uniqueness: probe.verdict,
        uniqueness_spread: spread,
        passed,
        error: None,
    })
}

fn anchor_error(inst: &Instance, run: &FixedPointResult) -> Result<f64> {
    if !run.z.is_finite() || !run.w.is_finite() {
        return Ok(f64::INFINITY);
    }
    Ok(inst.mu.distance(&run.z, &inst.anchor_z)?.max(inst.nu.distance(&run.w, &inst.anchor_w)?))
}

/// Up to `m` trace points at evenly spaced indices, last point included.
pub(crate) fn spread(points: &[Point], m: usize) -> Vec<Point> {
    if m == 0 || points.is_empty() {
        return vec![];
    }
    let last = points.len() - 1;
    let mut idx: Vec<usize> = if m == 1 {
        vec![last]
    } else {
        (0..m).map(|i| (i * last + (m - 1) / 2) / (m - 1)).collect()
    };
    idx.dedup();
    idx.into_iter().map(|i| points[i].clone()).filter(Point::is_finite).collect()
}

fn k_hat(inst: &Instance, samples: &SampleSet) -> Result<Option<f64>> {
    let reports: Vec<Result<HypothesisReport>> = match (&inst.problem, inst.spec.scheme) {
        (Problem::Pair(p), _) => vec![
            estimate_k_thm1(p, &inst.mu, &inst.nu, samples),
            estimate_k_thm1_dual(p, &inst.mu, &inst.nu, samples),
        ],
        (Problem::Quadruple(q), InstanceScheme::SelfQuadruple) => {
            let (a, b) = estimate_k_cor3(q, &inst.mu, samples);
            vec![a, b]
        }
        (Problem::Quadruple(q), _) => {
            let (a, b) = estimate_k_thm2(q, &inst.mu, &inst.nu, samples);
            vec![a, b]
        }
    };
    let mut best: Option<f64> = None;
    for r in reports {
        match r {
            Ok(rep) => best = Some(best.map_or(rep.k_hat, |b| b.max(rep.k_hat))),
            Err(Error::EmptySample { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

/// `count` specs of one shape with consecutive seeds starting at `seed`.
pub fn seeded_specs(template: &InstanceSpec, seed: u64, count: usize) -> Vec<InstanceSpec> {
    (0..count as u64)
        .map(|i| InstanceSpec { seed: seed.wrapping_add(i), ..template.clone() })
        .collect()
}
