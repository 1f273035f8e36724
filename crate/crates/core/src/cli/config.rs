//! The JSON run configuration.
//!
//! ```json
//! {
//!   "seed": 7,
//!   "carrier": { "x": { "kind": "real", "dim": 1 } },
//!   "metric": { "x": { "form": "standard" } },
//!   "maps": { "scheme": "pair",
//!             "t": { "kind": "affine", "matrix": [[0.5]], "offset": [1.0] },
//!             "s": { "kind": "affine", "matrix": [[0.3333333333333333]], "offset": [1.0] } },
//!   "grid": { "t_max": 100.0 },
//!   "solve": { "x0": [0.0] }
//! }
//! ```
//!
//! `carrier.y` and `metric.y` default to their `x` counterparts. Unknown keys
//! are rejected anywhere in the document.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::defaults;
use crate::error::{Error, Result};
use crate::fuzzy::{CarrierSpace, CrispMetric, FuzzyMetric, NearnessTable, Point, TGrid, TNorm};
use crate::harness::{InducedForm, InstanceScheme, InstanceSpec, MapFamily, SuiteConfig};
use crate::maps::Problem;
use crate::solver::SolveConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CarrierDecl {
    /// All of ℝ^dim.
    Real {
        dim: usize,
        #[serde(default)]
        metric: CrispMetric,
    },
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
        #[serde(default)]
        metric: CrispMetric,
    },
    Finite { distances: Vec<Vec<f64>> },
}

impl CarrierDecl {
    pub fn build(&self) -> Result<CarrierSpace> {
        match self {
            CarrierDecl::Real { dim, metric } => CarrierSpace::real(*dim, *metric),
            CarrierDecl::Box { lo, hi, metric } => CarrierSpace::boxed(lo.clone(), hi.clone(), *metric),
            CarrierDecl::Finite { distances } => CarrierSpace::finite(distances.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierSection {
    pub x: CarrierDecl,
    pub y: Option<CarrierDecl>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormName {
    #[default]
    Standard,
    Exponential,
    Table,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricDecl {
    pub form: FormName,
    /// Required by, and only allowed with, `"form": "table"`.
    pub table: Option<NearnessTable>,
}

impl MetricDecl {
    pub fn build(&self, carrier: CarrierSpace) -> Result<FuzzyMetric> {
        match (self.form, &self.table) {
            (FormName::Standard, None) => Ok(FuzzyMetric::induced_standard(carrier)),
            (FormName::Exponential, None) => Ok(FuzzyMetric::induced_exponential(carrier)),
            (FormName::Table, Some(t)) => FuzzyMetric::table(carrier, t.clone()),
            (FormName::Table, None) => Err(Error::Config("metric form `table` needs a `table` entry".into())),
            (_, Some(_)) => Err(Error::Config("a `table` entry is only allowed with form `table`".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSection {
    #[serde(default)]
    pub x: MetricDecl,
    pub y: Option<MetricDecl>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub t_min: f64,
    pub t_max: f64,
    /// Number of log-spaced points; defaults to 4 per decade.
    pub points: Option<usize>,
    /// Explicit values; overrides the three fields above.
    pub values: Option<Vec<f64>>,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { t_min: defaults::GRID_T_MIN, t_max: defaults::GRID_T_MAX, points: None, values: None }
    }
}

impl GridSection {
    pub fn build(&self) -> Result<TGrid> {
        if let Some(v) = &self.values {
            return TGrid::new(v.clone());
        }
        match self.points {
            None if self.t_min == defaults::GRID_T_MIN && self.t_max == defaults::GRID_T_MAX => Ok(TGrid::default()),
            None if self.t_min == defaults::GRID_T_MIN => TGrid::with_t_max(self.t_max),
            None => {
                let decades = (self.t_max / self.t_min).log10();
                let n = (decades * 4.0 + 1e-9).floor().max(1.0) as usize + 1;
                TGrid::log_spaced(self.t_min, self.t_max, n)
            }
            Some(n) => TGrid::log_spaced(self.t_min, self.t_max, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveSection {
    pub eps: f64,
    pub max_iter: usize,
    pub stall_window: usize,
    pub p_max: usize,
    pub verify_tol: f64,
    /// Start point; drawn from the carrier with the run seed when absent.
    pub x0: Option<Point>,
    /// Starts of the uniqueness probe; none means no probe.
    pub uniqueness_starts: Option<Vec<Point>>,
}

impl Default for SolveSection {
    fn default() -> Self {
        Self {
            eps: defaults::EPS,
            max_iter: defaults::MAX_ITER,
            stall_window: defaults::STALL_WINDOW,
            p_max: defaults::P_MAX,
            verify_tol: defaults::VERIFY_TOL,
            x0: None,
            uniqueness_starts: None,
        }
    }
}

impl SolveSection {
    pub fn build(&self, grid: TGrid) -> Result<SolveConfig> {
        let cfg = SolveConfig {
            eps: self.eps,
            max_iter: self.max_iter,
            grid,
            stall_window: self.stall_window,
            p_max: self.p_max,
            verify_tol: self.verify_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HypothesesSection {
    /// Explicit sample of X; by default the sample is drawn from the solve
    /// trajectory plus random carrier points.
    pub samples_x: Option<Vec<Point>>,
    pub samples_y: Option<Vec<Point>>,
    pub sample_trajectory: usize,
    pub sample_random: usize,
    pub include_diagonal: bool,
    pub record_table: bool,
    /// Scan the self-map inequalities (single space, μ = ν) instead of the
    /// two-space quadruple ones.
    pub self_maps: bool,
}

impl Default for HypothesesSection {
    fn default() -> Self {
        Self {
            samples_x: None,
            samples_y: None,
            sample_trajectory: defaults::SAMPLE_TRAJECTORY,
            sample_random: defaults::SAMPLE_RANDOM,
            include_diagonal: false,
            record_table: false,
            self_maps: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AxiomsSection {
    pub samples: usize,
    pub tnorms: Vec<TNorm>,
}

impl Default for AxiomsSection {
    fn default() -> Self {
        Self { samples: defaults::AXIOM_SAMPLES, tnorms: TNorm::ALL.to_vec() }
    }
}

/// `count` instances sharing everything but the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDecl {
    pub count: usize,
    pub scheme: InstanceScheme,
    #[serde(default = "two")]
    pub dim_x: usize,
    #[serde(default = "two")]
    pub dim_y: usize,
    #[serde(default)]
    pub family: MapFamily,
    pub factor: Option<[f64; 2]>,
    #[serde(default)]
    pub metric: InducedForm,
    pub tnorm: Option<TNorm>,
    pub t_max: Option<f64>,
    #[serde(default)]
    pub expansive: bool,
}

fn two() -> usize {
    2
}

impl GroupDecl {
    pub fn template(&self) -> InstanceSpec {
        let base = InstanceSpec::pair(0);
        InstanceSpec {
            scheme: self.scheme,
            dim_x: self.dim_x,
            dim_y: self.dim_y,
            family: self.family,
            factor: self.factor.unwrap_or(base.factor),
            metric: self.metric,
            tnorm: self.tnorm.unwrap_or(base.tnorm),
            t_max: self.t_max.unwrap_or(base.t_max),
            seed: 0,
            expansive: self.expansive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteSection {
    /// Seed of the first instance; later instances count up from it.
    pub seed: u64,
    pub groups: Vec<GroupDecl>,
    pub sample_trajectory: usize,
    pub sample_random: usize,
    pub uniqueness_starts: usize,
    pub axiom_samples: usize,
    pub t_max_scales: Vec<f64>,
}

impl Default for SuiteSection {
    fn default() -> Self {
        let cfg = SuiteConfig::default();
        Self {
            seed: defaults::SUITE_SEED,
            groups: vec![GroupDecl {
                count: defaults::SUITE_INSTANCES,
                scheme: InstanceScheme::Pair,
                dim_x: 2,
                dim_y: 2,
                family: MapFamily::Affine,
                factor: None,
                metric: InducedForm::Standard,
                tnorm: None,
                t_max: None,
                expansive: false,
            }],
            sample_trajectory: cfg.sample_trajectory,
            sample_random: cfg.sample_random,
            uniqueness_starts: cfg.uniqueness_starts,
            axiom_samples: cfg.axiom_samples,
            t_max_scales: cfg.t_max_scales,
        }
    }
}

impl SuiteSection {
    /// Instance specs with consecutive seeds starting at `seed`.
    pub fn specs(&self, seed: u64, t_max: Option<f64>) -> Vec<InstanceSpec> {
        let mut out = Vec::new();
        for g in &self.groups {
            let mut template = g.template();
            if let Some(t) = t_max {
                template.t_max = t;
            }
            for _ in 0..g.count {
                out.push(InstanceSpec { seed: seed.wrapping_add(out.len() as u64), ..template.clone() });
            }
        }
        out
    }

    pub fn config(&self, solve: SolveConfig) -> SuiteConfig {
        SuiteConfig {
            solve,
            sample_trajectory: self.sample_trajectory,
            sample_random: self.sample_random,
            uniqueness_starts: self.uniqueness_starts,
            axiom_samples: self.axiom_samples,
            t_max_scales: self.t_max_scales.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub carrier: Option<CarrierSection>,
    #[serde(default)]
    pub metric: MetricSection,
    #[serde(default = "default_tnorm")]
    pub tnorm: TNorm,
    pub maps: Option<Problem>,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub solve: SolveSection,
    #[serde(default)]
    pub hypotheses: HypothesesSection,
    #[serde(default)]
    pub axioms: AxiomsSection,
    #[serde(default)]
    pub suite: SuiteSection,
}

fn default_tnorm() -> TNorm {
    TNorm::Minimum
}

/// The fuzzy metric spaces (X, μ) and (Y, ν) of a configuration.
#[derive(Debug, Clone)]
pub struct Spaces {
    pub mu: FuzzyMetric,
    pub nu: FuzzyMetric,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: Value = serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed JSON: {e}")))?;
        let cfg: RunConfig = serde_json::from_value(raw.clone()).map_err(|e| Error::Config(e.to_string()))?;
        let typed = serde_json::to_value(&cfg).map_err(|e| Error::Config(e.to_string()))?;
        reject_unknown_keys(&raw, &typed, "")?;
        if let Some(p) = &cfg.maps {
            match p {
                Problem::Pair(pair) => {
                    pair.t.validate()?;
                    pair.s.validate()?;
                }
                Problem::Quadruple(q) => {
                    for m in [&q.a, &q.b, &q.s, &q.t] {
                        m.validate()?;
                    }
                }
            }
        }
        Ok(cfg)
    }

    pub fn spaces(&self) -> Result<Spaces> {
        let c = self
            .carrier
            .as_ref()
            .ok_or_else(|| Error::Config("missing `carrier` section".into()))?;
        let cx = c.x.build()?;
        let cy = c.y.as_ref().unwrap_or(&c.x).build()?;
        let mu = self.metric.x.build(cx)?;
        let nu = self.metric.y.as_ref().unwrap_or(&self.metric.x).build(cy)?;
        Ok(Spaces { mu, nu })
    }

    pub fn problem(&self) -> Result<&Problem> {
        self.maps.as_ref().ok_or_else(|| Error::Config("missing `maps` section".into()))
    }

    /// The grid with an optional command-line t_max override applied.
    pub fn grid(&self, t_max: Option<f64>) -> Result<TGrid> {
        match t_max {
            None => self.grid.build(),
            Some(_) if self.grid.values.is_some() => {
                Err(Error::Config("--t-max cannot override an explicit list of grid values".into()))
            }
            Some(t) => GridSection { t_max: t, ..self.grid.clone() }.build(),
        }
    }
}

/// Serde's `deny_unknown_fields` does not reach keys next to the tag of an
/// internally tagged unit variant (`{"kind": "identity", "extra": 1}`), so
/// the parsed document is serialized back and every key of the input must
/// reappear at the same place.
fn reject_unknown_keys(raw: &Value, typed: &Value, path: &str) -> Result<()> {
    match (raw, typed) {
        (Value::Object(r), Value::Object(t)) => {
            for (k, v) in r {
                let here = format!("{path}/{k}");
                match t.get(k) {
                    Some(tv) => reject_unknown_keys(v, tv, &here)?,
                    None => return Err(Error::Config(format!("unknown key `{here}`"))),
                }
            }
            Ok(())
        }
        (Value::Array(r), Value::Array(t)) if r.len() == t.len() => {
            for (i, (rv, tv)) in r.iter().zip(t).enumerate() {
                reject_unknown_keys(rv, tv, &format!("{path}/{i}"))?;
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINEAR: &str = r#"{
        "carrier": { "x": { "kind": "real", "dim": 1 } },
        "maps": { "scheme": "pair",
                  "t": { "kind": "affine", "matrix": [[0.5]], "offset": [1.0] },
                  "s": { "kind": "affine", "matrix": [[0.3333333333333333]], "offset": [1.0] } }
    }"#;

    #[test]
    fn minimal_config() {
        let cfg = RunConfig::parse(LINEAR).unwrap();
        let sp = cfg.spaces().unwrap();
        assert_eq!(sp.mu, sp.nu);
        assert_eq!(cfg.grid(None).unwrap(), TGrid::default());
        assert_eq!(cfg.grid(Some(1e3)).unwrap(), TGrid::with_t_max(1e3).unwrap());
        assert!(matches!(cfg.problem().unwrap(), Problem::Pair(_)));
    }

    #[test]
    fn unknown_keys_rejected() {
        let top = LINEAR.replacen('{', r#"{ "colour": 1,"#, 1);
        assert!(matches!(RunConfig::parse(&top), Err(Error::Config(_))));
        let nested = LINEAR.replace(r#""dim": 1"#, r#""dim": 1, "radius": 2"#);
        assert!(RunConfig::parse(&nested).is_err());
        let unit = LINEAR.replace(
            r#"{ "kind": "affine", "matrix": [[0.5]], "offset": [1.0] }"#,
            r#"{ "kind": "identity", "scale": 2 }"#,
        );
        let err = RunConfig::parse(&unit).unwrap_err();
        assert!(err.to_string().contains("/maps/t/scale"), "{err}");
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(RunConfig::parse("{"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::parse(r#"{"seed": "x"}"#), Err(Error::Config(_))));
        let bad_map = LINEAR.replace("[[0.5]]", "[[0.5], [1.0]]");
        assert!(RunConfig::parse(&bad_map).is_err());
        let cfg = RunConfig::parse("{}").unwrap();
        assert!(cfg.spaces().is_err());
        assert!(cfg.problem().is_err());
    }

    #[test]
    fn suite_seeds_are_consecutive() {
        let s = SuiteSection::default();
        let specs = s.specs(5, Some(1e3));
        assert_eq!(specs.len(), 100);
        assert_eq!(specs[0].seed, 5);
        assert_eq!(specs[99].seed, 104);
        assert_eq!(specs[3].t_max, 1e3);
    }
}
