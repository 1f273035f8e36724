use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::defaults;
use crate::error::{Error, Result};
use crate::fuzzy::{CarrierSpace, FuzzyMetric, TGrid};
use crate::rng::{generator_info, GeneratorInfo};
use crate::solver::{FixedPointResult, SolveConfig};

/// Leading columns of the trace CSV; coordinate columns `x_1 … x_d`,
/// `y_1 … y_e` follow.
pub const TRACE_COLUMNS: [&str; 4] = ["n", "t", "mu_step_x", "nu_step_y"];

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub eps: f64,
    pub max_iter: usize,
    pub stall_window: usize,
    pub p_max: usize,
    pub verify_tol: f64,
    pub point_tol: f64,
    pub float_slack: f64,
}

impl From<&SolveConfig> for Tolerances {
    fn from(c: &SolveConfig) -> Self {
        Self {
            eps: c.eps,
            max_iter: c.max_iter,
            stall_window: c.stall_window,
            p_max: c.p_max,
            verify_tol: c.verify_tol,
            point_tol: defaults::POINT_TOL,
            float_slack: defaults::FLOAT_SLACK,
        }
    }
}

/// Echo of the effective settings at the top of every summary file.
#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub generator: GeneratorInfo,
    pub grid: Vec<f64>,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric_x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric_y: Option<String>,
}

impl Header {
    pub fn new(command: &'static str, seed: u64, grid: &TGrid, solve: &SolveConfig) -> Self {
        Self {
            tool: "fuzzyfix",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            generator: generator_info(seed),
            grid: grid.values().to_vec(),
            tolerances: solve.into(),
            metric_x: None,
            metric_y: None,
        }
    }

    pub fn with_metrics(mut self, mu: &FuzzyMetric, nu: &FuzzyMetric) -> Self {
        self.metric_x = Some(mu.form_name().to_string());
        self.metric_y = Some(nu.form_name().to_string());
        self
    }
}

pub struct OutDir {
    dir: PathBuf,
}

impl OutDir {
    pub fn create(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn json<T: Serialize>(&self, name: &str, value: &T) -> Result<PathBuf> {
        let path = self.path(name);
        let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }

    pub fn csv(&self, name: &str, header: &[String], rows: &[Vec<String>]) -> Result<PathBuf> {
        let path = self.path(name);
        let mut w = csv::Writer::from_path(&path).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?;
        write_rows(&mut w, header, rows)?;
        Ok(path)
    }
}

fn write_rows<W: Write>(w: &mut csv::Writer<W>, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

fn export_dim(c: &CarrierSpace) -> usize {
    if c.is_finite_set() {
        1
    } else {
        c.size()
    }
}

/// One row per iterate n and grid value t. `mu_step_x` is μ(x_{n−1}, x_n, t)
/// and `nu_step_y` is ν(y_{n−1}, y_n, t); both are empty where the step does
/// not exist. Row n carries the coordinates of x_n and y_n (y_0 is empty).
pub fn write_trace_csv<W: Write>(
    result: &FixedPointResult,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    grid: &TGrid,
    out: W,
) -> Result<()> {
    let dx = export_dim(mu.carrier());
    let dy = export_dim(nu.carrier());
    let mut header: Vec<String> = TRACE_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend((1..=dx).map(|i| format!("x_{i}")));
    header.extend((1..=dy).map(|i| format!("y_{i}")));

    let xs = result.trace_x.points();
    let ys = result.trace_y.points();
    let mut rows = Vec::with_capacity(xs.len() * grid.len());
    for (n, x) in xs.iter().enumerate() {
        let y = n.checked_sub(1).and_then(|i| ys.get(i));
        for t in grid.iter() {
            let mu_step = if n >= 1 { mu.eval(&xs[n - 1], x, t)?.to_string() } else { String::new() };
            let nu_step = if n >= 2 && n <= ys.len() { nu.eval(&ys[n - 2], &ys[n - 1], t)?.to_string() } else { String::new() };
            let mut row = vec![n.to_string(), t.to_string(), mu_step, nu_step];
            row.extend(x.export_coords().iter().map(f64::to_string));
            match y {
                Some(y) => row.extend(y.export_coords().iter().map(f64::to_string)),
                None => row.extend(std::iter::repeat_n(String::new(), dy)),
            }
            rows.push(row);
        }
    }
    let mut w = csv::Writer::from_writer(out);
    write_rows(&mut w, &header, &rows)
}
