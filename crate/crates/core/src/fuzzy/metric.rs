//! Fuzzy metrics μ(x, y, t) ∈ (0, 1] over a carrier.

use serde::{Deserialize, Serialize};

use super::carrier::{CarrierSpace, Point};
use super::grid::TGrid;
use crate::defaults::POINT_TOL;
use crate::error::{Error, Result};

/// Nearness values of a table-based fuzzy metric, stored per index pair and
/// per grid t: `values[i][j][k] = μ(i, j, grid[k])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NearnessTable {
    pub grid: TGrid,
    pub values: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum MetricForm {
    /// μ = t / (t + d)
    Standard,
    /// μ = exp(−d / t)
    Exponential,
    Table(NearnessTable),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyMetric {
    carrier: CarrierSpace,
    form: MetricForm,
}

impl FuzzyMetric {
    /// μ(x, y, t) = t / (t + d(x, y)).
    pub fn induced_standard(carrier: CarrierSpace) -> Self {
        Self {
            carrier,
            form: MetricForm::Standard,
        }
    }

    /// μ(x, y, t) = exp(−d(x, y) / t), floored at the smallest positive
    /// normal double so that it never underflows to 0.
    pub fn induced_exponential(carrier: CarrierSpace) -> Self {
        Self {
            carrier,
            form: MetricForm::Exponential,
        }
    }

    /// Table-based metric on a finite carrier. Only the shape and the range
    /// [0, 1] of the values are validated here: the axioms are the job of
    /// [`check_fm_axioms`](super::axioms::check_fm_axioms), which lets a
    /// deliberately broken table be built and diagnosed.
    ///
    /// Off-grid t are interpolated linearly in log t; t outside the table's
    /// grid takes the nearest endpoint value.
    pub fn table(carrier: CarrierSpace, table: NearnessTable) -> Result<Self> {
        let n = match &carrier {
            CarrierSpace::Finite(_) => carrier.size(),
            CarrierSpace::Box(_) => {
                return Err(Error::InvalidMetric(
                    "table-based fuzzy metrics need a finite carrier".into(),
                ))
            }
        };
        if table.values.len() != n {
            return Err(Error::InvalidMetric(format!(
                "table has {} rows, carrier has {n} points",
                table.values.len()
            )));
        }
        for (i, row) in table.values.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMetric(format!(
                    "table row {i} has {} columns, expected {n}",
                    row.len()
                )));
            }
            for (j, series) in row.iter().enumerate() {
                if series.len() != table.grid.len() {
                    return Err(Error::InvalidMetric(format!(
                        "entry ({i},{j}) has {} values, grid has {}",
                        series.len(),
                        table.grid.len()
                    )));
                }
                if let Some(v) = series.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                    return Err(Error::InvalidMetric(format!(
                        "entry ({i},{j}) holds {v}, outside [0, 1]"
                    )));
                }
            }
        }
        Ok(Self {
            carrier,
            form: MetricForm::Table(table),
        })
    }

    pub fn carrier(&self) -> &CarrierSpace {
        &self.carrier
    }

    pub fn form(&self) -> &MetricForm {
        &self.form
    }

    pub fn form_name(&self) -> &'static str {
        match self.form {
            MetricForm::Standard => "standard",
            MetricForm::Exponential => "exponential",
            MetricForm::Table(_) => "table",
        }
    }

    /// Induced forms are built from a crisp metric and are nondecreasing in t.
    pub fn is_induced(&self) -> bool {
        !matches!(self.form, MetricForm::Table(_))
    }

    /// Evaluates μ(x, y, t). Fails on t ≤ 0 or on points outside the carrier.
    pub fn eval(&self, x: &Point, y: &Point, t: f64) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("t = {t} must be a positive number")));
        }
        self.carrier.check(x)?;
        self.carrier.check(y)?;
        Ok(self.eval_unchecked(x, y, t))
    }

    pub(crate) fn eval_unchecked(&self, x: &Point, y: &Point, t: f64) -> f64 {
        match &self.form {
            MetricForm::Standard => {
                let d = self.carrier.distance_unchecked(x, y);
                t / (t + d)
            }
            MetricForm::Exponential => {
                let d = self.carrier.distance_unchecked(x, y);
                (-d / t).exp().max(f64::MIN_POSITIVE)
            }
            MetricForm::Table(table) => {
                let (Point::Index(i), Point::Index(j)) = (x, y) else {
                    unreachable!("points were validated against a finite carrier")
                };
                interpolate(&table.grid, &table.values[*i][*j], t)
            }
        }
    }

    /// Crisp distance in the carrier.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.carrier.distance(x, y)
    }

    /// Tolerance-based point equality: d(x, y) ≤ `POINT_TOL`.
    pub fn same_point(&self, x: &Point, y: &Point) -> Result<bool> {
        Ok(self.distance(x, y)? <= POINT_TOL)
    }

    /// min over the grid of μ(x, y, t); equals 1 exactly iff x and y are
    /// indistinguishable at every sampled scale.
    pub fn min_over_grid(&self, x: &Point, y: &Point, grid: &TGrid) -> Result<f64> {
        let mut best = 1.0f64;
        for t in grid.iter() {
            best = best.min(self.eval(x, y, t)?);
        }
        Ok(best)
    }
}

fn interpolate(grid: &TGrid, series: &[f64], t: f64) -> f64 {
    let ts = grid.values();
    if t <= ts[0] {
        return series[0];
    }
    let last = ts.len() - 1;
    if t >= ts[last] {
        return series[last];
    }
    // first index with ts[k] > t; k ≥ 1 here
    let k = ts.partition_point(|&v| v <= t);
    let (t0, t1) = (ts[k - 1], ts[k]);
    let w = (t.ln() - t0.ln()) / (t1.ln() - t0.ln());
    (1.0 - w) * series[k - 1] + w * series[k]
}
