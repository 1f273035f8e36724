//! Finite sampled t axis standing in for "every t > 0".

use serde::{Deserialize, Serialize};

use crate::defaults::{GRID_POINTS, GRID_T_MAX, GRID_T_MIN};
use crate::error::{Error, Result};

/// Strictly increasing, non-empty list of positive t values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TGrid {
    values: Vec<f64>,
}

impl TGrid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidGrid("grid must be non-empty".into()));
        }
        for (i, &t) in values.iter().enumerate() {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::InvalidGrid(format!("t[{i}] = {t} is not a positive number")));
            }
            if i > 0 && values[i - 1] >= t {
                return Err(Error::InvalidGrid(format!(
                    "grid is not strictly increasing at index {i}"
                )));
            }
        }
        Ok(Self { values })
    }

    /// `n` points spaced evenly in log10 between `lo` and `hi` inclusive.
    ///
    /// Point `i` is `10^(log10(lo) + i·step)`, so two grids sharing `lo` and
    /// `step` agree bit-for-bit on their common points.
    pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "need 0 < lo < hi < ∞, got lo = {lo}, hi = {hi}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidGrid("a log-spaced grid needs at least 2 points".into()));
        }
        let start = lo.log10();
        let step = (hi.log10() - start) / (n - 1) as f64;
        Self::new(
            (0..n)
                .map(|i| 10f64.powf(start + i as f64 * step))
                .collect(),
        )
    }

    /// Keeps the smallest value and the log spacing of the default grid and
    /// extends (or truncates) the axis to end at `t_max`. Scaling `t_max` by
    /// a power of ten therefore yields a superset of the original points.
    pub fn with_t_max(t_max: f64) -> Result<Self> {
        let per_decade = (GRID_POINTS - 1) as f64 / (GRID_T_MAX / GRID_T_MIN).log10();
        let decades = (t_max / GRID_T_MIN).log10();
        if !decades.is_finite() || decades <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "t_max = {t_max} must exceed the smallest grid value {GRID_T_MIN}"
            )));
        }
        let n = (decades * per_decade + 1e-9).floor() as usize + 1;
        let step = 1.0 / per_decade;
        let start = GRID_T_MIN.log10();
        let mut values: Vec<f64> = (0..n)
            .map(|i| 10f64.powf(start + i as f64 * step))
            .collect();
        let last = values[values.len() - 1];
        if last < t_max * (1.0 - 1e-9) {
            values.push(t_max);
        }
        Self::new(values)
    }

    /// This grid followed by the default-spacing lattice anchored at
    /// `t_min()` up to `t_max`, which is always appended. Every original
    /// point is kept, so a scan over the result dominates a scan over `self`.
    pub fn extend_to(&self, t_max: f64) -> Result<Self> {
        if !(t_max > self.t_max()) || !t_max.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "cannot extend a grid ending at {} to t_max = {t_max}",
                self.t_max()
            )));
        }
        let per_decade = (GRID_POINTS - 1) as f64 / (GRID_T_MAX / GRID_T_MIN).log10();
        let start = self.t_min().log10();
        let step = 1.0 / per_decade;
        let mut values = self.values.clone();
        let floor = self.t_max() * (1.0 + 1e-9);
        for i in 1.. {
            let t = 10f64.powf(start + i as f64 * step);
            if t >= t_max * (1.0 - 1e-9) {
                break;
            }
            if t > floor {
                values.push(t);
            }
        }
        values.push(t_max);
        Self::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn t_min(&self) -> f64 {
        self.values[0]
    }

    pub fn t_max(&self) -> f64 {
        *self.values.last().expect("grid is non-empty")
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied()
    }
}

impl Default for TGrid {
    fn default() -> Self {
        Self::log_spaced(GRID_T_MIN, GRID_T_MAX, GRID_POINTS).expect("default grid is valid")
    }
}

impl TryFrom<Vec<f64>> for TGrid {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<TGrid> for Vec<f64> {
    fn from(g: TGrid) -> Self {
        g.values
    }
}
