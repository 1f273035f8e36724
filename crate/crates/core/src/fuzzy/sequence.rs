//! Sequences in a fuzzy metric space and the sampled convergence/Cauchy
//! predicates.

use serde::{Deserialize, Serialize};

use super::carrier::Point;
use super::grid::TGrid;
use super::metric::FuzzyMetric;
use super::tnorm::TriangularNorm;
use crate::error::{Error, Result};

/// Points of a sequence together with the step nearness
/// `nearness[n][k] = μ(points[n], points[n+1], grid[k])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceTrace {
    points: Vec<Point>,
    nearness: Vec<Vec<f64>>,
}

impl SequenceTrace {
    pub fn build(points: Vec<Point>, fm: &FuzzyMetric, grid: &TGrid) -> Result<Self> {
        let mut nearness = Vec::with_capacity(points.len().saturating_sub(1));
        for w in points.windows(2) {
            nearness.push(
                grid.iter()
                    .map(|t| fm.eval(&w[0], &w[1], t))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        if points.len() == 1 {
            fm.carrier().check(&points[0])?;
        }
        Ok(Self { points, nearness })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn nearness(&self) -> &[Vec<f64>] {
        &self.nearness
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> Option<&Point> {
        self.points.last()
    }

    /// Trace of the points from index `start` on, re-using the stored
    /// step nearness.
    pub fn tail(&self, start: usize) -> Self {
        let start = start.min(self.points.len());
        Self {
            points: self.points[start..].to_vec(),
            nearness: self.nearness[start.min(self.nearness.len())..].to_vec(),
        }
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::Usage(format!("eps = {eps} must lie in (0, 1)")))
    }
}

/// True iff μ(last point, limit, t) ≥ 1 − eps for every grid t.
pub fn is_convergent(
    trace: &SequenceTrace,
    limit: &Point,
    fm: &FuzzyMetric,
    grid: &TGrid,
    eps: f64,
) -> Result<bool> {
    check_eps(eps)?;
    let last = trace
        .last()
        .ok_or_else(|| Error::Usage("convergence needs a non-empty trace".into()))?;
    for t in grid.iter() {
        if fm.eval(last, limit, t)? < 1.0 - eps {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff μ(x_n, x_{n+p}, t) ≥ 1 − eps for the last n that admits
/// every p in 1..=p_max, and every grid t.
pub fn is_cauchy(
    trace: &SequenceTrace,
    fm: &FuzzyMetric,
    grid: &TGrid,
    eps: f64,
    p_max: usize,
) -> Result<bool> {
    check_eps(eps)?;
    if p_max == 0 {
        return Err(Error::Usage("p_max must be ≥ 1".into()));
    }
    if trace.len() < p_max + 1 {
        return Err(Error::Usage(format!(
            "a Cauchy probe of depth {p_max} needs at least {} points, trace has {}",
            p_max + 1,
            trace.len()
        )));
    }
    let pts = trace.points();
    let n = pts.len() - 1 - p_max;
    for p in 1..=p_max {
        for t in grid.iter() {
            if fm.eval(&pts[n], &pts[n + p], t)? < 1.0 - eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `∗`-fold of the step nearness μ(x_{n+i}, x_{n+i+1}, t/p), i = 0..p−1:
/// the lower bound the triangle axiom gives for μ(x_n, x_{n+p}, t).
pub fn chained_lower_bound<N: TriangularNorm + ?Sized>(
    trace: &SequenceTrace,
    fm: &FuzzyMetric,
    op: &N,
    n: usize,
    p: usize,
    t: f64,
) -> Result<f64> {
    if p == 0 || n + p >= trace.len() {
        return Err(Error::Usage(format!(
            "chain of length {p} from index {n} exceeds a trace of {} points",
            trace.len()
        )));
    }
    let pts = trace.points();
    let split = t / p as f64;
    let steps = (0..p)
        .map(|i| fm.eval(&pts[n + i], &pts[n + i + 1], split))
        .collect::<Result<Vec<_>>>()?;
    Ok(op.fold(&steps))
}
