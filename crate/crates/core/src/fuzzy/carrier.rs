//! Carrier spaces (closed boxes in ℝⁿ and finite sets) and their points.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::defaults::SAMPLING_WINDOW;
use crate::error::{Error, Result};
use crate::rng::DetRng;

/// An element of a carrier: a coordinate vector for boxes or an index into
/// a finite set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Index(usize),
    Vector(Vec<f64>),
}

impl Point {
    pub fn scalar(v: f64) -> Self {
        Point::Vector(vec![v])
    }

    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            Point::Vector(c) => Some(c),
            Point::Index(_) => None,
        }
    }

    /// Coordinates as written to CSV: the vector itself, or the index as a
    /// single value.
    pub fn export_coords(&self) -> Vec<f64> {
        match self {
            Point::Vector(c) => c.clone(),
            Point::Index(i) => vec![*i as f64],
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Point::Vector(c) => c.iter().all(|v| v.is_finite()),
            Point::Index(_) => true,
        }
    }
}

impl From<f64> for Point {
    fn from(v: f64) -> Self {
        Point::scalar(v)
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point::Vector(v)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Index(i) => write!(f, "#{i}"),
            Point::Vector(c) => {
                f.write_str("(")?;
                for (k, v) in c.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrispMetric {
    #[default]
    Euclidean,
    Max,
}

/// Closed box `[lo_i, hi_i]` in ℝⁿ. Infinite bounds are allowed and make the
/// box the whole axis in that coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxSpace {
    lo: Vec<f64>,
    hi: Vec<f64>,
    metric: CrispMetric,
}

/// Finite carrier with a crisp distance table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteSpace {
    distances: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CarrierSpace {
    Box(BoxSpace),
    Finite(FiniteSpace),
}

impl CarrierSpace {
    /// ℝⁿ with the given crisp metric.
    pub fn real(dim: usize, metric: CrispMetric) -> Result<Self> {
        Self::boxed(
            vec![f64::NEG_INFINITY; dim],
            vec![f64::INFINITY; dim],
            metric,
        )
    }

    /// Shorthand for ℝ¹ with the euclidean metric.
    pub fn real_line() -> Self {
        Self::real(1, CrispMetric::Euclidean).expect("ℝ¹ is a valid carrier")
    }

    pub fn boxed(lo: Vec<f64>, hi: Vec<f64>, metric: CrispMetric) -> Result<Self> {
        if lo.is_empty() {
            return Err(Error::InvalidCarrier("box dimension must be ≥ 1".into()));
        }
        if lo.len() != hi.len() {
            return Err(Error::InvalidCarrier(format!(
                "bounds have lengths {} and {}",
                lo.len(),
                hi.len()
            )));
        }
        for (i, (l, h)) in lo.iter().zip(&hi).enumerate() {
            if l.is_nan() || h.is_nan() || !(l < h) {
                return Err(Error::InvalidCarrier(format!(
                    "coordinate {i}: need lo < hi, got [{l}, {h}]"
                )));
            }
        }
        Ok(CarrierSpace::Box(BoxSpace { lo, hi, metric }))
    }

    /// Finite carrier; the table must be a metric (checked here).
    pub fn finite(distances: Vec<Vec<f64>>) -> Result<Self> {
        let n = distances.len();
        if n == 0 {
            return Err(Error::InvalidCarrier("finite carrier must be non-empty".into()));
        }
        for (i, row) in distances.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCarrier(format!(
                    "distance table row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidCarrier(format!(
                        "d({i},{j}) = {d} is not a finite nonnegative number"
                    )));
                }
                if i == j && d != 0.0 {
                    return Err(Error::InvalidCarrier(format!("d({i},{i}) = {d} ≠ 0")));
                }
                if i != j && d == 0.0 {
                    return Err(Error::InvalidCarrier(format!(
                        "d({i},{j}) = 0 for distinct indices"
                    )));
                }
                if d != distances[j][i] {
                    return Err(Error::InvalidCarrier(format!(
                        "distance table is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let direct = distances[i][k];
                    let via = distances[i][j] + distances[j][k];
                    if direct > via * (1.0 + 1e-12) {
                        return Err(Error::InvalidCarrier(format!(
                            "triangle inequality fails: d({i},{k}) = {direct} > d({i},{j}) + d({j},{k}) = {via}"
                        )));
                    }
                }
            }
        }
        Ok(CarrierSpace::Finite(FiniteSpace { distances }))
    }

    /// Dimension of a box, or the size of a finite set.
    pub fn size(&self) -> usize {
        match self {
            CarrierSpace::Box(b) => b.lo.len(),
            CarrierSpace::Finite(f) => f.distances.len(),
        }
    }

    pub fn is_finite_set(&self) -> bool {
        matches!(self, CarrierSpace::Finite(_))
    }

    pub fn crisp_metric(&self) -> Option<CrispMetric> {
        match self {
            CarrierSpace::Box(b) => Some(b.metric),
            CarrierSpace::Finite(_) => None,
        }
    }

    pub fn bounds(&self) -> Option<(&[f64], &[f64])> {
        match self {
            CarrierSpace::Box(b) => Some((&b.lo, &b.hi)),
            CarrierSpace::Finite(_) => None,
        }
    }

    /// Validates membership of `p`.
    pub fn check(&self, p: &Point) -> Result<()> {
        match (self, p) {
            (CarrierSpace::Box(b), Point::Vector(c)) => {
                if c.len() != b.lo.len() {
                    return Err(Error::InvalidPoint(format!(
                        "{p} has dimension {}, carrier has {}",
                        c.len(),
                        b.lo.len()
                    )));
                }
                for (i, v) in c.iter().enumerate() {
                    if !v.is_finite() {
                        return Err(Error::InvalidPoint(format!(
                            "coordinate {i} of {p} is not finite"
                        )));
                    }
                    if *v < b.lo[i] || *v > b.hi[i] {
                        return Err(Error::InvalidPoint(format!(
                            "coordinate {i} of {p} is outside [{}, {}]",
                            b.lo[i], b.hi[i]
                        )));
                    }
                }
                Ok(())
            }
            (CarrierSpace::Finite(f), Point::Index(i)) => {
                if *i < f.distances.len() {
                    Ok(())
                } else {
                    Err(Error::InvalidPoint(format!(
                        "index {i} out of range for a carrier of size {}",
                        f.distances.len()
                    )))
                }
            }
            (CarrierSpace::Box(_), Point::Index(_)) => Err(Error::InvalidPoint(format!(
                "{p} is an index but the carrier is a box"
            ))),
            (CarrierSpace::Finite(_), Point::Vector(_)) => Err(Error::InvalidPoint(format!(
                "{p} is a vector but the carrier is a finite set"
            ))),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.check(p).is_ok()
    }

    /// Crisp distance. Both points must belong to the carrier.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.distance_unchecked(x, y))
    }

    pub(crate) fn distance_unchecked(&self, x: &Point, y: &Point) -> f64 {
        match (self, x, y) {
            (CarrierSpace::Box(b), Point::Vector(a), Point::Vector(c)) => match b.metric {
                CrispMetric::Euclidean => a
                    .iter()
                    .zip(c)
                    .map(|(u, v)| (u - v) * (u - v))
                    .sum::<f64>()
                    .sqrt(),
                CrispMetric::Max => a
                    .iter()
                    .zip(c)
                    .map(|(u, v)| (u - v).abs())
                    .fold(0.0, f64::max),
            },
            (CarrierSpace::Finite(f), Point::Index(i), Point::Index(j)) => f.distances[*i][*j],
            _ => unreachable!("points were validated against the carrier"),
        }
    }

    /// Draws a point uniformly from the carrier. Unbounded coordinates are
    /// sampled from `[-SAMPLING_WINDOW, SAMPLING_WINDOW]`.
    pub fn sample(&self, rng: &mut DetRng) -> Point {
        match self {
            CarrierSpace::Box(b) => Point::Vector(
                b.lo.iter()
                    .zip(&b.hi)
                    .map(|(&l, &h)| {
                        let (lo, hi) = match (l.is_finite(), h.is_finite()) {
                            (true, true) => (l, h),
                            (true, false) => (l, l + 2.0 * SAMPLING_WINDOW),
                            (false, true) => (h - 2.0 * SAMPLING_WINDOW, h),
                            (false, false) => (-SAMPLING_WINDOW, SAMPLING_WINDOW),
                        };
                        rng.uniform(lo, hi)
                    })
                    .collect(),
            ),
            CarrierSpace::Finite(f) => Point::Index(rng.index(f.distances.len())),
        }
    }
}
