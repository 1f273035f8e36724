//! Mappings between carriers and the pair / quadruple problem types.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{CarrierSpace, CrispMetric, FuzzyMetric, Point};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Mapping {
    /// x ↦ M x + b, with `matrix` stored row-major (output dim × input dim).
    Affine { matrix: Vec<Vec<f64>>, offset: Vec<f64> },
    Constant { point: Point },
    /// Index map on a finite carrier: i ↦ image[i].
    Table { image: Vec<usize> },
    /// Applied left to right: `maps[0]` first.
    Composed { maps: Vec<Mapping> },
    Identity,
}

impl Mapping {
    pub fn affine(matrix: Vec<Vec<f64>>, offset: Vec<f64>) -> Result<Self> {
        let m = Mapping::Affine { matrix, offset };
        m.validate()?;
        Ok(m)
    }

    /// x ↦ a·x + b on ℝ¹.
    pub fn scalar_affine(a: f64, b: f64) -> Self {
        Mapping::Affine {
            matrix: vec![vec![a]],
            offset: vec![b],
        }
    }

    pub fn constant(point: impl Into<Point>) -> Self {
        Mapping::Constant {
            point: point.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Mapping::Affine { matrix, offset } => {
                if matrix.is_empty() || matrix.len() != offset.len() {
                    return Err(Error::InvalidMap(format!(
                        "affine map has {} matrix rows and {} offsets",
                        matrix.len(),
                        offset.len()
                    )));
                }
                let cols = matrix[0].len();
                if cols == 0 || matrix.iter().any(|r| r.len() != cols) {
                    return Err(Error::InvalidMap("affine matrix rows differ in length".into()));
                }
                if matrix.iter().flatten().chain(offset).any(|v| !v.is_finite()) {
                    return Err(Error::InvalidMap("affine coefficients must be finite".into()));
                }
                Ok(())
            }
            Mapping::Constant { point } => {
                if point.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidMap(format!("constant {point} is not finite")))
                }
            }
            Mapping::Table { image } => {
                if image.is_empty() {
                    Err(Error::InvalidMap("table map must be non-empty".into()))
                } else {
                    Ok(())
                }
            }
            Mapping::Composed { maps } => {
                if maps.is_empty() {
                    return Err(Error::InvalidMap("composition of zero maps".into()));
                }
                maps.iter().try_for_each(Mapping::validate)
            }
            Mapping::Identity => Ok(()),
        }
    }

    /// Raw evaluation, without any codomain check.
    pub fn apply(&self, p: &Point) -> Result<Point> {
        match self {
            Mapping::Affine { matrix, offset } => {
                let x = p.coords().ok_or_else(|| {
                    Error::InvalidMap(format!("affine map applied to index point {p}"))
                })?;
                if x.len() != matrix[0].len() {
                    return Err(Error::InvalidMap(format!(
                        "affine map expects dimension {}, got {}",
                        matrix[0].len(),
                        x.len()
                    )));
                }
                Ok(Point::Vector(
                    matrix
                        .iter()
                        .zip(offset)
                        .map(|(row, b)| row.iter().zip(x).map(|(m, v)| m * v).sum::<f64>() + b)
                        .collect(),
                ))
            }
            Mapping::Constant { point } => Ok(point.clone()),
            Mapping::Table { image } => match p {
                Point::Index(i) => image.get(*i).map(|&j| Point::Index(j)).ok_or_else(|| {
                    Error::InvalidMap(format!("table map has no image for index {i}"))
                }),
                Point::Vector(_) => Err(Error::InvalidMap(format!(
                    "table map applied to vector point {p}"
                ))),
            },
            Mapping::Composed { maps } => {
                let mut cur = p.clone();
                for m in maps {
                    cur = m.apply(&cur)?;
                }
                Ok(cur)
            }
            Mapping::Identity => Ok(p.clone()),
        }
    }

    /// Lipschitz bound with respect to the given crisp metric, when one is
    /// known in closed form (spectral norm for euclidean, max-row-sum for
    /// the max metric). Table maps have none.
    pub fn lipschitz(&self, metric: CrispMetric) -> Option<f64> {
        match self {
            Mapping::Affine { matrix, .. } => Some(operator_norm(matrix, metric)),
            Mapping::Constant { .. } => Some(0.0),
            Mapping::Identity => Some(1.0),
            Mapping::Table { .. } => None,
            Mapping::Composed { maps } => maps
                .iter()
                .map(|m| m.lipschitz(metric))
                .try_fold(1.0, |acc, l| l.map(|l| acc * l)),
        }
    }
}

/// Operator norm of a row-major matrix induced by the crisp metric.
pub fn operator_norm(matrix: &[Vec<f64>], metric: CrispMetric) -> f64 {
    match metric {
        CrispMetric::Euclidean => {
            let rows = matrix.len();
            let cols = matrix.first().map_or(0, Vec::len);
            let m = DMatrix::from_fn(rows, cols, |i, j| matrix[i][j]);
            m.singular_values().iter().copied().fold(0.0, f64::max)
        }
        CrispMetric::Max => matrix
            .iter()
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max),
    }
}

/// Applies `map` and checks that the image lies in `codomain`.
pub(crate) fn apply_into(
    name: &str,
    map: &Mapping,
    p: &Point,
    codomain: &CarrierSpace,
) -> Result<Point> {
    let out = map.apply(p)?;
    codomain.check(&out).map_err(|e| Error::Codomain {
        map: name.to_string(),
        detail: e.to_string(),
    })?;
    Ok(out)
}

/// T : X → Y and S : Y → X.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapPair {
    pub t: Mapping,
    pub s: Mapping,
}

impl MapPair {
    pub fn new(t: Mapping, s: Mapping) -> Result<Self> {
        t.validate()?;
        s.validate()?;
        Ok(Self { t, s })
    }

    pub fn apply_t(&self, x: &Point, nu: &FuzzyMetric) -> Result<Point> {
        apply_into("T", &self.t, x, nu.carrier())
    }

    pub fn apply_s(&self, y: &Point, mu: &FuzzyMetric) -> Result<Point> {
        apply_into("S", &self.s, y, mu.carrier())
    }

    /// STx
    pub fn st(&self, x: &Point, mu: &FuzzyMetric, nu: &FuzzyMetric) -> Result<Point> {
        self.apply_s(&self.apply_t(x, nu)?, mu)
    }

    /// TSy
    pub fn ts(&self, y: &Point, mu: &FuzzyMetric, nu: &FuzzyMetric) -> Result<Point> {
        self.apply_t(&self.apply_s(y, mu)?, nu)
    }
}

/// A, B : X → Y and S, T : Y → X. With X = Y and μ = ν this is the
/// self-map quadruple of the single-space corollary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapQuadruple {
    pub a: Mapping,
    pub b: Mapping,
    pub s: Mapping,
    pub t: Mapping,
}

impl MapQuadruple {
    pub fn new(a: Mapping, b: Mapping, s: Mapping, t: Mapping) -> Result<Self> {
        for m in [&a, &b, &s, &t] {
            m.validate()?;
        }
        Ok(Self { a, b, s, t })
    }

    pub fn apply_a(&self, x: &Point, nu: &FuzzyMetric) -> Result<Point> {
        apply_into("A", &self.a, x, nu.carrier())
    }

    pub fn apply_b(&self, x: &Point, nu: &FuzzyMetric) -> Result<Point> {
        apply_into("B", &self.b, x, nu.carrier())
    }

    pub fn apply_s(&self, y: &Point, mu: &FuzzyMetric) -> Result<Point> {
        apply_into("S", &self.s, y, mu.carrier())
    }

    pub fn apply_t(&self, y: &Point, mu: &FuzzyMetric) -> Result<Point> {
        apply_into("T", &self.t, y, mu.carrier())
    }
}

/// Either problem shape accepted by the solver and the harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum Problem {
    Pair(MapPair),
    Quadruple(MapQuadruple),
}
