//! Triangular norms on [0, 1].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A binary aggregation of nearness degrees. Implemented by [`TNorm`] and by
/// any ad-hoc operator a caller wants to run through the axiom checker.
pub trait TriangularNorm {
    fn name(&self) -> &str;

    /// Unchecked evaluation; arguments are assumed to lie in [0, 1].
    fn combine(&self, a: f64, b: f64) -> f64;

    /// `a ∗ b ∗ ... ` over a slice; the empty fold is the unit 1.
    fn fold(&self, values: &[f64]) -> f64 {
        values.iter().fold(1.0, |acc, &v| self.combine(acc, v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    #[default]
    Minimum,
    Product,
    Lukasiewicz,
}

impl TNorm {
    pub const ALL: [TNorm; 3] = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz];

    /// Checked evaluation: both arguments must lie in [0, 1].
    pub fn apply(self, a: f64, b: f64) -> Result<f64> {
        for (label, v) in [("a", a), ("b", b)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!(
                    "t-norm argument {label} = {v} is outside [0, 1]"
                )));
            }
        }
        Ok(self.combine(a, b))
    }
}

impl TriangularNorm for TNorm {
    fn name(&self) -> &str {
        match self {
            TNorm::Minimum => "minimum",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }

    fn combine(&self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Minimum => a.min(b),
            TNorm::Product => a * b,
            // a + 1 − 1 is not always a in floating point
            TNorm::Lukasiewicz if a == 1.0 => b,
            TNorm::Lukasiewicz if b == 1.0 => a,
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimum" | "min" => Ok(TNorm::Minimum),
            "product" | "prod" => Ok(TNorm::Product),
            "lukasiewicz" => Ok(TNorm::Lukasiewicz),
            other => Err(Error::Config(format!("unknown t-norm `{other}`"))),
        }
    }
}
