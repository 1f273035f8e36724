//! Sampled checkers for the t-norm and fuzzy-metric axioms.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::carrier::Point;
use super::grid::TGrid;
use super::metric::FuzzyMetric;
use super::tnorm::TriangularNorm;
use crate::defaults::{FLOAT_SLACK, POINT_TOL};
use crate::rng::{DetRng, GeneratorInfo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    // t-norm
    Range,
    Commutativity,
    Associativity,
    Monotonicity,
    UnitLaw,
    // fuzzy metric
    Positivity,
    Identity,
    Symmetry,
    Triangle,
    MonotoneInT,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Range => "range [0,1]",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Monotonicity => "monotonicity",
            Axiom::UnitLaw => "unit law a*1 = a",
            Axiom::Positivity => "(i) 0 < mu <= 1",
            Axiom::Identity => "(ii) mu = 1 iff x = y",
            Axiom::Symmetry => "(iii) symmetry",
            Axiom::Triangle => "(iv) triangle",
            Axiom::MonotoneInT => "(v) nondecreasing in t",
        };
        f.write_str(s)
    }
}

/// Where an axiom failed: the sampled points (empty for t-norms) and scalar
/// parameters (a, b, c, d for t-norms; s, t for fuzzy metrics).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub points: Vec<Point>,
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Witness,
    /// How far the inequality or identity is off.
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub subject: String,
    pub samples: usize,
    pub checks: usize,
    pub grid: Option<Vec<f64>>,
    pub generator: GeneratorInfo,
    /// Axioms that sampling cannot certify for this subject.
    pub unchecked: Vec<String>,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

/// Samples `sample_count` tuples (a, b, c, d) ∈ [0,1]⁴ and checks range,
/// commutativity (exact), associativity (within `FLOAT_SLACK`),
/// monotonicity and the unit law (exact). Each sample also checks the
/// boundary pairs (a, 0) and (a, 1).
pub fn check_tnorm_axioms<N: TriangularNorm + ?Sized>(
    op: &N,
    sample_count: usize,
    seed: u64,
) -> AxiomReport {
    let mut rng = DetRng::new(seed);
    let mut violations = Vec::new();
    let mut checks = 0usize;
    let mut record = |axiom, params: Vec<f64>, magnitude: f64| {
        violations.push(Violation {
            axiom,
            witness: Witness {
                points: vec![],
                params,
            },
            magnitude,
        })
    };

    for _ in 0..sample_count {
        let (a, b, c, d) = (rng.unit(), rng.unit(), rng.unit(), rng.unit());

        let ab = op.combine(a, b);
        checks += 1;
        if !(0.0..=1.0).contains(&ab) {
            let off = if ab < 0.0 { -ab } else { ab - 1.0 };
            record(Axiom::Range, vec![a, b], if off.is_nan() { f64::INFINITY } else { off });
        }

        checks += 1;
        let ba = op.combine(b, a);
        if ab != ba {
            record(Axiom::Commutativity, vec![a, b], (ab - ba).abs());
        }

        checks += 1;
        let left = op.combine(ab, c);
        let right = op.combine(a, op.combine(b, c));
        if (left - right).abs() > FLOAT_SLACK {
            record(Axiom::Associativity, vec![a, b, c], (left - right).abs());
        }

        checks += 1;
        let (lo1, hi1) = (a.min(c), a.max(c));
        let (lo2, hi2) = (b.min(d), b.max(d));
        let small = op.combine(lo1, lo2);
        let large = op.combine(hi1, hi2);
        if small > large {
            record(Axiom::Monotonicity, vec![lo1, lo2, hi1, hi2], small - large);
        }

        checks += 1;
        let unit = op.combine(a, 1.0);
        if unit != a {
            record(Axiom::UnitLaw, vec![a, 1.0], (unit - a).abs());
        }

        checks += 1;
        let zero = op.combine(a, 0.0);
        if zero > 0.0 {
            record(Axiom::Monotonicity, vec![a, 0.0], zero);
        }
    }

    AxiomReport {
        subject: format!("t-norm {}", op.name()),
        samples: sample_count,
        checks,
        grid: None,
        generator: rng.info(),
        unchecked: vec!["continuity".into()],
        violations,
    }
}

/// Samples `triple_count` triples (x, y, z) from the carrier and checks
/// axioms (i)–(iv) for every grid value and every grid pair (s, t). Axiom (v)
/// is checked as "nondecreasing in t" over the grid for induced forms and is
/// reported as unchecked for table-based metrics.
///
/// Identity is tolerance based: pairs with d ≤ `POINT_TOL` must evaluate to
/// exactly 1, pairs with d > `POINT_TOL` must evaluate below 1. The triangle
/// inequality allows `FLOAT_SLACK` of rounding.
pub fn check_fm_axioms<N: TriangularNorm + ?Sized>(
    fm: &FuzzyMetric,
    op: &N,
    triple_count: usize,
    grid: &TGrid,
    seed: u64,
) -> AxiomReport {
    let mut rng = DetRng::new(seed);
    let carrier = fm.carrier();
    let ts = grid.values();
    let mut violations = Vec::new();
    let mut checks = 0usize;
    let mut seen_identity = std::collections::HashSet::new();

    for _ in 0..triple_count {
        let x = carrier.sample(&mut rng);
        let y = carrier.sample(&mut rng);
        let z = carrier.sample(&mut rng);

        let mu_xy: Vec<f64> = ts.iter().map(|&t| fm.eval_unchecked(&x, &y, t)).collect();
        let mu_yz: Vec<f64> = ts.iter().map(|&t| fm.eval_unchecked(&y, &z, t)).collect();

        for (pair, values) in [((&x, &y), &mu_xy), ((&y, &z), &mu_yz)] {
            let (p, q) = pair;
            let d = carrier.distance_unchecked(p, q);
            for (k, &t) in ts.iter().enumerate() {
                let v = values[k];
                let wit = || Witness {
                    points: vec![p.clone(), q.clone()],
                    params: vec![t],
                };
                checks += 1;
                if !(v > 0.0 && v <= 1.0) {
                    let magnitude = if v > 1.0 { v - 1.0 } else { -v };
                    violations.push(Violation { axiom: Axiom::Positivity, witness: wit(), magnitude });
                }
                checks += 1;
                let equal = d <= POINT_TOL;
                if equal && v != 1.0 || !equal && v >= 1.0 {
                    // one witness per offending pair is enough
                    let key = format!("{p}|{q}");
                    if seen_identity.insert(key) {
                        violations.push(Violation {
                            axiom: Axiom::Identity,
                            witness: wit(),
                            magnitude: (1.0 - v).abs(),
                        });
                    }
                }
                checks += 1;
                let swapped = fm.eval_unchecked(q, p, t);
                if swapped.to_bits() != v.to_bits() {
                    violations.push(Violation {
                        axiom: Axiom::Symmetry,
                        witness: wit(),
                        magnitude: (swapped - v).abs(),
                    });
                }
            }
            if fm.is_induced() {
                for k in 1..ts.len() {
                    checks += 1;
                    if values[k] < values[k - 1] {
                        violations.push(Violation {
                            axiom: Axiom::MonotoneInT,
                            witness: Witness {
                                points: vec![p.clone(), q.clone()],
                                params: vec![ts[k - 1], ts[k]],
                            },
                            magnitude: values[k - 1] - values[k],
                        });
                    }
                }
            }
        }

        for &t in ts {
            checks += 1;
            let v = fm.eval_unchecked(&x, &x, t);
            if v != 1.0 && seen_identity.insert(format!("{x}|{x}")) {
                violations.push(Violation {
                    axiom: Axiom::Identity,
                    witness: Witness {
                        points: vec![x.clone(), x.clone()],
                        params: vec![t],
                    },
                    magnitude: (1.0 - v).abs(),
                });
            }
        }

        for (i, &s) in ts.iter().enumerate() {
            for (j, &t) in ts.iter().enumerate() {
                checks += 1;
                let lhs = op.combine(mu_xy[i], mu_yz[j]);
                let rhs = fm.eval_unchecked(&x, &z, s + t);
                if lhs > rhs + FLOAT_SLACK {
                    violations.push(Violation {
                        axiom: Axiom::Triangle,
                        witness: Witness {
                            points: vec![x.clone(), y.clone(), z.clone()],
                            params: vec![s, t],
                        },
                        magnitude: lhs - rhs,
                    });
                }
            }
        }
    }

    let mut unchecked = vec!["continuity in t".to_string()];
    if !fm.is_induced() {
        unchecked.push("(v) nondecreasing in t (table-based)".into());
    }
    AxiomReport {
        subject: format!("{} fuzzy metric with t-norm {}", fm.form_name(), op.name()),
        samples: triple_count,
        checks,
        grid: Some(grid.values().to_vec()),
        generator: rng.info(),
        unchecked,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::carrier::{CarrierSpace, CrispMetric};
    use crate::fuzzy::metric::NearnessTable;
    use crate::fuzzy::tnorm::TNorm;

    struct ShiftedProduct;

    impl TriangularNorm for ShiftedProduct {
        fn name(&self) -> &str {
            "shifted product"
        }
        fn combine(&self, a: f64, b: f64) -> f64 {
            a * b + 0.1
        }
    }

    #[test]
    fn stock_tnorms_pass() {
        for op in TNorm::ALL {
            let r = check_tnorm_axioms(&op, 1000, 42);
            assert!(r.passed(), "{op}: {:?}", r.violations.first());
            assert_eq!(r.samples, 1000);
        }
    }

    #[test]
    fn shifted_product_breaks_unit_law_at_b_equal_one() {
        let r = check_tnorm_axioms(&ShiftedProduct, 200, 42);
        assert!(r.count(Axiom::UnitLaw) > 0);
        let v = r.violations.iter().find(|v| v.axiom == Axiom::UnitLaw).unwrap();
        assert_eq!(v.witness.params[1], 1.0);
        assert!((v.magnitude - 0.1).abs() < 1e-12);
    }

    #[test]
    fn standard_metric_passes_on_a_box() {
        let c = CarrierSpace::boxed(vec![-5.0], vec![5.0], CrispMetric::Euclidean).unwrap();
        let fm = FuzzyMetric::induced_standard(c);
        for op in [TNorm::Product, TNorm::Minimum] {
            let r = check_fm_axioms(&fm, &op, 300, &TGrid::default(), 42);
            assert!(r.passed(), "{op}: {:?}", r.violations.first());
        }
    }

    #[test]
    fn planted_diagonal_defect_is_found() {
        let carrier = CarrierSpace::finite(vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        let grid = TGrid::default();
        let n = grid.len();
        let mut values = vec![vec![vec![0.5; n]; 3]; 3];
        for (i, row) in values.iter_mut().enumerate() {
            row[i] = vec![1.0; n];
        }
        values[0][0] = vec![0.9; n];
        let fm = FuzzyMetric::table(carrier, NearnessTable { grid: grid.clone(), values }).unwrap();
        let r = check_fm_axioms(&fm, &TNorm::Minimum, 200, &grid, 42);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].axiom, Axiom::Identity);
        assert_eq!(r.violations[0].witness.points, vec![Point::Index(0), Point::Index(0)]);
        assert!(r.unchecked.iter().any(|u| u.contains("table")));
    }
}
