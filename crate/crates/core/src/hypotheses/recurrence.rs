//! Step recurrences that the fixed-point proofs derive along the iteration
//! traces. Convention: `trace_x[i] = x_i` (i ≥ 0) and `trace_y[i] = y_{i+1}`,
//! since the first Y iterate is the image of x_0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyMetric, SequenceTrace, TGrid};
use crate::maps::MapQuadruple;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceWitness {
    /// Which recurrence, e.g. `"k mu(x_n,x_n+1) >= min{mu(x_n-1,x_n), nu(y_n,y_n+1)}"`.
    pub equation: String,
    pub n: usize,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `k·lhs − rhs`; negative on violation.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceReport {
    pub k: f64,
    pub evaluated: usize,
    pub violations: usize,
    pub worst_margin: f64,
    pub worst: Option<RecurrenceWitness>,
    pub first_violation: Option<RecurrenceWitness>,
    pub grid: Vec<f64>,
}

impl RecurrenceReport {
    pub fn clean(&self) -> bool {
        self.violations == 0
    }
}

struct Tally {
    k: f64,
    evaluated: usize,
    violations: usize,
    worst: Option<RecurrenceWitness>,
    first_violation: Option<RecurrenceWitness>,
}

impl Tally {
    fn new(k: f64) -> Self {
        Self { k, evaluated: 0, violations: 0, worst: None, first_violation: None }
    }

    /// A step violates when `rhs / lhs > k`, the same ratio k̂ maximizes.
    fn check(&mut self, equation: &str, n: usize, t: f64, lhs: f64, rhs: f64) {
        self.evaluated += 1;
        let margin = self.k * lhs - rhs;
        let wit = || RecurrenceWitness { equation: equation.to_string(), n, t, lhs, rhs, margin };
        if rhs / lhs > self.k {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(wit());
            }
        }
        if self.worst.as_ref().is_none_or(|w| margin < w.margin) {
            self.worst = Some(wit());
        }
    }

    fn finish(self, grid: &TGrid) -> RecurrenceReport {
        RecurrenceReport {
            k: self.k,
            evaluated: self.evaluated,
            violations: self.violations,
            worst_margin: self.worst.as_ref().map_or(f64::INFINITY, |w| w.margin),
            worst: self.worst,
            first_violation: self.first_violation,
            grid: grid.values().to_vec(),
        }
    }
}

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::Usage(format!("k = {k} must be a positive number")))
    }
}

fn check_lengths(trace_x: &SequenceTrace, trace_y: &SequenceTrace) -> Result<()> {
    if trace_x.len() < 2 || trace_y.len() < 2 {
        return Err(Error::Usage(format!(
            "recurrence check needs at least 2 points per trace, got {} and {}",
            trace_x.len(),
            trace_y.len()
        )));
    }
    Ok(())
}

/// Pair scheme (x_n = ST x_{n−1}, y_n = T x_{n−1}):
///
/// k μ(x_n, x_{n+1}, t) ≥ min{μ(x_{n−1}, x_n, t), ν(y_n, y_{n+1}, t)}   for n ≥ 1
/// k ν(y_n, y_{n+1}, t) ≥ min{ν(y_{n−1}, y_n, t), μ(x_{n−1}, x_n, t)}   for n ≥ 2
pub fn check_recurrence_thm1(
    trace_x: &SequenceTrace,
    trace_y: &SequenceTrace,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    k: f64,
    grid: &TGrid,
) -> Result<RecurrenceReport> {
    check_k(k)?;
    check_lengths(trace_x, trace_y)?;
    let xs = trace_x.points();
    let ys = trace_y.points();
    let y = |n: usize| &ys[n - 1];
    let mut tally = Tally::new(k);

    for n in 1..xs.len() {
        for t in grid.iter() {
            if n + 1 < xs.len() && n < ys.len() {
                let lhs = mu.eval(&xs[n], &xs[n + 1], t)?;
                let rhs = mu.eval(&xs[n - 1], &xs[n], t)?.min(nu.eval(y(n), y(n + 1), t)?);
                tally.check("k mu(x_n,x_n+1) >= min{mu(x_n-1,x_n), nu(y_n,y_n+1)}", n, t, lhs, rhs);
            }
            if n >= 2 && n < ys.len() {
                let lhs = nu.eval(y(n), y(n + 1), t)?;
                let rhs = nu.eval(y(n - 1), y(n), t)?.min(mu.eval(&xs[n - 1], &xs[n], t)?);
                tally.check("k nu(y_n,y_n+1) >= min{nu(y_n-1,y_n), mu(x_n-1,x_n)}", n, t, lhs, rhs);
            }
        }
    }
    Ok(tally.finish(grid))
}

/// Interleaved scheme (y_{2n−1} = A x_{2n−2}, x_{2n−1} = S y_{2n−1},
/// y_{2n} = B x_{2n−1}, x_{2n} = T y_{2n}). Checks, wherever the indices
/// exist,
///
/// k μ(x_{2n}, x_{2n+1}) ≥ min{μ(x_{2n−1}, x_{2n}), ν(y_{2n}, y_{2n+1})}
/// k μ(x_{2n−1}, x_{2n}) ≥ min{μ(x_{2n−2}, x_{2n−1}), ν(y_{2n−1}, y_{2n})}
/// k ν(y_{2n}, y_{2n+1}) ≥ min{μ(x_{2n+1}, x_{2n}), ν(y_{2n−1}, y_{2n})}
/// k ν(y_{2n}, y_{2n−1}) ≥ min{μ(x_{2n}, x_{2n−1}), ν(y_{2n−2}, y_{2n−1})}
///
/// The traces must follow the interleaved scheme exactly under `quad`.
pub fn check_recurrence_thm2(
    trace_x: &SequenceTrace,
    trace_y: &SequenceTrace,
    quad: &MapQuadruple,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    k: f64,
    grid: &TGrid,
) -> Result<RecurrenceReport> {
    check_k(k)?;
    check_lengths(trace_x, trace_y)?;
    let xs = trace_x.points();
    let ys = trace_y.points();
    verify_interleaving(xs, ys, quad, mu, nu)?;
    let y = |m: usize| &ys[m - 1];
    let has_x = |m: usize| m < xs.len();
    let has_y = |m: usize| m >= 1 && m <= ys.len();
    let mut tally = Tally::new(k);

    for n in 1.. {
        if !has_x(2 * n - 1) {
            break;
        }
        for t in grid.iter() {
            if has_x(2 * n + 1) && has_y(2 * n + 1) {
                let lhs = mu.eval(&xs[2 * n], &xs[2 * n + 1], t)?;
                let rhs = mu.eval(&xs[2 * n - 1], &xs[2 * n], t)?.min(nu.eval(y(2 * n), y(2 * n + 1), t)?);
                tally.check("k mu(x_2n,x_2n+1) >= min{mu(x_2n-1,x_2n), nu(y_2n,y_2n+1)}", n, t, lhs, rhs);
            }
            if has_x(2 * n) && has_y(2 * n) {
                let lhs = mu.eval(&xs[2 * n - 1], &xs[2 * n], t)?;
                let rhs = mu.eval(&xs[2 * n - 2], &xs[2 * n - 1], t)?.min(nu.eval(y(2 * n - 1), y(2 * n), t)?);
                tally.check("k mu(x_2n-1,x_2n) >= min{mu(x_2n-2,x_2n-1), nu(y_2n-1,y_2n)}", n, t, lhs, rhs);
            }
            if has_x(2 * n + 1) && has_y(2 * n + 1) {
                let lhs = nu.eval(y(2 * n), y(2 * n + 1), t)?;
                let rhs = mu.eval(&xs[2 * n + 1], &xs[2 * n], t)?.min(nu.eval(y(2 * n - 1), y(2 * n), t)?);
                tally.check("k nu(y_2n,y_2n+1) >= min{mu(x_2n+1,x_2n), nu(y_2n-1,y_2n)}", n, t, lhs, rhs);
            }
            if n >= 2 && has_x(2 * n) && has_y(2 * n) {
                let lhs = nu.eval(y(2 * n), y(2 * n - 1), t)?;
                let rhs = mu.eval(&xs[2 * n], &xs[2 * n - 1], t)?.min(nu.eval(y(2 * n - 2), y(2 * n - 1), t)?);
                tally.check("k nu(y_2n,y_2n-1) >= min{mu(x_2n,x_2n-1), nu(y_2n-2,y_2n-1)}", n, t, lhs, rhs);
            }
        }
    }
    Ok(tally.finish(grid))
}

fn verify_interleaving(
    xs: &[crate::fuzzy::Point],
    ys: &[crate::fuzzy::Point],
    quad: &MapQuadruple,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
) -> Result<()> {
    for (i, y) in ys.iter().enumerate() {
        // y_{i+1} is A x_i for odd i+1, B x_i for even i+1
        if i >= xs.len() {
            break;
        }
        let expect = if (i + 1) % 2 == 1 { quad.apply_a(&xs[i], nu)? } else { quad.apply_b(&xs[i], nu)? };
        if &expect != y {
            return Err(Error::Usage(format!("trace_y[{i}] is not the image of x_{i} under the scheme")));
        }
        if i + 1 < xs.len() {
            let expect = if (i + 1) % 2 == 1 { quad.apply_s(y, mu)? } else { quad.apply_t(y, mu)? };
            if expect != xs[i + 1] {
                return Err(Error::Usage(format!("x_{} is not the image of y_{} under the scheme", i + 1, i + 1)));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{CarrierSpace, Point};
    use crate::maps::{MapPair, MapQuadruple, Mapping};

    fn fm() -> FuzzyMetric {
        FuzzyMetric::induced_standard(CarrierSpace::real_line())
    }

    fn pair_traces(pair: &MapPair, x0: f64, steps: usize) -> (SequenceTrace, SequenceTrace) {
        let f = fm();
        let mut xs = vec![Point::scalar(x0)];
        let mut ys = vec![];
        for _ in 0..steps {
            let y = pair.apply_t(xs.last().unwrap(), &f).unwrap();
            xs.push(pair.apply_s(&y, &f).unwrap());
            ys.push(y);
        }
        let g = TGrid::default();
        (SequenceTrace::build(xs, &f, &g).unwrap(), SequenceTrace::build(ys, &f, &g).unwrap())
    }

    #[test]
    fn constant_maps_clean_after_first_step() {
        let pair = MapPair::new(Mapping::constant(5.0), Mapping::constant(2.0)).unwrap();
        let (tx, ty) = pair_traces(&pair, 17.0, 4);
        let rep = check_recurrence_thm1(&tx, &ty, &fm(), &fm(), 0.5, &TGrid::default()).unwrap();
        // From n = 1 on every step nearness is 1: rhs is min{μ(x_0,x_1), 1}
        // at n = 1 and 1 afterwards, so only the k·1 ≥ 1 steps fail.
        assert!(rep.evaluated > 0);
        let rep_k1 = check_recurrence_thm1(&tx, &ty, &fm(), &fm(), 1.0, &TGrid::default()).unwrap();
        assert!(rep_k1.clean());
        assert!(!rep.clean());
    }

    #[test]
    fn near_one_k_on_contraction() {
        let pair = MapPair::new(Mapping::scalar_affine(0.5, 1.0), Mapping::scalar_affine(1.0 / 3.0, 1.0)).unwrap();
        let (tx, ty) = pair_traces(&pair, 0.0, 10);
        let rep = check_recurrence_thm1(&tx, &ty, &fm(), &fm(), 1.0 - 1e-12, &TGrid::default()).unwrap();
        assert!(rep.clean(), "{:?}", rep.first_violation);
        let tight = check_recurrence_thm1(&tx, &ty, &fm(), &fm(), 1e-3, &TGrid::default()).unwrap();
        assert!(!tight.clean());
        let w = tight.first_violation.unwrap();
        assert!(w.margin < 0.0);
    }

    #[test]
    fn usage_errors() {
        let pair = MapPair::new(Mapping::constant(5.0), Mapping::constant(2.0)).unwrap();
        let (tx, ty) = pair_traces(&pair, 17.0, 1);
        assert!(matches!(
            check_recurrence_thm1(&tx, &ty, &fm(), &fm(), 0.5, &TGrid::default()),
            Err(Error::Usage(_))
        ));
        let (tx, ty) = pair_traces(&pair, 17.0, 3);
        assert!(matches!(
            check_recurrence_thm1(&tx, &ty, &fm(), &fm(), 0.0, &TGrid::default()),
            Err(Error::Usage(_))
        ));
    }

    fn quad_traces(q: &MapQuadruple, x0: f64, steps: usize) -> (SequenceTrace, SequenceTrace) {
        let f = fm();
        let mut xs = vec![Point::scalar(x0)];
        let mut ys = vec![];
        for n in 1..=steps {
            let x = xs.last().unwrap();
            let (y, next) = if n % 2 == 1 {
                let y = q.apply_a(x, &f).unwrap();
                let s = q.apply_s(&y, &f).unwrap();
                (y, s)
            } else {
                let y = q.apply_b(x, &f).unwrap();
                let t = q.apply_t(&y, &f).unwrap();
                (y, t)
            };
            ys.push(y);
            xs.push(next);
        }
        let g = TGrid::default();
        (SequenceTrace::build(xs, &f, &g).unwrap(), SequenceTrace::build(ys, &f, &g).unwrap())
    }

    #[test]
    fn constant_quadruple_needs_k_one() {
        let q = MapQuadruple::new(Mapping::constant(2.0), Mapping::constant(2.0), Mapping::constant(-1.0), Mapping::constant(-1.0))
            .unwrap();
        let (tx, ty) = quad_traces(&q, 9.0, 6);
        let grid = TGrid::default();
        let clean = check_recurrence_thm2(&tx, &ty, &q, &fm(), &fm(), 1.0, &grid).unwrap();
        assert!(clean.clean() && clean.evaluated > 0);
        let half = check_recurrence_thm2(&tx, &ty, &q, &fm(), &fm(), 0.5, &grid).unwrap();
        assert!(!half.clean());
        assert!(half.worst_margin >= -0.5 - 1e-15);
    }

    #[test]
    fn quadruple_trace_near_one_k() {
        let q = MapQuadruple::new(
            Mapping::scalar_affine(0.5, 1.5),
            Mapping::scalar_affine(-0.3, 2.3),
            Mapping::scalar_affine(0.25, 0.5),
            Mapping::scalar_affine(0.6, -0.2),
        )
        .unwrap();
        let (tx, ty) = quad_traces(&q, 10.0, 12);
        let grid = TGrid::default();
        assert!(check_recurrence_thm2(&tx, &ty, &q, &fm(), &fm(), 1.0, &grid).unwrap().clean());
        let tight = check_recurrence_thm2(&tx, &ty, &q, &fm(), &fm(), 0.1, &grid).unwrap();
        assert!(!tight.clean() && tight.first_violation.unwrap().margin < 0.0);
    }

    #[test]
    fn quadruple_trace_must_follow_the_scheme() {
        let q = MapQuadruple::new(
            Mapping::scalar_affine(0.5, 0.0),
            Mapping::scalar_affine(0.2, 0.0),
            Mapping::scalar_affine(0.5, 0.0),
            Mapping::scalar_affine(0.2, 0.0),
        )
        .unwrap();
        let swapped = MapQuadruple::new(q.b.clone(), q.a.clone(), q.t.clone(), q.s.clone()).unwrap();
        let (tx, ty) = quad_traces(&swapped, 1.0, 4);
        assert!(matches!(
            check_recurrence_thm2(&tx, &ty, &q, &fm(), &fm(), 0.9, &TGrid::default()),
            Err(Error::Usage(_))
        ));
    }
}
