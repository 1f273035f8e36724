//! Contraction inequalities for a pair T : X → Y, S : Y → X:
//!
//! k μ(STx, STx′, t) ≥ min{μ(x, x′, t), μ(x, STx, t), μ(x′, STx′, t), ν(Tx, Tx′, t)}
//! k ν(TSy, TSy′, t) ≥ min{ν(y, y′, t), ν(y, TSy, t), ν(y′, TSy′, t), μ(Sy, Sy′, t)}

use super::report::{HypothesisReport, RatioScan, SampleSet, Tuple};
use crate::error::Result;
use crate::fuzzy::{FuzzyMetric, Point};
use crate::maps::MapPair;

/// One point with its images under the first map and the composite.
struct Imaged {
    p: Point,
    first: Point,
    round: Point,
}

/// Returns `(lhs, rhs)` = (μ(STx, STx′, t), min{…}); the inequality holds for
/// k iff `k·lhs ≥ rhs`.
pub fn thm1_lhs_rhs(
    pair: &MapPair,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    x: &Point,
    x2: &Point,
    t: f64,
) -> Result<(f64, f64)> {
    let a = image_x(pair, mu, nu, x)?;
    let b = image_x(pair, mu, nu, x2)?;
    terms(mu, nu, &a, &b, t)
}

/// Mirror of [`thm1_lhs_rhs`] on Y: (ν(TSy, TSy′, t), min{…}).
pub fn thm1_dual_lhs_rhs(
    pair: &MapPair,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    y: &Point,
    y2: &Point,
    t: f64,
) -> Result<(f64, f64)> {
    let a = image_y(pair, mu, nu, y)?;
    let b = image_y(pair, mu, nu, y2)?;
    terms(nu, mu, &a, &b, t)
}

fn image_x(pair: &MapPair, mu: &FuzzyMetric, nu: &FuzzyMetric, x: &Point) -> Result<Imaged> {
    mu.carrier().check(x)?;
    let first = pair.apply_t(x, nu)?;
    let round = pair.apply_s(&first, mu)?;
    Ok(Imaged {
        p: x.clone(),
        first,
        round,
    })
}

fn image_y(pair: &MapPair, mu: &FuzzyMetric, nu: &FuzzyMetric, y: &Point) -> Result<Imaged> {
    nu.carrier().check(y)?;
    let first = pair.apply_s(y, mu)?;
    let round = pair.apply_t(&first, nu)?;
    Ok(Imaged {
        p: y.clone(),
        first,
        round,
    })
}

/// `home` is the metric of the space the points live in, `other` the one of
/// the space their first image lives in.
fn terms(home: &FuzzyMetric, other: &FuzzyMetric, a: &Imaged, b: &Imaged, t: f64) -> Result<(f64, f64)> {
    let lhs = home.eval(&a.round, &b.round, t)?;
    let rhs = home
        .eval(&a.p, &b.p, t)?
        .min(home.eval(&a.p, &a.round, t)?)
        .min(home.eval(&b.p, &b.round, t)?)
        .min(other.eval(&a.first, &b.first, t)?);
    Ok((lhs, rhs))
}

fn scan(
    home: &FuzzyMetric,
    other: &FuzzyMetric,
    imaged: &[Imaged],
    samples: &SampleSet,
    on_x: bool,
) -> Result<RatioScan> {
    let mut scan = RatioScan::new(samples.record_table);
    let nt = samples.grid.len();
    for a in imaged {
        for b in imaged {
            if samples.exclude_diagonal && home.same_point(&a.p, &b.p)? {
                scan.skip_many(nt);
                continue;
            }
            for t in samples.grid.iter() {
                let (lhs, rhs) = terms(home, other, a, b, t)?;
                let tuple = || {
                    if on_x {
                        Tuple { x: Some(a.p.clone()), x2: Some(b.p.clone()), y: None, y2: None, t }
                    } else {
                        Tuple { x: None, x2: None, y: Some(a.p.clone()), y2: Some(b.p.clone()), t }
                    }
                };
                scan.push(tuple, lhs, rhs);
            }
        }
    }
    Ok(scan)
}

/// k̂ for the X-side inequality over ordered pairs of `samples.points_x`
/// and every grid t.
pub fn estimate_k_thm1(
    pair: &MapPair,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    samples: &SampleSet,
) -> Result<HypothesisReport> {
    let imaged = samples
        .points_x
        .iter()
        .map(|x| image_x(pair, mu, nu, x))
        .collect::<Result<Vec<_>>>()?;
    scan(mu, nu, &imaged, samples, true)?.finish("pair/X: k mu(STx,STx',t) >= min{...}", samples, samples.exclude_diagonal)
}

/// k̂ for the Y-side inequality over ordered pairs of `samples.points_y`.
pub fn estimate_k_thm1_dual(
    pair: &MapPair,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    samples: &SampleSet,
) -> Result<HypothesisReport> {
    let imaged = samples
        .points_y
        .iter()
        .map(|y| image_y(pair, mu, nu, y))
        .collect::<Result<Vec<_>>>()?;
    scan(nu, mu, &imaged, samples, false)?.finish("pair/Y: k nu(TSy,TSy',t) >= min{...}", samples, samples.exclude_diagonal)
}
