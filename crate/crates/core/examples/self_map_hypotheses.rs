//! When all four maps act on one space, the quadruple hypothesis has a
//! simpler self-map form. Both forms are estimated on the same sample, and
//! the common fixed point is then computed.
//!
//! Every composite here contracts, yet the sampled constants land at or
//! above 1: the quadruple inequalities are sensitive to where the sample
//! sits relative to the fixed point.

use fuzzy_fixpoint::fuzzy::{CarrierSpace, FuzzyMetric, Point, TGrid};
use fuzzy_fixpoint::hypotheses::{estimate_k_cor3, estimate_k_thm2, HypothesisReport, SampleSet};
use fuzzy_fixpoint::maps::{MapQuadruple, Mapping};
use fuzzy_fixpoint::solver::{iterate_quadruple, SolveConfig};
use fuzzy_fixpoint::Result;

fn show(r: Result<HypothesisReport>) {
    match r {
        Ok(r) => println!(
            "  {:<42} k_hat = {:>9.5}  ({} tuples, {} skipped)",
            r.inequality, r.k_hat, r.evaluated_count, r.skipped_count
        ),
        Err(e) => println!("  error: {e}"),
    }
}

fn main() -> Result<()> {
    let fm = FuzzyMetric::induced_standard(CarrierSpace::real_line());
    let quad = MapQuadruple::new(
        Mapping::scalar_affine(0.4, 1.0),
        Mapping::scalar_affine(0.4, 1.0),
        Mapping::scalar_affine(0.5, 0.0),
        Mapping::scalar_affine(0.5, 0.0),
    )?;

    let points: Vec<Point> = (-4..=4).map(|i| Point::scalar(i as f64 * 0.75)).collect();
    let sample = SampleSet::new(points.clone(), points, TGrid::log_spaced(0.01, 100.0, 9)?);

    println!("self-map form:");
    let (sx, sy) = estimate_k_cor3(&quad, &fm, &sample);
    show(sx);
    show(sy);

    println!("general form:");
    let (gx, gy) = estimate_k_thm2(&quad, &fm, &fm, &sample);
    show(gx);
    show(gy);

    let r = iterate_quadruple(&quad, &fm, &fm, &Point::scalar(0.0), &SolveConfig::default())?;
    println!("\n{:?} after {} iterations: z = {}, w = {}", r.status, r.iterations, r.z, r.w);
    Ok(())
}
