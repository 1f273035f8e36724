//! Common fixed points of a quadruple A, B: X → Y and S, T: Y → X, found by
//! the interleaved iteration y = Ax, x = Sy on odd steps and y = Bx, x = Ty
//! on even steps.
//!
//! The first quadruple is built so that z = 1, w = 2 solve all eight
//! relations. The second has no common fixed point and the iteration locks
//! into a two-cycle.

use fuzzy_fixpoint::fuzzy::{CarrierSpace, FuzzyMetric, Point};
use fuzzy_fixpoint::maps::{MapQuadruple, Mapping};
use fuzzy_fixpoint::solver::{iterate_quadruple, SolveConfig};

fn main() -> fuzzy_fixpoint::Result<()> {
    let fm = FuzzyMetric::induced_standard(CarrierSpace::real_line());
    let cfg = SolveConfig::default();

    let common = MapQuadruple::new(
        Mapping::scalar_affine(0.5, 1.5),
        Mapping::scalar_affine(-0.3, 2.3),
        Mapping::scalar_affine(0.25, 0.5),
        Mapping::scalar_affine(0.6, -0.2),
    )?;
    let r = iterate_quadruple(&common, &fm, &fm, &Point::scalar(10.0), &cfg)?;
    println!("shared fixed point: {:?} after {} iterations", r.status, r.iterations);
    println!("  z = {}, w = {}", r.z, r.w);
    for res in &r.conclusions.residuals {
        println!("  {:<8} {}", res.name, if res.passed { "holds" } else { "fails" });
    }

    let cycling = MapQuadruple::new(
        Mapping::scalar_affine(0.5, 1.0),
        Mapping::scalar_affine(1.0 / 3.0, 1.0),
        Mapping::scalar_affine(0.25, 1.0),
        Mapping::scalar_affine(0.2, 1.0),
    )?;
    let r = iterate_quadruple(&cycling, &fm, &fm, &Point::scalar(0.0), &SolveConfig { max_iter: 200, ..cfg })?;
    println!("\nno shared fixed point: {:?} after {} iterations", r.status, r.iterations);
    let xs = r.trace_x.points();
    let tail: Vec<String> = xs[xs.len() - 4..].iter().map(|p| format!("{p}")).collect();
    println!("  last x: {}", tail.join(", "));
    println!("  (the cycle is 22/17 = {:.6}, 24/17 = {:.6})", 22.0 / 17.0, 24.0 / 17.0);
    let failed: Vec<&str> = r.conclusions.residuals.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    println!("  failing relations: {}", failed.join(", "));
    Ok(())
}
