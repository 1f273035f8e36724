//! Iterating a pair T: X → Y, S: Y → X to the fixed points z = STz and
//! w = TSw, with the conclusion residuals and a uniqueness probe.

use fuzzy_fixpoint::fuzzy::{CarrierSpace, FuzzyMetric, Point};
use fuzzy_fixpoint::maps::{MapPair, Mapping, Problem};
use fuzzy_fixpoint::solver::{iterate_pair, uniqueness_probe, FixedPointResult, SolveConfig};

fn report(label: &str, r: &FixedPointResult) {
    println!("{label}: {:?} after {} iterations, z = {}, w = {}", r.status, r.iterations, r.z, r.w);
    for res in &r.conclusions.residuals {
        println!("    {:<8} min over t = {:.12}", res.name, res.value);
    }
    if let Some(note) = &r.note {
        println!("    {note}");
    }
}

fn main() -> fuzzy_fixpoint::Result<()> {
    let fm = FuzzyMetric::induced_standard(CarrierSpace::real_line());
    let cfg = SolveConfig::default();

    // T(x) = x/2 + 1, S(y) = y/3 + 1: z = 1.6, w = 1.8.
    let linear = MapPair::new(Mapping::scalar_affine(0.5, 1.0), Mapping::scalar_affine(1.0 / 3.0, 1.0))?;
    let r = iterate_pair(&linear, &fm, &fm, &Point::scalar(0.0), &cfg)?;
    report("linear", &r);
    let steps: Vec<String> = r.trace_x.points().iter().take(6).map(|p| format!("{p}")).collect();
    println!("    x_0.. = {}", steps.join(", "));

    let starts: Vec<Point> = [-100.0, -1.0, 0.0, 7.5, 1e3].into_iter().map(Point::scalar).collect();
    let probe = uniqueness_probe(&Problem::Pair(linear), &fm, &fm, &starts, &cfg)?;
    println!(
        "    uniqueness over {} starts: {:?} (max spread {:.1e})",
        starts.len(),
        probe.verdict,
        probe.max_z_distance.max(probe.max_w_distance)
    );

    let constant = MapPair::new(Mapping::constant(5.0), Mapping::constant(2.0))?;
    report("constant", &iterate_pair(&constant, &fm, &fm, &Point::scalar(-3.0), &cfg)?);

    let doubling = MapPair::new(Mapping::scalar_affine(2.0, 0.0), Mapping::scalar_affine(2.0, 1.0))?;
    report("doubling", &iterate_pair(&doubling, &fm, &fm, &Point::scalar(1.0), &cfg)?);
    Ok(())
}
