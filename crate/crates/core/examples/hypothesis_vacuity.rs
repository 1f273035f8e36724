//! The pair hypothesis is scanned on nested grids with growing t_max.
//!
//! For induced metrics every nearness tends to 1 as t grows, so the ratio at
//! the top of the grid approaches 1 and k̂ creeps upward with t_max even for
//! a strict contraction. A k̂ below 1 is therefore a statement about the
//! scanned grid, not about all t.

use fuzzy_fixpoint::fuzzy::{CarrierSpace, FuzzyMetric, Point, TGrid};
use fuzzy_fixpoint::hypotheses::{estimate_k_thm1, SampleSet};
use fuzzy_fixpoint::maps::{MapPair, Mapping};

fn main() -> fuzzy_fixpoint::Result<()> {
    let fm = FuzzyMetric::induced_standard(CarrierSpace::real_line());
    let pair = MapPair::new(Mapping::scalar_affine(0.5, 1.0), Mapping::scalar_affine(1.0 / 3.0, 1.0))?;
    let xs: Vec<Point> = (0..9).map(|i| Point::scalar(0.4 * i as f64)).collect();

    println!("{:>10} {:>7} {:>20} {:>10}", "t_max", "points", "k_hat", "witness t");
    let mut grid = TGrid::default();
    for t_max in [1e2, 1e3, 1e4, 1e5, 1e6] {
        if t_max > grid.t_max() {
            grid = grid.extend_to(t_max)?;
        }
        let rep = estimate_k_thm1(&pair, &fm, &fm, &SampleSet::new(xs.clone(), xs.clone(), grid.clone()))?;
        let wt = rep.witness.as_ref().map(|w| w.tuple.t).unwrap_or(f64::NAN);
        println!("{t_max:>10.0e} {:>7} {:>20.16} {wt:>10.0e}", grid.len(), rep.k_hat);
    }
    Ok(())
}
