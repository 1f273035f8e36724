//! The step recurrences that drive the convergence argument, checked along
//! an actual trace: once with the k̂ measured on that trace, once with a
//! constant that is too small.

use fuzzy_fixpoint::fuzzy::{CarrierSpace, FuzzyMetric, Point, TGrid};
use fuzzy_fixpoint::hypotheses::{check_recurrence_thm1, estimate_k_thm1, estimate_k_thm1_dual, SampleSet};
use fuzzy_fixpoint::maps::{MapPair, Mapping};
use fuzzy_fixpoint::solver::{iterate_pair, SolveConfig};

fn main() -> fuzzy_fixpoint::Result<()> {
    let fm = FuzzyMetric::induced_standard(CarrierSpace::real_line());
    let grid = TGrid::default();
    let pair = MapPair::new(Mapping::scalar_affine(0.7, -2.0), Mapping::scalar_affine(0.8, 3.0))?;
    let r = iterate_pair(&pair, &fm, &fm, &Point::scalar(25.0), &SolveConfig::default())?;
    println!("{} x-points, {} y-points, limit z = {}", r.trace_x.len(), r.trace_y.len(), r.z);

    let sample = SampleSet::new(r.trace_x.points().to_vec(), r.trace_y.points().to_vec(), grid.clone()).include_diagonal();
    let primal = estimate_k_thm1(&pair, &fm, &fm, &sample)?.k_hat;
    let dual = estimate_k_thm1_dual(&pair, &fm, &fm, &sample)?.k_hat;
    let k = primal.max(dual);
    println!("k_hat on the trace: {primal:.12} (x side), {dual:.12} (y side)");

    for k in [k, k / 2.0] {
        let rep = check_recurrence_thm1(&r.trace_x, &r.trace_y, &fm, &fm, k, &grid)?;
        println!("k = {k:.6}: {} of {} inequalities violated", rep.violations, rep.evaluated);
        if let Some(w) = rep.first_violation {
            println!("  first: {} at n = {}, t = {}: k·{:.6} < {:.6}", w.equation, w.n, w.t, w.lhs, w.rhs);
        }
    }
    Ok(())
}
