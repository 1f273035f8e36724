//! Induced fuzzy metrics on ℝ² and a finite table metric, checked against
//! the fuzzy metric axioms on seeded samples.

use fuzzy_fixpoint::fuzzy::{
    check_fm_axioms, CarrierSpace, CrispMetric, FuzzyMetric, NearnessTable, Point, TGrid, TNorm,
};

fn main() -> fuzzy_fixpoint::Result<()> {
    let grid = TGrid::default();
    let plane = CarrierSpace::real(2, CrispMetric::Euclidean)?;
    let (x, y) = (Point::Vector(vec![0.0, 0.0]), Point::Vector(vec![3.0, 4.0]));

    for fm in [
        FuzzyMetric::induced_standard(plane.clone()),
        FuzzyMetric::induced_exponential(plane.clone()),
    ] {
        print!("{:<12}", fm.form_name());
        for t in [0.1, 1.0, 5.0, 50.0] {
            print!("  M(x,y,{t}) = {:.4}", fm.eval(&x, &y, t)?);
        }
        println!();
        for op in TNorm::ALL {
            let r = check_fm_axioms(&fm, &op, 300, &grid, 7);
            println!("  {:<48} {:>7} checks  {} violations", r.subject, r.checks, r.violations.len());
        }
    }

    // Three points whose self-nearness at point 0 is 0.9 instead of 1.
    let carrier = CarrierSpace::finite(vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]])?;
    let constant = |v: f64| vec![v, v];
    let values = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| match (i, j) {
                    (0, 0) => constant(0.9),
                    _ if i == j => constant(1.0),
                    _ => constant(0.5),
                })
                .collect()
        })
        .collect();
    let table = NearnessTable { grid: TGrid::new(vec![0.01, 100.0])?, values };
    let broken = FuzzyMetric::table(carrier, table)?;
    let r = check_fm_axioms(&broken, &TNorm::Minimum, 200, &grid, 7);
    println!("\n{}: {} violations", r.subject, r.violations.len());
    for v in r.violations.iter().take(3) {
        println!("  {} at {:?}, t = {:?}", v.axiom, v.witness.points, v.witness.params);
    }
    Ok(())
}
