//! The three continuous t-norms and a sampled check of their axioms.
//!
//! The arithmetic mean is not a t-norm; running it through the same checker
//! shows what a reported violation looks like.

use fuzzy_fixpoint::fuzzy::{check_tnorm_axioms, TNorm, TriangularNorm};

struct Average;

impl TriangularNorm for Average {
    fn name(&self) -> &str {
        "average"
    }

    fn combine(&self, a: f64, b: f64) -> f64 {
        (a + b) / 2.0
    }
}

fn main() -> fuzzy_fixpoint::Result<()> {
    println!("{:<12} {:>8} {:>8} {:>8}", "t-norm", "T(.3,.6)", "T(.7,.8)", "T(.5,1)");
    for op in TNorm::ALL {
        println!(
            "{:<12} {:>8.4} {:>8.4} {:>8.4}",
            op.name(),
            op.apply(0.3, 0.6)?,
            op.apply(0.7, 0.8)?,
            op.apply(0.5, 1.0)?
        );
    }
    println!();

    for op in TNorm::ALL {
        let r = check_tnorm_axioms(&op, 1000, 42);
        println!("{:<24} {} checks, {} violations", r.subject, r.checks, r.violations.len());
    }

    let r = check_tnorm_axioms(&Average, 1000, 42);
    println!("{:<24} {} checks, {} violations", r.subject, r.checks, r.violations.len());
    if let Some(v) = r.violations.first() {
        println!("  first: {} at {:?}", v.axiom, v.witness.params);
    }

    match TNorm::Product.apply(1.2, 0.5) {
        Err(e) => println!("\nout-of-range argument: {e}"),
        Ok(v) => println!("\nunexpected value {v}"),
    }
    Ok(())
}
