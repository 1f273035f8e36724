//! Loading a JSON run configuration and driving the library from it, the
//! way the `fuzzyfix` binary does.
//!
//! ```text
//! cargo run --example run_config -- configs/quadruple.json
//! ```

use fuzzy_fixpoint::cli::RunConfig;
use fuzzy_fixpoint::rng::DetRng;
use fuzzy_fixpoint::solver::solve;

const INLINE: &str = r#"{
  "seed": 3,
  "carrier": {"x": {"kind": "real", "dim": 2}},
  "metric": {"x": {"form": "exponential"}},
  "maps": {
    "scheme": "pair",
    "t": {"kind": "affine", "matrix": [[0.3, 0.1], [0.0, 0.4]], "offset": [1.0, -1.0]},
    "s": {"kind": "affine", "matrix": [[0.5, 0.0], [0.2, 0.5]], "offset": [0.0, 2.0]}
  },
  "grid": {"t_max": 1000.0},
  "solve": {"eps": 1e-10, "x0": [5.0, 5.0]}
}"#;

fn main() -> fuzzy_fixpoint::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => RunConfig::load(path.as_ref())?,
        None => RunConfig::parse(INLINE)?,
    };
    let spaces = cfg.spaces()?;
    let grid = cfg.grid(None)?;
    let solve_cfg = cfg.solve.build(grid.clone())?;
    let x0 = match &cfg.solve.x0 {
        Some(p) => p.clone(),
        None => spaces.mu.carrier().sample(&mut DetRng::new(cfg.seed.unwrap_or(42))),
    };

    println!("grid: {} points up to {}", grid.len(), grid.t_max());
    let r = solve(cfg.problem()?, &spaces.mu, &spaces.nu, &x0, &solve_cfg)?;
    println!("{:?} after {} iterations", r.status, r.iterations);
    println!("z = {}\nw = {}", r.z, r.w);
    println!("all relations hold: {}", r.conclusions.passed);

    match RunConfig::parse(r#"{"solve": {"epsilon": 1e-6}}"#) {
        Err(e) => println!("\na misspelt key is rejected: {e}"),
        Ok(_) => println!("\nmisspelt key accepted"),
    }
    Ok(())
}
