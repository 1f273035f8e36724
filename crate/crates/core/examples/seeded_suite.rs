//! A seeded batch of generated instances: contractive pairs and
//! quadruples that must converge to their anchors, plus expansive pairs
//! that must be flagged as diverging. Running twice with one seed gives
//! byte-identical JSON.

use fuzzy_fixpoint::harness::{run_suite, seeded_specs, InstanceSpec, SuiteConfig};

fn main() -> fuzzy_fixpoint::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let mut specs = seeded_specs(&InstanceSpec::pair(0), seed, 8);
    specs.extend(seeded_specs(&InstanceSpec::quadruple(0), seed + 100, 4));
    specs.extend(seeded_specs(&InstanceSpec::expansive_pair(0), seed + 200, 3));

    let cfg = SuiteConfig::default();
    let verdict = run_suite(&specs, &cfg)?;
    println!("{:>3} {:>20} {:<10} {:<8} {:>10} {:>5} {:>10}  ok", "#", "seed", "scheme", "family", "status", "iter", "k_hat");
    for r in &verdict.rows {
        println!(
            "{:>3} {:>20} {:<10} {:<8} {:>10} {:>5} {:>10}  {}",
            r.index,
            r.seed,
            format!("{:?}", r.scheme),
            format!("{:?}", r.family),
            format!("{:?}", r.status),
            r.iterations,
            r.k_hat.map_or("-".into(), |k| format!("{k:.4}")),
            if r.passed { "yes" } else { "NO" }
        );
    }
    let a = &verdict.aggregate;
    println!("\n{} of {} instances passed", a.passed, a.instances);

    let again = run_suite(&specs, &cfg)?;
    let same = serde_json::to_string(&verdict).ok() == serde_json::to_string(&again).ok();
    println!("rerun identical: {same}");
    Ok(())
}
