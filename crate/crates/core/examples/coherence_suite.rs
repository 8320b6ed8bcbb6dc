//! Every coherence diagram over random instances, in both semirings.

use distcat::coherence::run_suite;
use num_complex::Complex64;

fn main() -> Result<(), distcat::error::Error> {
    let seed = 2024;
    let mut reports = run_suite::<Complex64>(seed, 25, 5)?;
    reports.extend(run_suite::<bool>(seed, 25, 5)?);
    let mut worst = std::collections::BTreeMap::new();
    for r in &reports {
        let key = (r.diagram.clone(), r.semiring.clone());
        let e = worst.entry(key).or_insert((0.0f64, true));
        e.0 = e.0.max(r.discrepancy);
        e.1 &= r.pass;
    }
    for ((diagram, semiring), (d, pass)) in worst {
        println!("{diagram:<22} {semiring:<12} worst {d:.2e} {}", if pass { "ok" } else { "FAILED" });
    }
    Ok(())
}
