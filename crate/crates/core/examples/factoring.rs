//! Factoring small moduli end to end.

use distcat::shor::{factor, FactorConfig};

fn main() -> Result<(), distcat::error::Error> {
    for (modulus, seed) in [(15, 7), (21, 3), (35, 1), (13, 1), (22, 1)] {
        let run = factor(modulus, &FactorConfig { seed, ..FactorConfig::default() })?;
        println!(
            "{modulus:>3}: {:<34} attempts {} method {:?} period {:?}",
            run.message,
            run.attempts.len(),
            run.method,
            run.period
        );
    }
    Ok(())
}
