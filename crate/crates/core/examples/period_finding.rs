//! Outcome distribution for base 7 modulo 15 and one sampled run.

use distcat::shor::{outcome_distribution, period_find};

fn main() -> Result<(), distcat::error::Error> {
    let p = outcome_distribution(7, 15, 8)?;
    for (y, prob) in p.iter().enumerate().filter(|(_, &q)| q > 1e-9) {
        println!("P({y:>3}) = {prob:.6}");
    }
    let run = period_find(7, 15, 8, 64, 99)?;
    println!("sampled counts {:?}", run.attempts[0].counts);
    println!("period {:?}, factors {:?}", run.period, run.factors);
    Ok(())
}
