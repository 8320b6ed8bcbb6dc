//! Block counts and build times of the two iterator forms.

use std::time::Instant;

use distcat::iterator::{gate_counts, IteratorBuild};
use distcat::random::{random_unitary, rng};
use distcat::shapes::ObjExpr;

fn main() -> Result<(), distcat::error::Error> {
    let u = random_unitary(&ObjExpr::atom("X", 2), &mut rng(3));
    println!("{:>3} {:>6} {:>4} {:>12} {:>12}", "n", "naive", "eff", "naive time", "eff time");
    for n in 1..=12 {
        let counts = gate_counts(n)?;
        let t = Instant::now();
        let naive = IteratorBuild::naive(&u, n)?;
        let naive_time = t.elapsed();
        let t = Instant::now();
        let eff = IteratorBuild::efficient(&u, n)?;
        let eff_time = t.elapsed();
        assert_eq!((naive.stage_count() - 1, eff.stage_count()), (counts.naive as usize, counts.efficient as usize));
        println!("{n:>3} {:>6} {:>4} {:>12.2?} {:>12.2?}", counts.naive, counts.efficient, naive_time, eff_time);
    }
    Ok(())
}
