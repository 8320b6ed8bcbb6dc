//! Circuit JSON for both iterator forms and the period-finding oracle.

use distcat::iterator::IteratorBuild;
use distcat::quantum::Circuit;
use distcat::random::{random_unitary, rng};
use distcat::shapes::ObjExpr;
use distcat::shor::oracle;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let u = random_unitary(&ObjExpr::atom("X", 2), &mut rng(1));
    let naive = Circuit::from_iterator(&IteratorBuild::naive(&u, 2)?, "U")?;
    let eff = Circuit::from_iterator(&IteratorBuild::efficient(&u, 4)?, "U")?;
    println!("naive, n=2:\n{}", serde_json::to_string_pretty(&naive.to_json())?);
    println!("efficient, n=4: {} gates", eff.gates().len());
    let shor = oracle(7, 15, 8, 4)?;
    let powers: Vec<_> = shor.to_json().gates.iter().map(|g| g.power.unwrap_or_default()).collect();
    println!("oracle for 7 mod 15 on 8 controls, multipliers {powers:?}");
    Ok(())
}
