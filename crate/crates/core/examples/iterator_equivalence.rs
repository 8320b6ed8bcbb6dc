//! Naive and efficient iterators agree after relabelling by lambda.

use distcat::iterator::{iterate_efficient, iterate_naive, verify_equivalence};
use distcat::random::{random_unitary, rng};
use distcat::shapes::ObjExpr;

fn main() -> Result<(), distcat::error::Error> {
    let u = random_unitary(&ObjExpr::atom("X", 3), &mut rng(11));
    for n in 1..=5 {
        let r = verify_equivalence(&u, n)?;
        println!("n={n}: max discrepancy {:.2e} ({})", r.discrepancy, if r.pass { "pass" } else { "fail" });
    }
    let naive = iterate_naive(&u, 8)?;
    let eff = iterate_efficient(&u, 3)?;
    println!("naive lives on {}, efficient on {}", naive.dom(), eff.dom());
    Ok(())
}
