//! The same constructions over booleans: relations and permutation matrices.

use distcat::coherence::check_naturality_fig1;
use distcat::iterator::verify_equivalence;
use distcat::morphisms::Mor;
use distcat::random::{random_perm, random_relation, rng};
use distcat::shapes::ObjExpr;

fn main() -> Result<(), distcat::error::Error> {
    let mut rng = rng(17);
    let (a, b, c) = (ObjExpr::atom("A", 2), ObjExpr::atom("B", 3), ObjExpr::atom("C", 2));
    let f = random_relation(&b, &ObjExpr::atom("Y", 2), &mut rng);
    let g = random_relation(&c, &ObjExpr::atom("Z", 3), &mut rng);
    let r = check_naturality_fig1(&a, &f, &g)?;
    println!("{} over {}: discrepancy {}", r.diagram, r.semiring, r.discrepancy);

    let p = Mor::<bool>::from_perm(&random_perm(&ObjExpr::atom("X", 4), &mut rng));
    let r = verify_equivalence(&p, 4)?;
    println!("iterator of a permutation, n=4: exact match {}", r.discrepancy == 0.0);
    Ok(())
}
