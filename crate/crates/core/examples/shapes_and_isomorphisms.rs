//! Objects, their normal forms, and the canonical isomorphisms as index maps.

use distcat::shapes::{dl_perm, dr_perm, lambda_perm, s_perm, sigma_perm, ObjExpr};

fn main() -> Result<(), distcat::error::Error> {
    let x: ObjExpr = "(A2*(A1+A3))".parse()?;
    println!("{x} has dimension {}", x.dim());

    let strict: ObjExpr = "((I*A2)*(A1+0+A3))".parse()?;
    println!("{strict} normalises to {} (equivalent: {})", strict.normalize(), strict.equiv(&x));

    let (a, b, c) = (ObjExpr::atom("A", 2), ObjExpr::atom("B", 1), ObjExpr::atom("C", 2));
    println!("dl  A2*(B1+C2) -> A2*B1 + A2*C2 : {:?}", dl_perm(&a, &b, &c).map());
    println!("dr  (B1+C2)*A2 -> B1*A2 + C2*A2 : {:?}", dr_perm(&b, &c, &a).map());
    println!("sigma A2*C2 -> C2*A2           : {:?}", sigma_perm(&a, &c).map());
    println!("s   A2+B1 -> B1+A2             : {:?}", s_perm(&a, &b).map());

    let lam = lambda_perm(3, &ObjExpr::atom("X", 2))?;
    println!("lambda for n=3 on X2 is the identity: {}", lam.is_identity());
    Ok(())
}
