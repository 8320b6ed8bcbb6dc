//! The efficient circuit sends |a> (x) psi to |a> (x) U^a psi.

use distcat::iterator::IteratorBuild;
use distcat::quantum::{check_controlled_power_action, Circuit, StateVec};
use distcat::random::{random_state, random_unitary, rng};
use distcat::shapes::ObjExpr;
use num_complex::Complex64;

fn main() -> Result<(), distcat::error::Error> {
    let mut rng = rng(5);
    let u = random_unitary(&ObjExpr::atom("X", 5), &mut rng);
    let psi = random_state(5, &mut rng);
    let circuit = Circuit::from_iterator(&IteratorBuild::efficient(&u, 6)?, "U")?;
    println!("{} gates on 6 controls and a 5-level target", circuit.gates().len());

    let out = circuit.apply(&StateVec::product(6, 3, &psi)?)?;
    let u3psi = u.power(3)?;
    let expected: Vec<Complex64> = (0..5).map(|i| u3psi.row(i).iter().zip(&psi).map(|(m, v)| m * v).sum()).collect();
    let err = out.target_slice(3).iter().zip(&expected).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    println!("|3> psi: error {err:.2e}, norm {:.12}", out.norm());

    let r = check_controlled_power_action(&u, 6, &psi)?;
    println!("all 64 controls: worst error {:.2e}, pass {}", r.discrepancy, r.pass);
    Ok(())
}
