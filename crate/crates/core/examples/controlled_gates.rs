//! Controlled operations as transported direct sums, and the swap built from
//! three controlled NOTs.

use distcat::morphisms::Mor;
use distcat::quantum::{ctrl0, ctrl1, ctrl1_right, multi_ctrl, not_gate, swap_decomposition_check};

fn show(name: &str, m: &Mor<bool>) {
    println!("{name}:");
    for i in 0..m.rows() {
        let row: String = m.row(i).iter().map(|&b| if b { '1' } else { '.' }).collect();
        println!("  {row}");
    }
}

fn main() -> Result<(), distcat::error::Error> {
    let not = not_gate::<bool>();
    show("ctrl0(NOT)", &ctrl0(&not)?);
    show("ctrl1(NOT)", &ctrl1(&not)?);
    show("ctrl1(NOT), control on the right", &ctrl1_right(&not)?);
    let id = Mor::identity(not.dom());
    show("blocks [1, NOT, NOT, 1] on two controls", &multi_ctrl(&[id.clone(), not.clone(), not, id])?);
    let r = swap_decomposition_check()?;
    println!("CNOT . reversed CNOT . CNOT = swap: {}", r.pass);
    Ok(())
}
