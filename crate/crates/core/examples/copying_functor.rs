//! The copying functor `2 * (-)` and its first diagrams on a random matrix.

use distcat::coherence::{check_copy, check_diagonal_nat, delta};
use distcat::random::{random_complex_matrix, rng};
use distcat::shapes::ObjExpr;

fn main() -> Result<(), distcat::error::Error> {
    let mut rng = rng(7);
    let f = random_complex_matrix(&ObjExpr::atom("X", 2), &ObjExpr::atom("Y", 3), &mut rng);
    let d = delta(&f);
    println!("f is {}x{}, delta(f) is {}x{} from {} to {}", f.rows(), f.cols(), d.rows(), d.cols(), d.dom(), d.cod());
    for report in [check_copy(&f)?, check_diagonal_nat(&f)?] {
        println!("{:<24} discrepancy {:.2e} pass {}", report.diagram, report.discrepancy, report.pass);
    }
    Ok(())
}
