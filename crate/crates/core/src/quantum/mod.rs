//! Hilbert-space instantiation: `⊗` is the tensor product, `⊕` the direct
//! sum, `𝟚` the qubit. Controlled operations are direct sums transported along
//! the distributors, and circuits act on a mixed-radix state vector
//! `(2, …, 2, d)`.

mod circuit;
mod state;

pub use circuit::{Circuit, CircuitJson, Gate, GateRecord};
pub use state::{sample, Register, StateVec};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coherence::DiagramReport;
use crate::error::{Error, Result};
use crate::iterator::IteratorBuild;
use crate::morphisms::{Mor, Semiring};
use crate::shapes::{dl_perm, dr_perm, lambda_perm, s_perm, sigma_perm, ObjExpr};

fn expect_endo<S: Semiring>(u: &Mor<S>) -> Result<()> {
    if u.is_endo() {
        Ok(())
    } else {
        Err(Error::NotEndomorphism { dom: u.dom().to_string(), cod: u.cod().to_string() })
    }
}

/// `Ctrl₀U = U ⊕ 1` on `𝟚 ⊗ X`: applies `U` when the control is `|0⟩`.
pub fn ctrl0<S: Semiring>(u: &Mor<S>) -> Result<Mor<S>> {
    expect_endo(u)?;
    let x = u.dom();
    u.dsum(&Mor::identity(x)).conjugate(&dr_perm(&ObjExpr::Unit, &ObjExpr::Unit, x))
}

/// `Ctrl₁V = 1 ⊕ V` on `𝟚 ⊗ X`: applies `V` when the control is `|1⟩`.
pub fn ctrl1<S: Semiring>(v: &Mor<S>) -> Result<Mor<S>> {
    expect_endo(v)?;
    let x = v.dom();
    Mor::identity(x).dsum(v).conjugate(&dr_perm(&ObjExpr::Unit, &ObjExpr::Unit, x))
}

/// `1 ⊕ V` on `X ⊗ 𝟚`, transported along the left distributor: the control
/// qubit is the right-hand factor.
pub fn ctrl1_right<S: Semiring>(v: &Mor<S>) -> Result<Mor<S>> {
    expect_endo(v)?;
    let x = v.dom();
    Mor::identity(x).dsum(v).conjugate(&dl_perm(x, &ObjExpr::Unit, &ObjExpr::Unit))
}

/// `⊕ₐ Uₐ` on `𝟚^{⊗n} ⊗ X`, block `a` selected by control basis state `|a⟩`.
pub fn multi_ctrl<S: Semiring>(ops: &[Mor<S>]) -> Result<Mor<S>> {
    let len = ops.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("{len} blocks is not a power of two >= 2")));
    }
    let x = ops[0].dom();
    for op in ops {
        expect_endo(op)?;
        x.expect_equiv(op.dom())?;
    }
    let n = len.trailing_zeros() as usize;
    let sum = ObjExpr::direct_power(x, len);
    Mor::dsum_all(ops).retype(sum.clone(), sum)?.conjugate(&lambda_perm(n, x)?)
}

/// The NOT gate, i.e. the additive symmetry `s_{I,I}` on `𝟚`.
pub fn not_gate<S: Semiring>() -> Mor<S> {
    Mor::from_perm(&s_perm(&ObjExpr::Unit, &ObjExpr::Unit))
        .retype(ObjExpr::two(), ObjExpr::two())
        .expect("I+I is 2")
}

/// Three alternating controlled NOTs equal the qubit swap `σ_{𝟚,𝟚}`.
pub fn swap_decomposition_check() -> Result<DiagramReport> {
    let not = not_gate::<bool>();
    let cnot = ctrl1(&not)?;
    let reversed = ctrl1_right(&not)?;
    let product = cnot.compose(&reversed)?.compose(&cnot)?;
    let swap = Mor::<bool>::from_perm(&sigma_perm(&ObjExpr::two(), &ObjExpr::two()));
    Ok(DiagramReport::new(
        "swap_decomposition",
        "CNOT . reversed CNOT . CNOT vs sigma(2,2)",
        "boolean",
        product.max_discrepancy(&swap)?,
        0.0,
    ))
}

pub fn hadamard() -> Mor<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Mor::from_fn(ObjExpr::two(), ObjExpr::two(), |i, j| {
        Complex64::new(if i == 1 && j == 1 { -h } else { h }, 0.0)
    })
}

/// `ω^m / √N` for `m < N`, `ω = e^{±2πi/N}`.
pub(crate) fn dft_twiddles(len: usize, inverse: bool) -> Vec<Complex64> {
    let sign = if inverse { -1.0 } else { 1.0 };
    let scale = 1.0 / (len as f64).sqrt();
    (0..len)
        .map(|m| Complex64::from_polar(scale, sign * 2.0 * PI * m as f64 / len as f64))
        .collect()
}

/// Dense DFT on `𝟚^{⊗n}`: `F[j,k] = ω^{jk}/√N`; the inverse is `F†`.
pub fn qft(n: usize, inverse: bool) -> Result<Mor<Complex64>> {
    if n == 0 || n > 16 {
        return Err(Error::InvalidArgument(format!("qft width {n} must be in 1..=16")));
    }
    let len = 1usize << n;
    let w = dft_twiddles(len, inverse);
    let obj = ObjExpr::two_pow(n);
    Ok(Mor::from_fn(obj.clone(), obj, |j, k| w[(j * k) % len]))
}

/// Applies the efficient circuit for `!^{2ⁿ}(U)` to `|a⟩ ⊗ ψ` for every `a`
/// and compares with `|a⟩ ⊗ Uᵃψ`, where `Uᵃ` is accumulated one factor at a
/// time.
pub fn check_controlled_power_action(u: &Mor<Complex64>, n: usize, psi: &[Complex64]) -> Result<DiagramReport> {
    let d = u.rows();
    if psi.len() != d {
        return Err(Error::ShapeMismatch { expected: format!("vector of length {d}"), found: psi.len().to_string() });
    }
    let circuit = Circuit::from_iterator(&IteratorBuild::efficient(u, n)?, "U")?;
    let mut worst: f64 = 0.0;
    let mut expected = psi.to_vec();
    for a in 0..1u64 << n {
        let out = circuit.apply(&StateVec::product(n, a, psi)?)?;
        for b in 0..1u64 << n {
            let slice = out.target_slice(b);
            if b == a {
                worst = slice.iter().zip(&expected).map(|(x, y)| (x - y).norm()).fold(worst, f64::max);
            } else {
                worst = slice.iter().map(|x| x.norm()).fold(worst, f64::max);
            }
        }
        expected = (0..d).map(|i| u.row(i).iter().zip(&expected).map(|(m, v)| m * v).sum()).collect();
    }
    Ok(DiagramReport::new(
        "controlled_power_action",
        format!("n={n} d={d}"),
        "complex",
        worst,
        Complex64::TOLERANCE,
    ))
}
