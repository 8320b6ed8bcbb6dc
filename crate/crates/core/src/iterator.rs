//! The iterator `!ᴺ(f) = f⁰ ⊕ f¹ ⊕ … ⊕ fᴺ⁻¹` in its naive block form and in
//! its factorised form of `n` singly-controlled stages for `N = 2ⁿ`.
//!
//! Control register convention: the basis state `|a⟩` of `𝟚^{⊗n}` has
//! `a = Σ a_k 2^k`, qubit `k = 0` is the least significant and sits in the
//! rightmost tensor position. Qubit `k` controls `f^{2^k}`.

use serde::{Deserialize, Serialize};

use crate::coherence::DiagramReport;
use crate::error::{Error, Result};
use crate::morphisms::{Mor, Semiring};
use crate::quantum::ctrl1;
use crate::shapes::{lambda_perm, sigma_perm, ObjExpr, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Naive,
    Efficient,
}

/// What a block is controlled on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Control {
    /// The whole register equal to `|a⟩`.
    Pattern(u64),
    /// A single qubit equal to `|1⟩`.
    Qubit(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ControlledBlock<S> {
    pub control: Control,
    /// The block applies `base^exponent`.
    pub exponent: u64,
    pub op: Mor<S>,
}

/// A constructed iterator, kept in gate form. The naive form holds all `2ⁿ`
/// blocks `fᵃ` (the `a = 0` block is the identity); the efficient form holds
/// the `n` stages `f^{2^k}`.
#[derive(Clone, Debug)]
pub struct IteratorBuild<S> {
    pub n: usize,
    pub form: Form,
    pub base: Mor<S>,
    pub blocks: Vec<ControlledBlock<S>>,
}

fn check_controls(n: usize) -> Result<()> {
    if n == 0 || n >= 32 {
        return Err(Error::InvalidArgument(format!("control count {n} must be in 1..32")));
    }
    Ok(())
}

impl<S: Semiring> IteratorBuild<S> {
    /// Every power `fᵃ`, `a < 2ⁿ`, computed independently by binary
    /// exponentiation.
    pub fn naive(f: &Mor<S>, n: usize) -> Result<Self> {
        check_controls(n)?;
        let blocks = (0..1u64 << n)
            .map(|a| Ok(ControlledBlock { control: Control::Pattern(a), exponent: a, op: f.power(a)? }))
            .collect::<Result<_>>()?;
        Ok(IteratorBuild { n, form: Form::Naive, base: f.clone(), blocks })
    }

    /// The stages `f^{2^k}`, each obtained by squaring the previous one.
    pub fn efficient(f: &Mor<S>, n: usize) -> Result<Self> {
        check_controls(n)?;
        let mut blocks = Vec::with_capacity(n);
        let mut op = f.power(1)?;
        for k in 0..n {
            if k > 0 {
                op = op.compose(&op)?;
            }
            blocks.push(ControlledBlock { control: Control::Qubit(k), exponent: 1 << k, op: op.clone() });
        }
        Ok(IteratorBuild { n, form: Form::Efficient, base: f.clone(), blocks })
    }

    pub fn build(f: &Mor<S>, n: usize, form: Form) -> Result<Self> {
        match form {
            Form::Naive => Self::naive(f, n),
            Form::Efficient => Self::efficient(f, n),
        }
    }

    pub fn target(&self) -> &ObjExpr {
        self.base.dom()
    }

    pub fn stage_count(&self) -> usize {
        self.blocks.len()
    }

    /// Dense matrix of the construction: on `⊕_{2ⁿ} X` for the naive form,
    /// on `𝟚^{⊗n} ⊗ X` for the efficient one.
    pub fn result(&self) -> Result<Mor<S>> {
        let x = self.target();
        match self.form {
            Form::Naive => {
                let sum = ObjExpr::direct_power(x, 1 << self.n);
                Mor::dsum_all(self.blocks.iter().map(|b| &b.op)).retype(sum.clone(), sum)
            }
            Form::Efficient => {
                let mut acc = Mor::identity(&ObjExpr::prod(ObjExpr::two_pow(self.n), x.clone()));
                for (k, block) in self.blocks.iter().enumerate() {
                    acc = stage_from_power(&block.op, k, self.n)?.compose(&acc)?;
                }
                Ok(acc)
            }
        }
    }
}

/// `!ᴺ(f)` as a block-diagonal matrix on `⊕_N X`.
pub fn iterate_naive<S: Semiring>(f: &Mor<S>, big_n: u64) -> Result<Mor<S>> {
    if big_n == 0 {
        return Err(Error::InvalidArgument("iterator length must be at least 1".into()));
    }
    let powers = (0..big_n).map(|j| f.power(j)).collect::<Result<Vec<_>>>()?;
    let sum = ObjExpr::direct_power(f.dom(), big_n as usize);
    Mor::dsum_all(&powers).retype(sum.clone(), sum)
}

/// `!^{2ⁿ}(f)` on `𝟚^{⊗n} ⊗ X` as the product of `n` controlled stages.
pub fn iterate_efficient<S: Semiring>(f: &Mor<S>, n: usize) -> Result<Mor<S>> {
    IteratorBuild::efficient(f, n)?.result()
}

/// Stage `k` of `n`: `f^{2^k}` controlled on qubit `k`.
pub fn stage<S: Semiring>(f: &Mor<S>, k: usize, n: usize) -> Result<Mor<S>> {
    if k >= n {
        return Err(Error::InvalidArgument(format!("qubit {k} out of range for {n} controls")));
    }
    stage_from_power(&f.power(1 << k)?, k, n)
}

/// `g` controlled on qubit `k` of an `n`-qubit register. Built as
/// `1_{𝟚^{⊗(n−1)}} ⊗ Ctrl₁(g)`, which controls on the rightmost qubit, then
/// conjugated by the multiplicative symmetry that brings qubit `k` there.
pub fn stage_from_power<S: Semiring>(g: &Mor<S>, k: usize, n: usize) -> Result<Mor<S>> {
    if k >= n {
        return Err(Error::InvalidArgument(format!("qubit {k} out of range for {n} controls")));
    }
    let x = g.dom().clone();
    let two = ObjExpr::two();
    let pos = n - 1 - k;
    let rightmost = Mor::identity(&ObjExpr::two_pow(n - 1)).mtensor(&ctrl1(g)?);
    let bring = Perm::identity(&ObjExpr::two_pow(pos))
        .mtensor(&sigma_perm(&two, &ObjExpr::two_pow(n - 1 - pos)))
        .mtensor(&Perm::identity(&x));
    let obj = ObjExpr::prod(ObjExpr::two_pow(n), x);
    rightmost.conjugate(&bring)?.retype(obj.clone(), obj)
}

/// `λ ∘ E = N ∘ λ` for the efficient form `E` and the naive form `N`.
pub fn verify_equivalence<S: Semiring>(f: &Mor<S>, n: usize) -> Result<DiagramReport> {
    let lam = Mor::from_perm(&lambda_perm(n, f.dom())?);
    let lhs = lam.compose(&iterate_efficient(f, n)?)?;
    let rhs = iterate_naive(f, 1 << n)?.compose(&lam)?;
    lhs.dom().expect_equiv(rhs.dom())?;
    lhs.cod().expect_equiv(rhs.cod())?;
    Ok(DiagramReport::new(
        "iterator_equivalence",
        format!("n={n} X={}", f.dom()),
        S::NAME,
        lhs.max_discrepancy(&rhs)?,
        S::TOLERANCE,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub naive: u64,
    pub efficient: u64,
}

/// Controlled blocks needed by each form: `2ⁿ − 1` multiply-controlled blocks
/// (the identity block for `a = 0` is elided) against `n` singly-controlled ones.
pub fn gate_counts(n: usize) -> Result<GateCounts> {
    if n == 0 || n >= 64 {
        return Err(Error::InvalidArgument(format!("control count {n} must be in 1..64")));
    }
    Ok(GateCounts { naive: (1u64 << n) - 1, efficient: n as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::s_perm;
    use num_complex::Complex64;

    fn not<S: Semiring>() -> Mor<S> {
        Mor::from_perm(&s_perm(&ObjExpr::Unit, &ObjExpr::Unit))
            .retype(ObjExpr::two(), ObjExpr::two())
            .unwrap()
    }

    fn scalar(u: Complex64) -> Mor<Complex64> {
        Mor::new(ObjExpr::Unit, ObjExpr::Unit, vec![u]).unwrap()
    }

    fn diag(m: &Mor<Complex64>) -> Vec<Complex64> {
        (0..m.rows()).map(|i| *m.get(i, i)).collect()
    }

    #[test]
    fn naive_small_cases() {
        let f = not::<bool>();
        assert_eq!(iterate_naive(&f, 1).unwrap(), Mor::identity(&ObjExpr::two()));
        let two = iterate_naive(&f, 2).unwrap();
        assert_eq!(two.entries(), Mor::identity(&ObjExpr::two()).dsum(&f).entries());
        let four = iterate_naive(&f, 4).unwrap();
        let id = Mor::identity(&ObjExpr::two());
        assert_eq!(four.entries(), Mor::dsum_all([&id, &f, &id, &f]).entries());
        assert!(iterate_naive(&f, 0).is_err());
    }

    #[test]
    fn stage_on_high_qubit() {
        let u = Complex64::new(0.0, 1.0);
        let s = stage(&scalar(u), 1, 2).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(diag(&s), vec![one, one, u * u, u * u]);
        assert!(stage(&scalar(u), 2, 2).is_err());
    }

    #[test]
    fn single_stage_is_ctrl1() {
        let f = not::<bool>();
        let e = iterate_efficient(&f, 1).unwrap();
        assert_eq!(e.entries(), Mor::identity(&ObjExpr::two()).dsum(&f).entries());
    }

    #[test]
    fn two_stages_give_all_powers() {
        let u = Complex64::from_polar(1.0, 0.7);
        let e = iterate_efficient(&scalar(u), 2).unwrap();
        let expected = [u.powu(0), u.powu(1), u.powu(2), u.powu(3)];
        for (got, want) in diag(&e).iter().zip(expected) {
            assert!((got - want).norm() < 1e-14);
        }
    }

    #[test]
    fn counts() {
        assert_eq!(gate_counts(1).unwrap(), GateCounts { naive: 1, efficient: 1 });
        assert_eq!(gate_counts(4).unwrap(), GateCounts { naive: 15, efficient: 4 });
        assert_eq!(gate_counts(10).unwrap(), GateCounts { naive: 1023, efficient: 10 });
        assert!(gate_counts(0).is_err());
    }

    #[test]
    fn build_invariants() {
        let f = not::<bool>();
        let naive = IteratorBuild::naive(&f, 3).unwrap();
        let eff = IteratorBuild::efficient(&f, 3).unwrap();
        assert_eq!(naive.stage_count(), 8);
        assert_eq!(eff.stage_count(), 3);
        assert_eq!(naive.result().unwrap().rows(), 16);
        assert_eq!(eff.result().unwrap().rows(), 16);
    }

    #[test]
    fn not_equivalence_is_exact() {
        let r = verify_equivalence(&not::<bool>(), 3).unwrap();
        assert_eq!(r.discrepancy, 0.0);
        assert!(r.pass);
    }
}
