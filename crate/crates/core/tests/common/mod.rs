//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use distcat::shapes::ObjExpr;
use proptest::prelude::*;

/// A basis element of an object, kept as a structured tuple rather than an
/// index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Star,
    Atom(usize),
    Inl(Box<Elem>),
    Inr(Box<Elem>),
    Pair(Box<Elem>, Box<Elem>),
}

use Elem::*;

pub fn inl(e: Elem) -> Elem {
    Inl(Box::new(e))
}

pub fn inr(e: Elem) -> Elem {
    Inr(Box::new(e))
}

pub fn pair(a: Elem, b: Elem) -> Elem {
    Pair(Box::new(a), Box::new(b))
}

/// Ordered basis: pairs in row-major order, left summand before right.
pub fn basis(x: &ObjExpr) -> Vec<Elem> {
    match x {
        ObjExpr::Zero => vec![],
        ObjExpr::Unit => vec![Star],
        ObjExpr::Atom { dim, .. } => (0..*dim).map(Atom).collect(),
        ObjExpr::Sum(a, b) => basis(a).into_iter().map(inl).chain(basis(b).into_iter().map(inr)).collect(),
        ObjExpr::Prod(a, b) => {
            let right = basis(b);
            basis(a).into_iter().flat_map(|l| right.iter().map(move |r| pair(l.clone(), r.clone()))).collect()
        }
    }
}

/// Index array of the bijection induced by `f` on ordered bases, found by
/// searching the target basis for each image.
pub fn induced_map(source: &ObjExpr, target: &ObjExpr, f: impl Fn(&Elem) -> Elem) -> Vec<usize> {
    let tgt = basis(target);
    basis(source)
        .iter()
        .map(|e| {
            let img = f(e);
            tgt.iter().position(|t| *t == img).unwrap_or_else(|| panic!("{img:?} not in basis of {target}"))
        })
        .collect()
}

pub fn dl_oracle(a: &ObjExpr, b: &ObjExpr, c: &ObjExpr) -> Vec<usize> {
    let src = ObjExpr::prod(a.clone(), ObjExpr::sum(b.clone(), c.clone()));
    let tgt = ObjExpr::sum(ObjExpr::prod(a.clone(), b.clone()), ObjExpr::prod(a.clone(), c.clone()));
    induced_map(&src, &tgt, |e| match e {
        Pair(x, s) => match &**s {
            Inl(y) => inl(pair((**x).clone(), (**y).clone())),
            Inr(z) => inr(pair((**x).clone(), (**z).clone())),
            _ => unreachable!(),
        },
        _ => unreachable!(),
    })
}

pub fn dr_oracle(x: &ObjExpr, y: &ObjExpr, z: &ObjExpr) -> Vec<usize> {
    let src = ObjExpr::prod(ObjExpr::sum(x.clone(), y.clone()), z.clone());
    let tgt = ObjExpr::sum(ObjExpr::prod(x.clone(), z.clone()), ObjExpr::prod(y.clone(), z.clone()));
    induced_map(&src, &tgt, |e| match e {
        Pair(s, w) => match &**s {
            Inl(a) => inl(pair((**a).clone(), (**w).clone())),
            Inr(b) => inr(pair((**b).clone(), (**w).clone())),
            _ => unreachable!(),
        },
        _ => unreachable!(),
    })
}

pub fn sigma_oracle(x: &ObjExpr, y: &ObjExpr) -> Vec<usize> {
    let src = ObjExpr::prod(x.clone(), y.clone());
    let tgt = ObjExpr::prod(y.clone(), x.clone());
    induced_map(&src, &tgt, |e| match e {
        Pair(a, b) => pair((**b).clone(), (**a).clone()),
        _ => unreachable!(),
    })
}

pub fn s_oracle(a: &ObjExpr, b: &ObjExpr) -> Vec<usize> {
    let src = ObjExpr::sum(a.clone(), b.clone());
    let tgt = ObjExpr::sum(b.clone(), a.clone());
    induced_map(&src, &tgt, |e| match e {
        Inl(x) => inr((**x).clone()),
        Inr(y) => inl((**y).clone()),
        _ => unreachable!(),
    })
}

/// Control bits of an element of `𝟚^{⊗n}`, leftmost factor first.
fn bits(e: &Elem, n: usize, out: &mut Vec<u64>) {
    let bit = |b: &Elem| match b {
        Inl(_) => 0,
        Inr(_) => 1,
        _ => unreachable!(),
    };
    if n == 1 {
        out.push(bit(e));
    } else if let Pair(head, rest) = e {
        out.push(bit(head));
        bits(rest, n - 1, out);
    }
}

/// `|b_{n−1} … b_0⟩ ⊗ x ↦` the copy of `x` in summand `Σ b_k 2^k` of `⊕_{2ⁿ} X`.
pub fn lambda_oracle(n: usize, x: &ObjExpr) -> Vec<usize> {
    let count = 1usize << n;
    let src = ObjExpr::prod(ObjExpr::two_pow(n), x.clone());
    let tgt = ObjExpr::direct_power(x, count);
    induced_map(&src, &tgt, |e| match e {
        Pair(ctrl, v) => {
            let mut bs = Vec::new();
            bits(ctrl, n, &mut bs);
            let a = bs.iter().fold(0usize, |acc, b| 2 * acc + *b as usize);
            let mut img = if a == count - 1 { (**v).clone() } else { inl((**v).clone()) };
            for _ in 0..a {
                img = inr(img);
            }
            img
        }
        _ => unreachable!(),
    })
}

/// Small random objects: atoms, units, zeros, sums and products up to depth 2.
pub fn obj_strategy(max_dim: usize) -> impl Strategy<Value = ObjExpr> {
    let leaf = prop_oneof![
        1 => Just(ObjExpr::Unit),
        1 => Just(ObjExpr::Zero),
        4 => (1..=max_dim).prop_map(|d| ObjExpr::atom("A", d)),
    ];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ObjExpr::sum(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| ObjExpr::prod(a, b)),
        ]
    })
}

pub fn atom_strategy(max_dim: usize) -> impl Strategy<Value = ObjExpr> {
    (1..=max_dim).prop_map(|d| ObjExpr::atom("A", d))
}
