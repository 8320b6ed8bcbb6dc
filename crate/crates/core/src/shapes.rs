//! Object expressions and the canonical isomorphisms between them.
//!
//! Objects are built from `0`, `I`, atoms and the two tensors. Every object has
//! a dimension and a fixed lexicographic basis: the basis of `A ⊗ B` is ordered
//! by `a * dim(B) + b`, and the basis of `A ⊕ B` lists the basis of `A` followed
//! by the basis of `B`. Under this ordering every coherence isomorphism is a
//! permutation of basis indices, stored as a [`Perm`].
//!
//! Both tensors are treated as strictly associative with strict units: two
//! objects are interchangeable when their [normal forms](ObjExpr::normalize)
//! agree. Associators and unitors therefore never appear at runtime.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An object of the strongly distributive category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ObjExpr {
    /// Additive unit.
    Zero,
    /// Multiplicative unit.
    Unit,
    /// An opaque object of the given dimension.
    Atom { label: String, dim: usize },
    Sum(Box<ObjExpr>, Box<ObjExpr>),
    Prod(Box<ObjExpr>, Box<ObjExpr>),
}

impl ObjExpr {
    pub fn atom(label: impl Into<String>, dim: usize) -> Self {
        ObjExpr::Atom { label: label.into(), dim }
    }

    pub fn sum(a: ObjExpr, b: ObjExpr) -> Self {
        ObjExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: ObjExpr, b: ObjExpr) -> Self {
        ObjExpr::Prod(Box::new(a), Box::new(b))
    }

    /// The qubit object `I ⊕ I`.
    pub fn two() -> Self {
        Self::sum(ObjExpr::Unit, ObjExpr::Unit)
    }

    /// `𝟚^{⊗n}`, with `𝟚^{⊗0} = I`.
    pub fn two_pow(n: usize) -> Self {
        Self::prod_all(std::iter::repeat_n(Self::two(), n))
    }

    /// The `k`-fold direct sum of `x`, with the empty sum equal to `0`.
    pub fn direct_power(x: &ObjExpr, k: usize) -> Self {
        Self::sum_all(std::iter::repeat_n(x.clone(), k))
    }

    /// Right-nested product of the given factors (`I` when empty).
    pub fn prod_all(factors: impl IntoIterator<Item = ObjExpr>) -> Self {
        let factors: Vec<_> = factors.into_iter().collect();
        factors
            .into_iter()
            .rev()
            .reduce(|acc, f| Self::prod(f, acc))
            .unwrap_or(ObjExpr::Unit)
    }

    /// Right-nested sum of the given summands (`0` when empty).
    pub fn sum_all(summands: impl IntoIterator<Item = ObjExpr>) -> Self {
        let summands: Vec<_> = summands.into_iter().collect();
        summands
            .into_iter()
            .rev()
            .reduce(|acc, s| Self::sum(s, acc))
            .unwrap_or(ObjExpr::Zero)
    }

    pub fn dim(&self) -> usize {
        match self {
            ObjExpr::Zero => 0,
            ObjExpr::Unit => 1,
            ObjExpr::Atom { dim, .. } => *dim,
            ObjExpr::Sum(a, b) => a.dim() + b.dim(),
            ObjExpr::Prod(a, b) => a.dim() * b.dim(),
        }
    }

    /// Strict normal form: both tensors flattened and right-nested, `I` factors
    /// and `0` summands removed.
    pub fn normalize(&self) -> ObjExpr {
        match self {
            ObjExpr::Sum(..) => {
                let mut parts = Vec::new();
                self.collect_summands(&mut parts);
                Self::sum_all(parts.into_iter().filter(|p| *p != ObjExpr::Zero))
            }
            ObjExpr::Prod(..) => {
                let mut parts = Vec::new();
                self.collect_factors(&mut parts);
                Self::prod_all(parts.into_iter().filter(|p| *p != ObjExpr::Unit))
            }
            other => other.clone(),
        }
    }

    fn collect_summands(&self, out: &mut Vec<ObjExpr>) {
        match self {
            ObjExpr::Sum(a, b) => {
                a.collect_summands(out);
                b.collect_summands(out);
            }
            other => match other.normalize() {
                n @ ObjExpr::Sum(..) => n.collect_summands(out),
                n => out.push(n),
            },
        }
    }

    fn collect_factors(&self, out: &mut Vec<ObjExpr>) {
        match self {
            ObjExpr::Prod(a, b) => {
                a.collect_factors(out);
                b.collect_factors(out);
            }
            other => match other.normalize() {
                n @ ObjExpr::Prod(..) => n.collect_factors(out),
                n => out.push(n),
            },
        }
    }

    /// Equality up to strict associativity and unit laws.
    pub fn equiv(&self, other: &ObjExpr) -> bool {
        self.dim() == other.dim() && self.normalize() == other.normalize()
    }

    pub(crate) fn expect_equiv(&self, other: &ObjExpr) -> Result<()> {
        if self.equiv(other) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }
}

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjExpr::Zero => write!(f, "0"),
            ObjExpr::Unit => write!(f, "I"),
            ObjExpr::Sum(a, b) if **a == ObjExpr::Unit && **b == ObjExpr::Unit => write!(f, "2"),
            ObjExpr::Atom { dim, .. } => write!(f, "A{dim}"),
            ObjExpr::Sum(a, b) => write!(f, "({a}+{b})"),
            ObjExpr::Prod(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

impl FromStr for ObjExpr {
    type Err = Error;

    /// Parses `0 | I | 2 | A<d> | (e+e) | (e*e)`. Whitespace is ignored and a
    /// parenthesised chain `(a+b+c)` nests to the right.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ObjExpr> {
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(ObjExpr::Zero)
            }
            Some(b'I') => {
                self.pos += 1;
                Ok(ObjExpr::Unit)
            }
            Some(b'2') => {
                self.pos += 1;
                Ok(ObjExpr::two())
            }
            Some(b'A') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.err("atom needs a dimension, e.g. A3"));
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let dim = digits.parse().map_err(|_| self.err("atom dimension out of range"))?;
                if dim == 0 {
                    return Err(self.err("atom dimension must be positive"));
                }
                Ok(ObjExpr::atom("A", dim))
            }
            Some(b'(') => {
                self.pos += 1;
                let first = self.expr()?;
                let op = match self.peek() {
                    Some(c @ (b'+' | b'*')) => c,
                    _ => return Err(self.err("expected `+` or `*`")),
                };
                let mut items = vec![first];
                while self.peek() == Some(op) {
                    self.pos += 1;
                    items.push(self.expr()?);
                }
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(if op == b'+' {
                    ObjExpr::sum_all(items)
                } else {
                    ObjExpr::prod_all(items)
                })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl Serialize for ObjExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ObjExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A canonical isomorphism, stored as the bijection it induces on basis
/// indices: source index `i` is sent to target index `map[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perm {
    source: ObjExpr,
    target: ObjExpr,
    map: Vec<usize>,
}

impl Perm {
    /// Validates dimensions and bijectivity.
    pub fn new(source: ObjExpr, target: ObjExpr, map: Vec<usize>) -> Result<Self> {
        let n = source.dim();
        if target.dim() != n || map.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "source dim {}, target dim {}, map length {}",
                n,
                target.dim(),
                map.len()
            )));
        }
        let mut seen = vec![false; n];
        for &j in &map {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidPermutation(format!("{map:?} is not a bijection")));
            }
        }
        Ok(Perm { source, target, map })
    }

    fn from_parts(source: ObjExpr, target: ObjExpr, map: Vec<usize>) -> Self {
        debug_assert!(Perm::new(source.clone(), target.clone(), map.clone()).is_ok());
        Perm { source, target, map }
    }

    pub fn identity(x: &ObjExpr) -> Self {
        Perm::from_parts(x.clone(), x.clone(), (0..x.dim()).collect())
    }

    pub fn source(&self) -> &ObjExpr {
        &self.source
    }

    pub fn target(&self) -> &ObjExpr {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn dim(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn invert(&self) -> Perm {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Perm::from_parts(self.target.clone(), self.source.clone(), inv)
    }

    /// `self ∘ q`: apply `q` first.
    pub fn compose(&self, q: &Perm) -> Result<Perm> {
        self.source.expect_equiv(&q.target)?;
        let map = q.map.iter().map(|&j| self.map[j]).collect();
        Ok(Perm::from_parts(q.source.clone(), self.target.clone(), map))
    }

    /// Multiplicative tensor `p ⊗ q`.
    pub fn mtensor(&self, q: &Perm) -> Perm {
        let dq = q.dim();
        let mut map = Vec::with_capacity(self.dim() * dq);
        for &a in &self.map {
            map.extend(q.map.iter().map(|&b| a * dq + b));
        }
        Perm::from_parts(
            ObjExpr::prod(self.source.clone(), q.source.clone()),
            ObjExpr::prod(self.target.clone(), q.target.clone()),
            map,
        )
    }

    /// Additive tensor `p ⊕ q`.
    pub fn dsum(&self, q: &Perm) -> Perm {
        let dp = self.dim();
        let map = self.map.iter().copied().chain(q.map.iter().map(|&j| dp + j)).collect();
        Perm::from_parts(
            ObjExpr::sum(self.source.clone(), q.source.clone()),
            ObjExpr::sum(self.target.clone(), q.target.clone()),
            map,
        )
    }

    /// Replace the source and target by equivalent spellings.
    pub fn retype(self, source: ObjExpr, target: ObjExpr) -> Result<Perm> {
        self.source.expect_equiv(&source)?;
        self.target.expect_equiv(&target)?;
        Ok(Perm { source, target, ..self })
    }
}

/// Left distributor `A ⊗ (B ⊕ C) → (A ⊗ B) ⊕ (A ⊗ C)`.
pub fn dl_perm(a: &ObjExpr, b: &ObjExpr, c: &ObjExpr) -> Perm {
    let (da, db, dc) = (a.dim(), b.dim(), c.dim());
    let mut map = Vec::with_capacity(da * (db + dc));
    for i in 0..da {
        for s in 0..db + dc {
            map.push(if s < db { i * db + s } else { da * db + i * dc + (s - db) });
        }
    }
    Perm::from_parts(
        ObjExpr::prod(a.clone(), ObjExpr::sum(b.clone(), c.clone())),
        ObjExpr::sum(ObjExpr::prod(a.clone(), b.clone()), ObjExpr::prod(a.clone(), c.clone())),
        map,
    )
}

/// Right distributor `(X ⊕ Y) ⊗ Z → (X ⊗ Z) ⊕ (Y ⊗ Z)`. The block boundary of
/// the target coincides with the index boundary of the source, so the map is
/// the identity array.
pub fn dr_perm(x: &ObjExpr, y: &ObjExpr, z: &ObjExpr) -> Perm {
    let n = (x.dim() + y.dim()) * z.dim();
    Perm::from_parts(
        ObjExpr::prod(ObjExpr::sum(x.clone(), y.clone()), z.clone()),
        ObjExpr::sum(ObjExpr::prod(x.clone(), z.clone()), ObjExpr::prod(y.clone(), z.clone())),
        (0..n).collect(),
    )
}

/// Multiplicative symmetry `X ⊗ Y → Y ⊗ X` (perfect shuffle).
pub fn sigma_perm(x: &ObjExpr, y: &ObjExpr) -> Perm {
    let (dx, dy) = (x.dim(), y.dim());
    let mut map = Vec::with_capacity(dx * dy);
    for i in 0..dx {
        map.extend((0..dy).map(|j| j * dx + i));
    }
    Perm::from_parts(ObjExpr::prod(x.clone(), y.clone()), ObjExpr::prod(y.clone(), x.clone()), map)
}

/// Additive symmetry `A ⊕ B → B ⊕ A` (block rotation).
pub fn s_perm(a: &ObjExpr, b: &ObjExpr) -> Perm {
    let (da, db) = (a.dim(), b.dim());
    let map = (0..da + db).map(|i| if i < da { db + i } else { i - da }).collect();
    Perm::from_parts(ObjExpr::sum(a.clone(), b.clone()), ObjExpr::sum(b.clone(), a.clone()), map)
}

/// Iterated left distribution `A ⊗ (S₁ ⊕ … ⊕ Sₖ) → A⊗S₁ ⊕ … ⊕ A⊗Sₖ`, built
/// from binary distributors.
///
/// Panics if `summands` is empty.
pub fn dl_many(a: &ObjExpr, summands: &[ObjExpr]) -> Perm {
    match summands {
        [] => panic!("dl_many needs at least one summand"),
        [only] => Perm::identity(&ObjExpr::prod(a.clone(), only.clone())),
        [first, rest @ ..] => {
            let head = dl_perm(a, first, &ObjExpr::sum_all(rest.iter().cloned()));
            let tail = Perm::identity(&ObjExpr::prod(a.clone(), first.clone())).dsum(&dl_many(a, rest));
            tail.compose(&head).expect("distributor shapes agree")
        }
    }
}

/// The canonical isomorphism `λ⁽ⁿ⁾ : 𝟚^{⊗n} ⊗ X → ⊕_{2ⁿ} X`, built by the
/// induction `λ⁽¹⁾ = dr_{I,I,X}` and
/// `λ⁽ⁿ⁾ = dr_{I,I,⊕_{2ⁿ⁻¹}X} ∘ (1_𝟚 ⊗ λ⁽ⁿ⁻¹⁾)`.
pub fn lambda_perm(n: usize, x: &ObjExpr) -> Result<Perm> {
    if n == 0 {
        return Err(Error::InvalidArgument("lambda_perm needs n >= 1".into()));
    }
    let mut lam = dr_perm(&ObjExpr::Unit, &ObjExpr::Unit, x);
    for k in 2..=n {
        let half = ObjExpr::direct_power(x, 1 << (k - 1));
        let lifted = Perm::identity(&ObjExpr::two()).mtensor(&lam);
        lam = dr_perm(&ObjExpr::Unit, &ObjExpr::Unit, &half).compose(&lifted)?;
    }
    lam.retype(
        ObjExpr::prod(ObjExpr::two_pow(n), x.clone()),
        ObjExpr::direct_power(x, 1 << n),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(d: usize) -> ObjExpr {
        ObjExpr::atom("A", d)
    }

    #[test]
    fn dims() {
        assert_eq!(ObjExpr::Zero.dim(), 0);
        assert_eq!(ObjExpr::two().dim(), 2);
        assert_eq!(ObjExpr::prod(ObjExpr::two(), a(3)).dim(), 6);
    }

    #[test]
    fn dl_small_case() {
        let u = ObjExpr::Unit;
        assert!(dl_perm(&u, &u, &u).is_identity());
        assert_eq!(dl_perm(&a(2), &u, &u).map(), &[0, 2, 1, 3]);
    }

    #[test]
    fn s_perm_cases() {
        let u = ObjExpr::Unit;
        assert_eq!(s_perm(&u, &u).map(), &[1, 0]);
        assert!(s_perm(&ObjExpr::Zero, &a(4)).is_identity());
        assert_eq!(s_perm(&a(2), &a(3)).map(), &[3, 4, 0, 1, 2]);
    }

    #[test]
    fn sigma_is_swap_on_qubits() {
        let two = ObjExpr::two();
        assert_eq!(sigma_perm(&two, &two).map(), &[0, 2, 1, 3]);
        assert!(sigma_perm(&ObjExpr::Unit, &a(5)).is_identity());
    }

    #[test]
    fn lambda_rejects_zero() {
        assert!(lambda_perm(0, &a(2)).is_err());
        assert!(lambda_perm(1, &a(3)).unwrap().is_identity());
        assert!(lambda_perm(3, &ObjExpr::Unit).unwrap().is_identity());
    }

    #[test]
    fn compose_checks_shapes() {
        let p = s_perm(&a(2), &a(3));
        assert!(p.compose(&p).is_err());
        assert!(p.invert().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn new_rejects_non_bijection() {
        assert!(Perm::new(a(3), a(3), vec![0, 0, 1]).is_err());
        assert!(Perm::new(a(3), a(2), vec![0, 1, 2]).is_err());
    }

    #[test]
    fn normal_form_is_strict() {
        let x = a(3);
        let left = ObjExpr::prod(ObjExpr::prod(ObjExpr::two(), ObjExpr::Unit), x.clone());
        let right = ObjExpr::prod(ObjExpr::two(), x.clone());
        assert!(left.equiv(&right));
        let s = ObjExpr::sum(ObjExpr::Zero, ObjExpr::sum(x.clone(), x.clone()));
        assert!(s.equiv(&ObjExpr::direct_power(&x, 2)));
        assert!(!ObjExpr::two().equiv(&a(2)));
    }

    #[test]
    fn parse_and_print() {
        let e: ObjExpr = "((2*A3)+ (I + 0))".parse().unwrap();
        assert_eq!(e.dim(), 7);
        assert_eq!(e.to_string(), "((2*A3)+(I+0))");
        assert_eq!("(I+I)".parse::<ObjExpr>().unwrap(), ObjExpr::two());
        assert!("(A3+".parse::<ObjExpr>().is_err());
        assert!("A0".parse::<ObjExpr>().is_err());
        assert!("B2".parse::<ObjExpr>().is_err());
        assert!("2 2".parse::<ObjExpr>().is_err());
    }
}
