//! Dense matrices over a semiring, typed by source and target objects.
//!
//! A morphism `f : X → Y` is a `dim(Y) × dim(X)` row-major matrix. The
//! multiplicative tensor is the Kronecker product and the additive tensor is the
//! block-diagonal direct sum, both under the lexicographic basis ordering of
//! [`crate::shapes`]. Permutations are applied by relabelling rows and columns
//! rather than by multiplying permutation matrices.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
pub use crate::semiring::{Semiring, StarRing};
use crate::shapes::{ObjExpr, Perm};

/// Work (in scalar multiply-adds) above which products are split across threads.
const PARALLEL_WORK: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq)]
pub struct Mor<S> {
    dom: ObjExpr,
    cod: ObjExpr,
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Semiring> Mor<S> {
    /// Row-major `data` of length `dim(cod) * dim(dom)`.
    pub fn new(dom: ObjExpr, cod: ObjExpr, data: Vec<S>) -> Result<Self> {
        let (rows, cols) = (cod.dim(), dom.dim());
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{rows}x{cols} entries"),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(Mor { dom, cod, rows, cols, data })
    }

    pub fn from_fn(dom: ObjExpr, cod: ObjExpr, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let (rows, cols) = (cod.dim(), dom.dim());
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mor { dom, cod, rows, cols, data }
    }

    pub fn zero(dom: ObjExpr, cod: ObjExpr) -> Self {
        let n = dom.dim() * cod.dim();
        Mor { rows: cod.dim(), cols: dom.dim(), dom, cod, data: vec![S::zero(); n] }
    }

    pub fn identity(x: &ObjExpr) -> Self {
        let mut m = Self::zero(x.clone(), x.clone());
        for i in 0..m.rows {
            m.data[i * m.cols + i] = S::one();
        }
        m
    }

    /// The 0/1 matrix of a permutation: entry `(p(j), j)` is one.
    pub fn from_perm(p: &Perm) -> Self {
        let mut m = Self::zero(p.source().clone(), p.target().clone());
        for (j, &i) in p.map().iter().enumerate() {
            m.data[i * m.cols + j] = S::one();
        }
        m
    }

    pub fn dom(&self) -> &ObjExpr {
        &self.dom
    }

    pub fn cod(&self) -> &ObjExpr {
        &self.cod
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_endo(&self) -> bool {
        self.dom.equiv(&self.cod)
    }

    fn expect_endo(&self) -> Result<()> {
        if self.is_endo() {
            Ok(())
        } else {
            Err(Error::NotEndomorphism { dom: self.dom.to_string(), cod: self.cod.to_string() })
        }
    }

    /// Replace dom and cod by equivalent spellings.
    pub fn retype(mut self, dom: ObjExpr, cod: ObjExpr) -> Result<Self> {
        self.dom.expect_equiv(&dom)?;
        self.cod.expect_equiv(&cod)?;
        self.dom = dom;
        self.cod = cod;
        Ok(self)
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &Mor<S>) -> Result<Mor<S>> {
        self.dom.expect_equiv(&g.cod)?;
        let (rows, inner, cols) = (self.rows, self.cols, g.cols);
        let mut data = vec![S::zero(); rows * cols];
        let row_product = |i: usize, out: &mut [S]| {
            for k in 0..inner {
                let a = &self.data[i * inner + k];
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(g.row(k)) {
                    if !b.is_zero() {
                        *o = o.add(&a.mul(b));
                    }
                }
            }
        };
        if cols > 0 && rows * inner * cols >= PARALLEL_WORK {
            data.par_chunks_mut(cols).enumerate().for_each(|(i, out)| row_product(i, out));
        } else if cols > 0 {
            data.chunks_mut(cols).enumerate().for_each(|(i, out)| row_product(i, out));
        }
        Ok(Mor { dom: g.dom.clone(), cod: self.cod.clone(), rows, cols, data })
    }

    /// Multiplicative tensor (Kronecker product).
    pub fn mtensor(&self, g: &Mor<S>) -> Mor<S> {
        let (rows, cols) = (self.rows * g.rows, self.cols * g.cols);
        let mut data = vec![S::zero(); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..g.rows {
                    let base = (i * g.rows + k) * cols + j * g.cols;
                    for (o, b) in data[base..base + g.cols].iter_mut().zip(g.row(k)) {
                        *o = a.mul(b);
                    }
                }
            }
        }
        Mor {
            dom: ObjExpr::prod(self.dom.clone(), g.dom.clone()),
            cod: ObjExpr::prod(self.cod.clone(), g.cod.clone()),
            rows,
            cols,
            data,
        }
    }

    /// Additive tensor (block-diagonal direct sum).
    pub fn dsum(&self, g: &Mor<S>) -> Mor<S> {
        Self::dsum_all([self, g])
    }

    /// Block-diagonal sum of a sequence, nested to the right. An empty
    /// sequence gives the zero-dimensional identity.
    pub fn dsum_all<'a>(blocks: impl IntoIterator<Item = &'a Mor<S>>) -> Mor<S> {
        let blocks: Vec<&Mor<S>> = blocks.into_iter().collect();
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = vec![S::zero(); rows * cols];
        let (mut r0, mut c0) = (0, 0);
        for b in &blocks {
            for i in 0..b.rows {
                let start = (r0 + i) * cols + c0;
                data[start..start + b.cols].clone_from_slice(b.row(i));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Mor {
            dom: ObjExpr::sum_all(blocks.iter().map(|b| b.dom.clone())),
            cod: ObjExpr::sum_all(blocks.iter().map(|b| b.cod.clone())),
            rows,
            cols,
            data,
        }
    }

    /// `f^k` by binary exponentiation.
    pub fn power(&self, k: u64) -> Result<Mor<S>> {
        self.expect_endo()?;
        let mut result = Mor::identity(&self.dom);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base)?;
            }
        }
        result.retype(self.dom.clone(), self.cod.clone())
    }

    /// `self ∘ p`, computed by relabelling columns.
    pub fn pre_perm(&self, p: &Perm) -> Result<Mor<S>> {
        self.dom.expect_equiv(p.target())?;
        let map = p.map();
        let data = (0..self.rows)
            .flat_map(|i| map.iter().map(move |&pj| (i, pj)))
            .map(|(i, pj)| self.get(i, pj).clone())
            .collect();
        Ok(Mor { dom: p.source().clone(), cod: self.cod.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// `p ∘ self`, computed by relabelling rows.
    pub fn post_perm(&self, p: &Perm) -> Result<Mor<S>> {
        self.cod.expect_equiv(p.source())?;
        let mut data = vec![S::zero(); self.data.len()];
        for (i, &pi) in p.map().iter().enumerate() {
            data[pi * self.cols..(pi + 1) * self.cols].clone_from_slice(self.row(i));
        }
        Ok(Mor { dom: self.dom.clone(), cod: p.target().clone(), rows: self.rows, cols: self.cols, data })
    }

    /// `p⁻¹ ∘ self ∘ p` for an endomorphism on the target of `p`.
    pub fn conjugate(&self, p: &Perm) -> Result<Mor<S>> {
        self.pre_perm(p)?.post_perm(&p.invert())
    }

    /// Largest entrywise [`Semiring::distance`]; errors if dimensions differ.
    pub fn max_discrepancy(&self, other: &Mor<S>) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a.distance(b)).fold(0.0, f64::max))
    }

    pub fn map<T: Semiring>(&self, f: impl Fn(&S) -> T) -> Mor<T> {
        Mor {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `{dom, cod, rows, cols, entries}` with entries as a list of rows.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows)
            .map(|i| Value::Array(self.row(i).iter().map(S::to_json).collect()))
            .collect();
        json!({
            "dom": self.dom.to_string(),
            "cod": self.cod.to_string(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": entries,
        })
    }
}

impl<S: StarRing> Mor<S> {
    /// Conjugate transpose.
    pub fn dagger(&self) -> Mor<S> {
        Mor::from_fn(self.cod.clone(), self.dom.clone(), |i, j| self.get(j, i).conj())
    }

    /// `‖M†M − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.dagger().compose(self).expect("dagger composes");
        let id = Mor::<S>::identity(&self.dom);
        gram.entries().iter().zip(id.entries()).map(|(a, b)| a.sub(b).abs()).fold(0.0, f64::max)
    }
}
