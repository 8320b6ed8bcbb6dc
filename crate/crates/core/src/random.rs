//! Seeded random instances.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] seeded through
//! [`derive_seed`]: a root seed, a string label naming the consumer, and an
//! index (trial number, attempt number). The label is hashed with 64-bit FNV-1a,
//! combined with the root and index, and finished with the SplitMix64 mixer.
//! Suites therefore draw from independent streams and reproduce individually.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::morphisms::{Mor, Semiring};
use crate::shapes::{ObjExpr, Perm};

pub type SimRng = ChaCha8Rng;

/// Default root seed when none is given.
pub const DEFAULT_SEED: u64 = 0x005e_ed0f_d157;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Sub-seed for the `index`-th draw of consumer `label` under `root`.
pub fn derive_seed(root: u64, label: &str, index: u64) -> u64 {
    splitmix64(splitmix64(root ^ fnv1a(label)).wrapping_add(index))
}

pub fn rng(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rng_for(root: u64, label: &str, index: u64) -> SimRng {
    rng(derive_seed(root, label, index))
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Unit vector with Gaussian components.
pub fn random_state(dim: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim).map(|_| random_complex(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

/// Haar-ish unitary: Gram–Schmidt on the columns of a complex Gaussian matrix.
pub fn random_unitary(x: &ObjExpr, rng: &mut impl Rng) -> Mor<Complex64> {
    let d = x.dim();
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d).map(|_| random_complex(rng)).collect();
        // two passes keep the basis orthonormal to machine precision
        for _ in 0..2 {
            for c in &cols {
                let overlap: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                v.iter_mut().zip(c).for_each(|(vi, ci)| *vi -= overlap * ci);
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|z| *z /= norm);
            cols.push(v);
        }
    }
    Mor::from_fn(x.clone(), x.clone(), |i, j| cols[j][i])
}

pub fn random_complex_matrix(dom: &ObjExpr, cod: &ObjExpr, rng: &mut impl Rng) -> Mor<Complex64> {
    Mor::from_fn(dom.clone(), cod.clone(), |_, _| random_complex(rng))
}

pub fn random_relation(dom: &ObjExpr, cod: &ObjExpr, rng: &mut impl Rng) -> Mor<bool> {
    Mor::from_fn(dom.clone(), cod.clone(), |_, _| rng.random_bool(0.5))
}

pub fn random_perm(x: &ObjExpr, rng: &mut impl Rng) -> Perm {
    let mut map: Vec<usize> = (0..x.dim()).collect();
    map.shuffle(rng);
    Perm::new(x.clone(), x.clone(), map).expect("shuffle is a bijection")
}

/// Random morphisms for the semirings the crate ships.
pub trait RandomMor: Semiring {
    /// An arbitrary (possibly non-square) morphism.
    fn random_mor(dom: &ObjExpr, cod: &ObjExpr, rng: &mut SimRng) -> Mor<Self>;
    /// An invertible endomorphism: a unitary for complex scalars, a
    /// permutation matrix for booleans.
    fn random_iso(x: &ObjExpr, rng: &mut SimRng) -> Mor<Self>;
}

impl RandomMor for Complex64 {
    fn random_mor(dom: &ObjExpr, cod: &ObjExpr, rng: &mut SimRng) -> Mor<Self> {
        random_complex_matrix(dom, cod, rng)
    }

    fn random_iso(x: &ObjExpr, rng: &mut SimRng) -> Mor<Self> {
        random_unitary(x, rng)
    }
}

impl RandomMor for bool {
    fn random_mor(dom: &ObjExpr, cod: &ObjExpr, rng: &mut SimRng) -> Mor<Self> {
        random_relation(dom, cod, rng)
    }

    fn random_iso(x: &ObjExpr, rng: &mut SimRng) -> Mor<Self> {
        Mor::from_perm(&random_perm(x, rng))
    }
}
