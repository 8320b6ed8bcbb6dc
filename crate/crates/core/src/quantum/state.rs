use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::rng;

/// State of `n` control qubits and a `d`-level target. Amplitude of
/// `|a⟩ ⊗ |t⟩` lives at index `a·d + t`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVec {
    n_controls: usize,
    target_dim: usize,
    amps: Vec<Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Register {
    Controls,
    Target,
}

impl StateVec {
    pub fn new(n_controls: usize, target_dim: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n_controls >= 32 || target_dim == 0 || amps.len() != (1usize << n_controls) * target_dim {
            return Err(Error::ShapeMismatch {
                expected: format!("2^{n_controls} x {target_dim} amplitudes"),
                found: amps.len().to_string(),
            });
        }
        Ok(StateVec { n_controls, target_dim, amps })
    }

    /// `|a⟩ ⊗ |t⟩`.
    pub fn basis(n_controls: usize, target_dim: usize, a: u64, t: usize) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); (1usize << n_controls) * target_dim];
        if a >= 1 << n_controls || t >= target_dim {
            return Err(Error::InvalidArgument(format!("basis state |{a}>|{t}> out of range")));
        }
        amps[a as usize * target_dim + t] = Complex64::new(1.0, 0.0);
        Self::new(n_controls, target_dim, amps)
    }

    /// `|a⟩ ⊗ ψ`.
    pub fn product(n_controls: usize, a: u64, psi: &[Complex64]) -> Result<Self> {
        let d = psi.len();
        let mut s = Self::basis(n_controls, d.max(1), a, 0)?;
        let start = a as usize * d;
        s.amps[start..start + d].copy_from_slice(psi);
        Ok(s)
    }

    pub fn n_controls(&self) -> usize {
        self.n_controls
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn target_slice(&self, a: u64) -> &[Complex64] {
        let d = self.target_dim;
        &self.amps[a as usize * d..(a as usize + 1) * d]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Marginal outcome probabilities of one register.
    pub fn probabilities(&self, register: Register) -> Vec<f64> {
        let d = self.target_dim;
        match register {
            Register::Controls => self.amps.chunks(d).map(|c| c.iter().map(|z| z.norm_sqr()).sum()).collect(),
            Register::Target => {
                let mut p = vec![0.0; d];
                for chunk in self.amps.chunks(d) {
                    p.iter_mut().zip(chunk).for_each(|(pi, z)| *pi += z.norm_sqr());
                }
                p
            }
        }
    }
}

/// Draws `shots` outcomes of `register` from the Born distribution with a
/// seeded generator. Returns outcome → count.
pub fn sample(state: &StateVec, register: Register, shots: usize, seed: u64) -> Result<BTreeMap<u64, u64>> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let weights = state.probabilities(register);
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::InvalidArgument(format!("bad distribution: {e}")))?;
    let mut rng = rng(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(dist.sample(&mut rng) as u64).or_insert(0) += 1;
    }
    Ok(counts)
}
