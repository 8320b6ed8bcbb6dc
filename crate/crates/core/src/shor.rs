//! Period finding and factoring on top of the efficient iterator. The oracle
//! for `U|p⟩ = |r·p mod K⟩` is the efficient form of `!^{2ⁿ}(U)`, each stage
//! a modular-multiplication permutation with multiplier `r^{2^k} mod K`
//! obtained by classical squaring.

use std::collections::BTreeMap;

use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{sample, Circuit, Gate, Register, StateVec};
use crate::random::{derive_seed, rng_for};
use crate::shapes::{ObjExpr, Perm};

/// Candidate periods `q·j` for `j = 1..=PERIOD_MULTIPLIERS` are tried for
/// every convergent denominator `q`.
pub const PERIOD_MULTIPLIERS: u64 = 3;

/// Largest simulated register, in qubits (controls plus target).
pub const MAX_QUBITS: usize = 26;

pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let (mut acc, mut b, mut e) = (1u128, base as u128 % m, exp);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

/// Smallest `m` with `2^m ≥ k`.
pub fn qubits_for(k: u64) -> usize {
    (64 - k.saturating_sub(1).leading_zeros()) as usize
}

pub fn is_prime(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModMulPerm {
    pub r: u64,
    pub modulus: u64,
    pub m: usize,
    pub perm: Perm,
}

/// `p ↦ r·p mod K` for `p < K`, identity on the padding `K ≤ p < 2^m`.
pub fn mod_mult_perm(r: u64, modulus: u64, m: usize) -> Result<ModMulPerm> {
    if modulus < 2 {
        return Err(Error::InvalidArgument(format!("modulus {modulus} must be at least 2")));
    }
    if m >= 32 || (1u64 << m) < modulus {
        return Err(Error::InvalidArgument(format!("{m} target qubits cannot hold residues mod {modulus}")));
    }
    if r.gcd(&modulus) != 1 {
        return Err(Error::NotCoprime { base: r, modulus });
    }
    let size = 1usize << m;
    let map = (0..size as u64)
        .map(|p| if p < modulus { (r as u128 * p as u128 % modulus as u128) as u64 } else { p } as usize)
        .collect();
    let obj = ObjExpr::two_pow(m);
    let perm = Perm::new(obj.clone(), obj, map)?;
    Ok(ModMulPerm { r, modulus, m, perm })
}

/// `n` controlled stages, stage `k` multiplying by `r^{2^k} mod K` when
/// control qubit `k` is set.
pub fn oracle(r: u64, modulus: u64, n: usize, m: usize) -> Result<Circuit> {
    mod_mult_perm(r, modulus, m)?;
    let mut c = Circuit::new(n, 1 << m)?;
    let mut multiplier = r % modulus;
    for k in 0..n {
        c.push(Gate::CtrlMulMod { control: k, multiplier, modulus })?;
        multiplier = mod_pow(multiplier, 2, modulus);
    }
    Ok(c)
}

/// Hadamards on every control, the oracle, then the DFT on the controls.
pub fn period_finding_circuit(r: u64, modulus: u64, n: usize, m: usize, inverse: bool) -> Result<Circuit> {
    if n + m > MAX_QUBITS {
        return Err(Error::InvalidArgument(format!("{n} + {m} qubits exceeds the simulation limit of {MAX_QUBITS}")));
    }
    let stages = oracle(r, modulus, n, m)?;
    let mut c = Circuit::new(n, 1 << m)?;
    for q in 0..n {
        c.push(Gate::Hadamard { qubit: q })?;
    }
    for g in stages.gates() {
        c.push(g.clone())?;
    }
    c.push(Gate::Qft { start: 0, len: n, inverse })?;
    Ok(c)
}

/// Output state of the period-finding circuit on `|0⟩ ⊗ |1⟩`.
pub fn period_finding_state(r: u64, modulus: u64, n: usize, inverse: bool) -> Result<StateVec> {
    let m = qubits_for(modulus);
    let circuit = period_finding_circuit(r, modulus, n, m, inverse)?;
    let mut state = StateVec::basis(n, 1 << m, 0, 1)?;
    circuit.apply_in_place(&mut state)?;
    Ok(state)
}

/// Exact outcome distribution of the control register after the forward DFT.
pub fn outcome_distribution(r: u64, modulus: u64, n: usize) -> Result<Vec<f64>> {
    Ok(period_finding_state(r, modulus, n, false)?.probabilities(Register::Controls))
}

/// Convergents `p/q` of `y/Q` from the Euclidean recurrence, starting with
/// the integer part.
pub fn convergents(y: u64, big_q: u64) -> Vec<(u64, u64)> {
    let (mut num, mut den) = (y as u128, big_q as u128);
    let (mut p_prev, mut p) = (0u128, 1u128);
    let (mut q_prev, mut q) = (1u128, 0u128);
    let mut out = Vec::new();
    while den != 0 {
        let a = num / den;
        (p_prev, p) = (p, a * p + p_prev);
        (q_prev, q) = (q, a * q + q_prev);
        out.push((p as u64, q as u64));
        (num, den) = (den, num - a * den);
    }
    out
}

/// Factors from an even period: `gcd(r^{s/2} ∓ 1, K)`, when both are
/// nontrivial.
pub fn extract_factors(r: u64, s: u64, modulus: u64) -> Option<(u64, u64)> {
    if s == 0 || s % 2 == 1 {
        return None;
    }
    let half = mod_pow(r, s / 2, modulus);
    if half == modulus - 1 {
        return None;
    }
    let f1 = (half + modulus - 1).gcd(&modulus);
    let f2 = (half + 1).gcd(&modulus);
    let nontrivial = |f: u64| f > 1 && f < modulus;
    (nontrivial(f1) && nontrivial(f2)).then_some((f1, f2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// `K` is even.
    Even,
    /// The drawn base shares a factor with `K`.
    Gcd,
    /// Quantum period finding followed by classical post-processing.
    Period,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergent {
    pub outcome: u64,
    pub p: u64,
    pub q: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub base: u64,
    pub method: Method,
    pub sample_seed: Option<u64>,
    pub counts: BTreeMap<u64, u64>,
    pub convergents: Vec<Convergent>,
    pub period: Option<u64>,
    pub factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRun {
    pub modulus: u64,
    pub base: Option<u64>,
    pub controls: usize,
    pub target_qubits: usize,
    pub shots: usize,
    pub seed: u64,
    pub method: Method,
    pub period: Option<u64>,
    pub factors: Vec<u64>,
    pub message: String,
    pub attempts: Vec<Attempt>,
}

impl FactorRun {
    pub fn succeeded(&self) -> bool {
        !self.factors.is_empty()
    }

    fn finish(mut self, attempt: Option<Attempt>) -> Self {
        if let Some(a) = attempt {
            self.base = Some(a.base);
            self.method = a.method;
            self.period = a.period;
            self.factors = a.factors.clone();
            self.attempts.push(a);
        }
        self.message = match self.factors.as_slice() {
            [] if is_prime(self.modulus) => format!("{} is prime: no nontrivial factor", self.modulus),
            [] => "no nontrivial factor found".to_string(),
            fs => format!("{} = {}", self.modulus, fs.iter().map(u64::to_string).collect::<Vec<_>>().join(" * ")),
        };
        self
    }
}

/// Default control width `2·⌈log₂ K⌉`.
pub fn default_controls(modulus: u64) -> usize {
    2 * qubits_for(modulus)
}

fn check_modulus(modulus: u64) -> Result<()> {
    if modulus < 2 {
        Err(Error::InvalidArgument(format!("modulus {modulus} must be at least 2")))
    } else {
        Ok(())
    }
}

fn complement(f: u64, modulus: u64) -> Vec<u64> {
    let mut fs = vec![f, modulus / f];
    fs.sort_unstable();
    fs
}

fn period_attempt(r: u64, modulus: u64, n: usize, shots: usize, seed: u64, inverse: bool) -> Result<Attempt> {
    let state = period_finding_state(r, modulus, n, inverse)?;
    let counts = sample(&state, Register::Controls, shots, seed)?;
    let mut order: Vec<(u64, u64)> = counts.iter().map(|(&y, &c)| (y, c)).collect();
    order.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let big_q = 1u64 << n;
    let mut examined = Vec::new();
    let mut period = None;
    'outcomes: for (y, _) in order {
        for (p, q) in convergents(y, big_q) {
            examined.push(Convergent { outcome: y, p, q });
            if let Some(s) = (1..=PERIOD_MULTIPLIERS).map(|j| j * q).find(|&s| mod_pow(r, s, modulus) == 1) {
                period = Some(s);
                break 'outcomes;
            }
        }
    }
    let factors = period
        .and_then(|s| extract_factors(r, s, modulus))
        .map(|(a, b)| {
            let mut fs = vec![a, b];
            fs.sort_unstable();
            fs
        })
        .unwrap_or_default();
    Ok(Attempt {
        base: r,
        method: if factors.is_empty() { Method::None } else { Method::Period },
        sample_seed: Some(seed),
        counts,
        convergents: examined,
        period,
        factors,
    })
}

/// One round of period finding with base `r` and `n` controls.
pub fn period_find(r: u64, modulus: u64, n: usize, shots: usize, seed: u64) -> Result<FactorRun> {
    check_modulus(modulus)?;
    if r.gcd(&modulus) != 1 {
        return Err(Error::NotCoprime { base: r, modulus });
    }
    let attempt = period_attempt(r, modulus, n, shots, seed, false)?;
    let run = FactorRun {
        modulus,
        base: None,
        controls: n,
        target_qubits: qubits_for(modulus),
        shots,
        seed,
        method: Method::None,
        period: None,
        factors: Vec::new(),
        message: String::new(),
        attempts: Vec::new(),
    };
    Ok(run.finish(Some(attempt)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorConfig {
    pub controls: Option<usize>,
    pub shots: usize,
    pub seed: u64,
    pub max_attempts: usize,
    pub base: Option<u64>,
    /// Use the inverse DFT before measuring.
    pub inverse_qft: bool,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            controls: None,
            shots: 1024,
            seed: crate::random::DEFAULT_SEED,
            max_attempts: 8,
            base: None,
            inverse_qft: false,
        }
    }
}

/// Draws bases until a factor is found or `max_attempts` runs out. Attempt
/// `i` draws its base from sub-seed `("factor.base", i)` and samples with
/// sub-seed `("factor.shots", i)`. A fixed base is used for every attempt.
pub fn factor(modulus: u64, cfg: &FactorConfig) -> Result<FactorRun> {
    check_modulus(modulus)?;
    if cfg.max_attempts == 0 {
        return Err(Error::InvalidArgument("max_attempts must be at least 1".into()));
    }
    let n = cfg.controls.unwrap_or_else(|| default_controls(modulus));
    let m = qubits_for(modulus);
    if n == 0 || n + m > MAX_QUBITS {
        return Err(Error::InvalidArgument(format!("{n} controls for a {m}-qubit target cannot be simulated")));
    }
    let mut run = FactorRun {
        modulus,
        base: None,
        controls: n,
        target_qubits: m,
        shots: cfg.shots,
        seed: cfg.seed,
        method: Method::None,
        period: None,
        factors: Vec::new(),
        message: String::new(),
        attempts: Vec::new(),
    };
    if is_prime(modulus) {
        return Ok(run.finish(None));
    }
    if modulus.is_multiple_of(2) {
        run.method = Method::Even;
        run.factors = complement(2, modulus);
        return Ok(run.finish(None));
    }
    if let Some(r) = cfg.base {
        if r < 2 || r >= modulus {
            return Err(Error::InvalidArgument(format!("base {r} must lie in [2, {}]", modulus - 1)));
        }
    }
    let mut last = None;
    for i in 0..cfg.max_attempts as u64 {
        let r = cfg.base.unwrap_or_else(|| rng_for(cfg.seed, "factor.base", i).random_range(2..modulus));
        let g = r.gcd(&modulus);
        let attempt = if g > 1 {
            Attempt {
                base: r,
                method: Method::Gcd,
                sample_seed: None,
                counts: BTreeMap::new(),
                convergents: Vec::new(),
                period: None,
                factors: complement(g, modulus),
            }
        } else {
            let seed = derive_seed(cfg.seed, "factor.shots", i);
            period_attempt(r, modulus, n, cfg.shots, seed, cfg.inverse_qft)?
        };
        let done = !attempt.factors.is_empty();
        if done {
            return Ok(run.finish(Some(attempt)));
        }
        if let Some(prev) = last.replace(attempt) {
            run.attempts.push(prev);
        }
    }
    Ok(run.finish(last))
}
