use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{dft_twiddles, StateVec};
use crate::error::{Error, Result};
use crate::iterator::{Control, Form, IteratorBuild};
use crate::morphisms::Mor;
use crate::shapes::ObjExpr;

/// One gate. Qubit indices refer to the control register, qubit 0 least
/// significant; the target register is addressed implicitly.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    /// Operator `matrix_ref` (which is `base^power`) on the target, controlled
    /// on one qubit.
    CtrlPower { control: usize, power: u64, matrix_ref: String },
    /// Operator `matrix_ref` (which is `base^pattern`) on the target, controlled
    /// on the whole register being `|pattern⟩`.
    MultiCtrlPower { pattern: u64, matrix_ref: String },
    /// `|p⟩ ↦ |multiplier·p mod modulus⟩` on the target for `p < modulus`,
    /// identity above, controlled on one qubit.
    CtrlMulMod { control: usize, multiplier: u64, modulus: u64 },
    Swap { a: usize, b: usize },
    Hadamard { qubit: usize },
    /// Dense DFT on qubits `start..start + len`.
    Qft { start: usize, len: usize, inverse: bool },
    /// Uncontrolled operator on the target.
    Dense { matrix_ref: String },
}

/// Serialised form of a gate: every field is always present, absent values
/// are `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: String,
    pub qubits: Vec<usize>,
    pub power: Option<u64>,
    pub matrix_ref: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitJson {
    pub n_controls: usize,
    pub target_dim: usize,
    pub gates: Vec<GateRecord>,
}

impl Gate {
    fn record(&self, n_controls: usize) -> GateRecord {
        let rec = |kind: &str, qubits: Vec<usize>, power: Option<u64>, matrix_ref: Option<String>| GateRecord {
            kind: kind.to_string(),
            qubits,
            power,
            matrix_ref,
        };
        match self {
            Gate::CtrlPower { control, power, matrix_ref } => {
                rec("ctrl_power", vec![*control], Some(*power), Some(matrix_ref.clone()))
            }
            Gate::MultiCtrlPower { pattern, matrix_ref } => {
                rec("multi_ctrl_power", (0..n_controls).collect(), Some(*pattern), Some(matrix_ref.clone()))
            }
            Gate::CtrlMulMod { control, multiplier, modulus } => rec(
                "ctrl_mulmod",
                vec![*control],
                Some(*multiplier),
                Some(format!("mulmod:{multiplier}:{modulus}")),
            ),
            Gate::Swap { a, b } => rec("swap", vec![*a, *b], None, None),
            Gate::Hadamard { qubit } => rec("h", vec![*qubit], None, None),
            Gate::Qft { start, len, inverse } => {
                rec(if *inverse { "iqft" } else { "qft" }, (*start..start + len).collect(), None, None)
            }
            Gate::Dense { matrix_ref } => rec("dense", vec![], None, Some(matrix_ref.clone())),
        }
    }

    fn from_record(r: &GateRecord) -> Result<Gate> {
        let bad = || Error::InvalidArgument(format!("malformed {} gate", r.kind));
        let one_qubit = || match r.qubits.as_slice() {
            [q] => Ok(*q),
            _ => Err(bad()),
        };
        let power = || r.power.ok_or_else(bad);
        let matrix_ref = || r.matrix_ref.clone().ok_or_else(bad);
        Ok(match r.kind.as_str() {
            "ctrl_power" => Gate::CtrlPower { control: one_qubit()?, power: power()?, matrix_ref: matrix_ref()? },
            "multi_ctrl_power" => Gate::MultiCtrlPower { pattern: power()?, matrix_ref: matrix_ref()? },
            "ctrl_mulmod" => {
                let mref = matrix_ref()?;
                let modulus = mref.rsplit(':').next().and_then(|m| m.parse().ok()).ok_or_else(bad)?;
                Gate::CtrlMulMod { control: one_qubit()?, multiplier: power()?, modulus }
            }
            "swap" => match r.qubits.as_slice() {
                [a, b] => Gate::Swap { a: *a, b: *b },
                _ => return Err(bad()),
            },
            "h" => Gate::Hadamard { qubit: one_qubit()? },
            "qft" | "iqft" => {
                let start = *r.qubits.first().ok_or_else(bad)?;
                Gate::Qft { start, len: r.qubits.len(), inverse: r.kind == "iqft" }
            }
            "dense" => Gate::Dense { matrix_ref: matrix_ref()? },
            other => return Err(Error::InvalidArgument(format!("unknown gate kind `{other}`"))),
        })
    }
}

/// An ordered gate list over `n` control qubits and a `d`-level target, plus
/// the dense target operators its gates refer to by name.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_controls: usize,
    target_dim: usize,
    gates: Vec<Gate>,
    operators: BTreeMap<String, Mor<Complex64>>,
}

impl Circuit {
    pub fn new(n_controls: usize, target_dim: usize) -> Result<Self> {
        if n_controls == 0 || n_controls >= 32 || target_dim == 0 {
            return Err(Error::InvalidArgument(format!(
                "circuit needs 1..32 controls and a non-empty target, got {n_controls} and {target_dim}"
            )));
        }
        Ok(Circuit { n_controls, target_dim, gates: Vec::new(), operators: BTreeMap::new() })
    }

    pub fn n_controls(&self) -> usize {
        self.n_controls
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn operator(&self, name: &str) -> Option<&Mor<Complex64>> {
        self.operators.get(name)
    }

    pub fn add_operator(&mut self, name: impl Into<String>, op: Mor<Complex64>) -> Result<()> {
        if op.rows() != self.target_dim || op.cols() != self.target_dim {
            return Err(Error::ShapeMismatch {
                expected: format!("{0}x{0} target operator", self.target_dim),
                found: format!("{}x{}", op.rows(), op.cols()),
            });
        }
        self.operators.insert(name.into(), op);
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.n_controls {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("qubit {q} out of range for {} controls", self.n_controls)))
        }
    }

    /// Appends a gate after checking qubit ranges. Operator references are
    /// resolved when the circuit is applied.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        match &gate {
            Gate::CtrlPower { control, .. } => self.check_qubit(*control)?,
            Gate::MultiCtrlPower { pattern, .. } => {
                if *pattern >= 1 << self.n_controls {
                    return Err(Error::InvalidArgument(format!("control pattern {pattern} out of range")));
                }
            }
            Gate::CtrlMulMod { control, multiplier, modulus } => {
                self.check_qubit(*control)?;
                if *modulus == 0 || *modulus as usize > self.target_dim {
                    return Err(Error::InvalidArgument(format!("modulus {modulus} does not fit the target")));
                }
                if num_integer::gcd(*multiplier, *modulus) != 1 {
                    return Err(Error::NotCoprime { base: *multiplier, modulus: *modulus });
                }
            }
            Gate::Swap { a, b } => {
                self.check_qubit(*a)?;
                self.check_qubit(*b)?;
            }
            Gate::Hadamard { qubit } => self.check_qubit(*qubit)?,
            Gate::Qft { start, len, .. } => {
                if *len == 0 || start + len > self.n_controls || *len > 16 {
                    return Err(Error::InvalidArgument(format!("qft range {start}+{len} out of range")));
                }
            }
            Gate::Dense { .. } => {}
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Gate form of an iterator build. Operators are registered as
    /// `{label}^{exponent}`; the naive form omits its identity block.
    pub fn from_iterator(build: &IteratorBuild<Complex64>, label: &str) -> Result<Circuit> {
        let mut c = Circuit::new(build.n, build.target().dim())?;
        for block in &build.blocks {
            let name = format!("{label}^{}", block.exponent);
            let gate = match (build.form, block.control) {
                (Form::Naive, Control::Pattern(0)) => continue,
                (Form::Naive, Control::Pattern(pattern)) => Gate::MultiCtrlPower { pattern, matrix_ref: name.clone() },
                (Form::Efficient, Control::Qubit(control)) => {
                    Gate::CtrlPower { control, power: block.exponent, matrix_ref: name.clone() }
                }
                _ => return Err(Error::InvalidArgument("block control does not match build form".into())),
            };
            c.add_operator(name, block.op.clone())?;
            c.push(gate)?;
        }
        Ok(c)
    }

    pub fn to_json(&self) -> CircuitJson {
        CircuitJson {
            n_controls: self.n_controls,
            target_dim: self.target_dim,
            gates: self.gates.iter().map(|g| g.record(self.n_controls)).collect(),
        }
    }

    /// Rebuilds the gate list; operators are not part of the JSON form and
    /// must be added again before applying gates that name them.
    pub fn from_json(json: &CircuitJson) -> Result<Circuit> {
        let mut c = Circuit::new(json.n_controls, json.target_dim)?;
        for r in &json.gates {
            c.push(Gate::from_record(r)?)?;
        }
        Ok(c)
    }

    fn resolve(&self, name: &str) -> Result<&Mor<Complex64>> {
        self.operators.get(name).ok_or_else(|| Error::UnknownOperator(name.to_string()))
    }

    pub fn apply(&self, state: &StateVec) -> Result<StateVec> {
        let mut out = state.clone();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }

    pub fn apply_in_place(&self, state: &mut StateVec) -> Result<()> {
        if state.n_controls() != self.n_controls || state.target_dim() != self.target_dim {
            return Err(Error::ShapeMismatch {
                expected: format!("2^{} x {} state", self.n_controls, self.target_dim),
                found: format!("2^{} x {} state", state.n_controls(), state.target_dim()),
            });
        }
        for gate in &self.gates {
            self.apply_gate(gate, state)?;
        }
        Ok(())
    }

    fn apply_gate(&self, gate: &Gate, state: &mut StateVec) -> Result<()> {
        let d = self.target_dim;
        let blocks = 1usize << self.n_controls;
        let amps = state.amplitudes_mut();
        let mut scratch = vec![Complex64::new(0.0, 0.0); d];
        let mut apply_dense = |m: &Mor<Complex64>, slice: &mut [Complex64]| {
            for (i, s) in scratch.iter_mut().enumerate() {
                *s = m.row(i).iter().zip(slice.iter()).map(|(x, y)| x * y).sum();
            }
            slice.copy_from_slice(&scratch);
        };
        match gate {
            Gate::CtrlPower { control, matrix_ref, .. } => {
                let m = self.resolve(matrix_ref)?;
                for a in (0..blocks).filter(|a| a >> control & 1 == 1) {
                    apply_dense(m, &mut amps[a * d..(a + 1) * d]);
                }
            }
            Gate::MultiCtrlPower { pattern, matrix_ref } => {
                let a = *pattern as usize;
                apply_dense(self.resolve(matrix_ref)?, &mut amps[a * d..(a + 1) * d]);
            }
            Gate::Dense { matrix_ref } => {
                let m = self.resolve(matrix_ref)?;
                for slice in amps.chunks_mut(d) {
                    apply_dense(m, slice);
                }
            }
            Gate::CtrlMulMod { control, multiplier, modulus } => {
                let (c, k) = (*multiplier as u128, *modulus as u128);
                let image: Vec<usize> =
                    (0..d).map(|p| if (p as u128) < k { (c * p as u128 % k) as usize } else { p }).collect();
                let mut buf = vec![Complex64::new(0.0, 0.0); d];
                for a in (0..blocks).filter(|a| a >> control & 1 == 1) {
                    let slice = &mut amps[a * d..(a + 1) * d];
                    for (p, &q) in image.iter().enumerate() {
                        buf[q] = slice[p];
                    }
                    slice.copy_from_slice(&buf);
                }
            }
            Gate::Swap { a, b } => {
                for x in 0..blocks {
                    if x >> a & 1 == 1 && x >> b & 1 == 0 {
                        let y = x ^ (1 << a) ^ (1 << b);
                        for t in 0..d {
                            amps.swap(x * d + t, y * d + t);
                        }
                    }
                }
            }
            Gate::Hadamard { qubit } => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                for x in (0..blocks).filter(|x| x >> qubit & 1 == 0) {
                    let y = x | 1 << qubit;
                    for t in 0..d {
                        let (u, v) = (amps[x * d + t], amps[y * d + t]);
                        amps[x * d + t] = (u + v) * h;
                        amps[y * d + t] = (u - v) * h;
                    }
                }
            }
            Gate::Qft { start, len, inverse } => {
                let size = 1usize << len;
                let w = dft_twiddles(size, *inverse);
                let field = (size - 1) << start;
                let mut input = vec![Complex64::new(0.0, 0.0); size];
                for rest in (0..blocks).filter(|x| x & field == 0) {
                    for t in 0..d {
                        for (v, slot) in input.iter_mut().enumerate() {
                            *slot = amps[(rest | v << start) * d + t];
                        }
                        for j in 0..size {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for (v, x) in input.iter().enumerate() {
                                acc += w[(j * v) & (size - 1)] * x;
                            }
                            amps[(rest | j << start) * d + t] = acc;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Dense matrix of the circuit on `𝟚^{⊗n} ⊗ target`, one column per basis
    /// state.
    pub fn to_mor(&self, target: &ObjExpr) -> Result<Mor<Complex64>> {
        if target.dim() != self.target_dim {
            return Err(Error::ShapeMismatch {
                expected: format!("target of dim {}", self.target_dim),
                found: target.to_string(),
            });
        }
        let obj = ObjExpr::prod(ObjExpr::two_pow(self.n_controls), target.clone());
        let size = obj.dim();
        let mut columns = Vec::with_capacity(size);
        for j in 0..size {
            let basis = StateVec::basis(self.n_controls, self.target_dim, (j / self.target_dim) as u64, j % self.target_dim)?;
            columns.push(self.apply(&basis)?);
        }
        Ok(Mor::from_fn(obj.clone(), obj, |i, j| columns[j].amplitudes()[i]))
    }
}
