use crate::error::{Result, SrbbError};
use serde::{Deserialize, Serialize};

/// Elementary gate. Qubits are 1-based; qubit 1 is the most significant bit
/// of the computational basis index.
///
/// `Rz(t) = diag(e^{it}, e^{-it})`, `Ry(t) = [[cos t, sin t], [-sin t, cos t]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    Rz { qubit: usize, angle: f64 },
    Ry { qubit: usize, angle: f64 },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn rz(qubit: usize, angle: f64) -> Self {
        Gate::Rz { qubit, angle }
    }

    pub fn ry(qubit: usize, angle: f64) -> Self {
        Gate::Ry { qubit, angle }
    }

    pub fn touches(&self, q: usize) -> bool {
        match *self {
            Gate::Cnot { control, target } => control == q || target == q,
            Gate::Rz { qubit, .. } | Gate::Ry { qubit, .. } => qubit == q,
        }
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    /// Same gate with every qubit index shifted by `k`.
    pub fn shifted(&self, k: usize) -> Self {
        match *self {
            Gate::Cnot { control, target } => Gate::cnot(control + k, target + k),
            Gate::Rz { qubit, angle } => Gate::rz(qubit + k, angle),
            Gate::Ry { qubit, angle } => Gate::ry(qubit + k, angle),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let ok = |q: usize| q >= 1 && q <= n;
        let good = match *self {
            Gate::Cnot { control, target } => ok(control) && ok(target) && control != target,
            Gate::Rz { qubit, angle } | Gate::Ry { qubit, angle } => ok(qubit) && angle.is_finite(),
        };
        if good {
            Ok(())
        } else {
            Err(SrbbError::Verification(format!("invalid gate {self:?} on {n} qubits")))
        }
    }
}

/// Ordered gate list, leftmost gate applied first.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(into = "CircuitRecord", try_from = "CircuitRecord")]
pub struct Circuit {
    pub n: usize,
    pub gates: Vec<Gate>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub cnot: usize,
    pub rz: usize,
    pub ry: usize,
}

impl GateCounts {
    pub fn one_qubit(&self) -> usize {
        self.rz + self.ry
    }

    pub fn total(&self) -> usize {
        self.cnot + self.rz + self.ry
    }
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let c = Circuit { n, gates };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.n))
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn extend(&mut self, other: &Circuit) {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        self.gates.extend_from_slice(&other.gates);
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Prepends `k` idle qubits on top: qubit `i` becomes `i + k`.
    pub fn padded(&self, k: usize) -> Circuit {
        Circuit { n: self.n + k, gates: self.gates.iter().map(|g| g.shifted(k)).collect() }
    }

    pub fn reversed(&self) -> Circuit {
        Circuit { n: self.n, gates: self.gates.iter().rev().copied().collect() }
    }

    pub fn counts(&self) -> GateCounts {
        count_gates(self)
    }
}

pub fn count_gates(c: &Circuit) -> GateCounts {
    let mut k = GateCounts::default();
    for g in &c.gates {
        match g {
            Gate::Cnot { .. } => k.cnot += 1,
            Gate::Rz { .. } => k.rz += 1,
            Gate::Ry { .. } => k.ry += 1,
        }
    }
    k
}

/// JSON form of one gate: `{"kind": "cx"|"rz"|"ry", "qubits": [...], "angle": ...}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: String,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CircuitRecord {
    pub n: usize,
    pub gates: Vec<GateRecord>,
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        match *g {
            Gate::Cnot { control, target } => GateRecord { kind: "cx".into(), qubits: vec![control, target], angle: None },
            Gate::Rz { qubit, angle } => GateRecord { kind: "rz".into(), qubits: vec![qubit], angle: Some(angle) },
            Gate::Ry { qubit, angle } => GateRecord { kind: "ry".into(), qubits: vec![qubit], angle: Some(angle) },
        }
    }
}

impl TryFrom<&GateRecord> for Gate {
    type Error = SrbbError;
    fn try_from(r: &GateRecord) -> Result<Self> {
        let bad = || SrbbError::Parse(format!("malformed gate record {r:?}"));
        match (r.kind.as_str(), r.qubits.as_slice(), r.angle) {
            ("cx", &[c, t], None) => Ok(Gate::cnot(c, t)),
            ("rz", &[q], Some(a)) => Ok(Gate::rz(q, a)),
            ("ry", &[q], Some(a)) => Ok(Gate::ry(q, a)),
            _ => Err(bad()),
        }
    }
}

impl From<Circuit> for CircuitRecord {
    fn from(c: Circuit) -> Self {
        CircuitRecord { n: c.n, gates: c.gates.iter().map(GateRecord::from).collect() }
    }
}

impl TryFrom<CircuitRecord> for Circuit {
    type Error = SrbbError;
    fn try_from(r: CircuitRecord) -> Result<Self> {
        let gates = r.gates.iter().map(Gate::try_from).collect::<Result<Vec<_>>>()?;
        Circuit::from_gates(r.n, gates)
    }
}
