//! Circuit builders and the naive-vs-conjugated comparison.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{conjugated_generators, naive_generators, Circuit, CliffordGate, Gate};
use crate::closure::{contains, lie_closure, ClosureConfig, DlaResult};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

/// `CNOT(0,1) · Rz(qubit 1) · CNOT(0,1)`, which implements a ZZ rotation.
pub fn build_rzz_decomposition() -> Circuit {
    let cnot = CliffordGate::Cnot { control: 0, target: 1 };
    let rz = PauliString::single(2, 1, Pauli::Z).expect("qubit 1 of 2");
    Circuit::new(2)
        .and_then(|c| c.with(Gate::FixedClifford(cnot)))
        .and_then(|c| c.with(Gate::ParamRotation(rz.into())))
        .and_then(|c| c.with(Gate::FixedClifford(cnot)))
        .expect("valid fixed circuit")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Topology {
    #[default]
    Chain,
    Ring,
}

impl Topology {
    pub fn edge_count(self, n_qubits: usize) -> usize {
        match self {
            Topology::Chain => n_qubits.saturating_sub(1),
            Topology::Ring => n_qubits,
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Chain => "chain",
            Topology::Ring => "ring",
        })
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chain" => Ok(Topology::Chain),
            "ring" => Ok(Topology::Ring),
            other => Err(Error::InvalidAnsatz(format!("unknown topology {other:?}"))),
        }
    }
}

/// Layered ansatz: rotations on the first `n_rad` qubits, then CZ gates on
/// nearest neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivariantAnsatzSpec {
    pub n_qubits: usize,
    pub n_rad: usize,
    pub layers: usize,
    pub topology: Topology,
}

impl EquivariantAnsatzSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidAnsatz(m));
        if self.n_qubits == 0 {
            return bad("need at least one qubit".into());
        }
        if self.n_rad == 0 || self.n_rad > self.n_qubits {
            return bad(format!("n_rad must be in [1, {}], got {}", self.n_qubits, self.n_rad));
        }
        if self.layers == 0 {
            return bad("need at least one layer".into());
        }
        if self.topology == Topology::Ring && self.n_qubits < 3 {
            return bad(format!("ring topology needs at least 3 qubits, got {}", self.n_qubits));
        }
        Ok(())
    }

    pub fn gate_count(&self) -> usize {
        self.layers * (3 * self.n_rad + self.topology.edge_count(self.n_qubits))
    }
}

/// Per layer: X, Y and Z rotations on each qubit `i < n_rad`, followed by
/// `CZ(i, i+1)` for every chain edge, plus `CZ(n-1, 0)` on a ring.
pub fn build_equivariant_ansatz(spec: &EquivariantAnsatzSpec) -> Result<Circuit> {
    spec.validate()?;
    let n = spec.n_qubits;
    let mut c = Circuit::new(n)?;
    for _ in 0..spec.layers {
        for q in 0..spec.n_rad {
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                c.rotate(q, p)?;
            }
        }
        for q in 0..n.saturating_sub(1) {
            c.fixed(CliffordGate::Cz(q, q + 1))?;
        }
        if spec.topology == Topology::Ring {
            c.fixed(CliffordGate::Cz(n - 1, 0))?;
        }
    }
    Ok(c)
}

#[derive(Debug, Clone)]
pub struct ModeComparison {
    pub naive: DlaResult,
    pub conjugated: DlaResult,
    /// Every conjugated-mode basis element lies in the naive-mode closure.
    pub subset_verified: bool,
    /// Fixed gates making up the Clifford left at the end in conjugation mode.
    pub residual_clifford: Vec<CliffordGate>,
    pub residual_clifford_gate_count: usize,
    pub residual_is_identity: bool,
}

/// Runs the closure in both generator-extraction modes and checks that the
/// conjugated algebra sits inside the naive one.
pub fn compare_modes(circuit: &Circuit, config: &ClosureConfig) -> Result<ModeComparison> {
    let naive_gens = naive_generators(circuit)?;
    let conj = conjugated_generators(circuit)?;
    let naive = lie_closure_or_empty(&naive_gens, circuit.n_qubits(), config)?;
    let conjugated = lie_closure_or_empty(&conj.generators, circuit.n_qubits(), config)?;
    let subset_verified = conjugated.basis.iter().all(|b| contains(&naive, b));
    Ok(ModeComparison {
        residual_is_identity: conj.residual_is_identity(circuit.n_qubits()),
        residual_clifford_gate_count: conj.residual.len(),
        residual_clifford: conj.residual,
        naive,
        conjugated,
        subset_verified,
    })
}

/// A circuit with no rotations has an empty generator list; its algebra is
/// the zero space rather than an error.
pub fn lie_closure_or_empty(gens: &[crate::pauli::PauliSum], n_qubits: usize, config: &ClosureConfig) -> Result<DlaResult> {
    if gens.is_empty() {
        let zero = crate::pauli::PauliSum::zero(n_qubits);
        return lie_closure(&[zero], config);
    }
    lie_closure(gens, config)
}
