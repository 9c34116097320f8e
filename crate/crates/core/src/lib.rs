//! Dynamical Lie algebras of parameterized quantum circuits.
//!
//! Generators are real-weighted sums of Pauli strings ([`PauliSum`]). The Lie
//! bracket is taken as `-i[A, B]` so the whole algebra lives in the real
//! vector space of Hermitian operators. Circuits mix parameterized rotations
//! with fixed gates, and generators can be extracted two ways:
//!
//! - [`naive_generators`] inserts the exponent Hamiltonian of every fixed gate
//!   as if it were a trainable generator.
//! - [`conjugated_generators`] pulls each rotation generator backwards through
//!   the fixed Clifford gates that precede it, leaving a global Clifford at the
//!   end of the circuit.
//!
//! Everything symbolic can be checked against the brute-force matrix backend
//! in [`oracle`].
//!
//! Qubit 0 is the leftmost character of a Pauli literal and the first tensor
//! factor. Literature that numbers qubits from 1 refers to qubit `k` as index
//! `k - 1` here.

pub mod ansatz;
pub mod circuit;
pub mod closure;
pub mod error;
pub mod oracle;
pub mod pauli;

pub use ansatz::{
    build_equivariant_ansatz, build_rzz_decomposition, compare_modes, EquivariantAnsatzSpec,
    ModeComparison, Topology,
};
pub use circuit::{
    clifford_conjugate, conjugate_sum, conjugated_generators, format_circuit, naive_generators,
    naive_hamiltonian, parse_circuit, Circuit, CliffordGate, ConjugatedGenerators, Gate,
};
pub use closure::{contains, lie_closure, reduce_against_basis, span_equals, ClosureConfig, DlaResult};
pub use error::{Error, Result};
pub use pauli::{bracket, commutes, pauli_mul, Pauli, PauliString, PauliSum, Phase, DROP_TOLERANCE};
