use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("Pauli literal {literal:?} has length {found}, expected {expected}")]
    PauliLength { literal: String, expected: usize, found: usize },

    #[error("invalid Pauli character {found:?} at position {position} (expected one of I, X, Y, Z)")]
    PauliChar { found: char, position: usize },

    #[error("qubit count must be positive")]
    NoQubits,

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitIndex { index: usize, n_qubits: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("fixed gate {gate} at position {position} has no built-in Hamiltonian; supply one with `fixedh`")]
    UnregisteredHamiltonian { gate: String, position: usize },

    #[error("fixed Hamiltonian gate at position {position} is not a Clifford; conjugation mode is undefined for it")]
    NonCliffordFixedGate { position: usize },

    #[error("dense oracle supports at most {max} qubits, got {n_qubits}")]
    OracleSize { n_qubits: usize, max: usize },

    #[error("dense oracle supports at most {max} generators, got {count}")]
    OracleGenerators { count: usize, max: usize },

    #[error("invalid ansatz: {0}")]
    InvalidAnsatz(String),

    #[error("invalid closure configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Errors raised because a gate has no meaning in the requested
    /// generator-extraction mode.
    pub fn is_mode_error(&self) -> bool {
        matches!(
            self,
            Error::UnregisteredHamiltonian { .. } | Error::NonCliffordFixedGate { .. }
        )
    }
}
