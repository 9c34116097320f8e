#![allow(dead_code)]

use dla_core::oracle::{clifford_matrix, exp_i, DenseMatrix};
use dla_core::{Circuit, CliffordGate, Gate, Pauli, PauliString, PauliSum};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_string(rng: &mut ChaCha8Rng, n: usize) -> PauliString {
    let ops = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let paulis: Vec<Pauli> = (0..n).map(|_| ops[rng.gen_range(0..4)]).collect();
    PauliString::from_paulis(&paulis)
}

/// Sum of up to `max_terms` random strings with integer coefficients in
/// `[-max_coeff, max_coeff]`. May be zero.
pub fn random_int_sum(rng: &mut ChaCha8Rng, n: usize, max_terms: usize, max_coeff: i32) -> PauliSum {
    let k = rng.gen_range(1..=max_terms);
    let terms: Vec<(f64, PauliString)> = (0..k)
        .map(|_| (rng.gen_range(-max_coeff..=max_coeff) as f64, random_string(rng, n)))
        .collect();
    PauliSum::from_terms(n, terms).unwrap()
}

pub fn random_nonzero_int_sum(rng: &mut ChaCha8Rng, n: usize, max_terms: usize, max_coeff: i32) -> PauliSum {
    loop {
        let s = random_int_sum(rng, n, max_terms, max_coeff);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_generator_set(rng: &mut ChaCha8Rng, n: usize, max_gens: usize) -> Vec<PauliSum> {
    let k = rng.gen_range(1..=max_gens);
    (0..k).map(|_| random_nonzero_int_sum(rng, n, 3, 3)).collect()
}

pub fn random_clifford(rng: &mut ChaCha8Rng, n: usize, two_qubit_only: bool) -> CliffordGate {
    let a = rng.gen_range(0..n);
    let kinds = if two_qubit_only || n == 1 { 2 } else { 5 };
    match rng.gen_range(0..kinds) {
        k @ (0 | 1) if n >= 2 => {
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            if k == 0 {
                CliffordGate::Cnot { control: a, target: b }
            } else {
                CliffordGate::Cz(a, b)
            }
        }
        0 | 1 | 2 => CliffordGate::H(a),
        3 => CliffordGate::S(a),
        _ => CliffordGate::Sdg(a),
    }
}

/// Circuit on 2..=3 qubits with up to `max_gates` gates, at least one
/// rotation, fixed gates drawn from CNOT and CZ.
pub fn random_cnot_cz_circuit(rng: &mut ChaCha8Rng, max_gates: usize) -> Circuit {
    let n = rng.gen_range(2..=3);
    let len = rng.gen_range(1..=max_gates);
    let rot_at = rng.gen_range(0..len);
    let mut c = Circuit::new(n).unwrap();
    for k in 0..len {
        if k == rot_at || rng.gen_bool(0.5) {
            c.push(Gate::ParamRotation(random_nonzero_int_sum(rng, n, 2, 3))).unwrap();
        } else {
            c.fixed(random_clifford(rng, n, true)).unwrap();
        }
    }
    c
}

/// Time-ordered unitary of a circuit; rotation `j` is `exp(-i·angles[j]·H_j)`.
pub fn circuit_unitary(c: &Circuit, angles: &[f64]) -> DenseMatrix {
    let mut u = DenseMatrix::identity(c.n_qubits()).unwrap();
    let mut k = 0;
    for g in c.gates() {
        let m = match g {
            Gate::ParamRotation(h) => {
                k += 1;
                exp_i(-angles[k - 1], h).unwrap()
            }
            Gate::FixedClifford(cg) => clifford_matrix(cg, c.n_qubits()).unwrap(),
            Gate::FixedHamiltonian { angle, hamiltonian } => exp_i(*angle, hamiltonian).unwrap(),
        };
        u = m.mul(&u);
    }
    u
}
