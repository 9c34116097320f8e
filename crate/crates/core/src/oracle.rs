//! Brute-force dense-matrix backend used to cross-check the symbolic code.
//!
//! Matrices are built from Kronecker products of the 2×2 Pauli matrices, with
//! qubit 0 as the first (most significant) tensor factor. Nothing here uses
//! the symplectic product rules or the echelon reduction of the symbolic
//! modules.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::circuit::CliffordGate;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};

/// Largest register the matrix conversions accept.
pub const MAX_ORACLE_QUBITS: usize = 5;
/// Largest register the closure oracle accepts.
pub const MAX_CLOSURE_QUBITS: usize = 3;
/// Most generators the closure oracle accepts.
pub const MAX_CLOSURE_GENERATORS: usize = 64;
/// Relative rank threshold of the closure oracle.
pub const CLOSURE_RANK_THRESHOLD: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square complex matrix of side `2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n_qubits: usize,
    data: DMatrix<Complex64>,
}

impl DenseMatrix {
    pub fn from_matrix(data: DMatrix<Complex64>) -> Result<Self> {
        let side = data.nrows();
        if side != data.ncols() || !side.is_power_of_two() {
            return Err(Error::InvalidConfig(format!(
                "dense matrix must be square with power-of-two side, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        Ok(DenseMatrix { n_qubits: side.trailing_zeros() as usize, data })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits, MAX_ORACLE_QUBITS)?;
        let side = 1 << n_qubits;
        Ok(DenseMatrix { n_qubits, data: DMatrix::identity(side, side) })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn side(&self) -> usize {
        self.data.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    pub fn adjoint(&self) -> DenseMatrix {
        DenseMatrix { n_qubits: self.n_qubits, data: self.data.adjoint() }
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        DenseMatrix { n_qubits: self.n_qubits, data: &self.data * &other.data }
    }

    pub fn scale(&self, c: Complex64) -> DenseMatrix {
        DenseMatrix { n_qubits: self.n_qubits, data: self.data.map(|v| v * c) }
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        DenseMatrix { n_qubits: self.n_qubits, data: &self.data - &other.data }
    }

    /// `-i(AB - BA)`.
    pub fn bracket(&self, other: &DenseMatrix) -> DenseMatrix {
        let c = &self.data * &other.data - &other.data * &self.data;
        DenseMatrix { n_qubits: self.n_qubits, data: c.map(|v| v * -I) }
    }

    /// `U† A U`.
    pub fn conjugate_by(&self, u: &DenseMatrix) -> DenseMatrix {
        DenseMatrix { n_qubits: self.n_qubits, data: u.data.adjoint() * &self.data * &u.data }
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.data.iter().zip(other.data.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = &self.data * self.data.adjoint();
        let id = DMatrix::<Complex64>::identity(self.side(), self.side());
        prod.iter().zip(id.iter()).all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.data.clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

fn check_size(n_qubits: usize, max: usize) -> Result<()> {
    if n_qubits > max {
        Err(Error::OracleSize { n_qubits, max })
    } else {
        Ok(())
    }
}

fn single_qubit(p: Pauli) -> DMatrix<Complex64> {
    let entries = match p {
        Pauli::I => [ONE, ZERO, ZERO, ONE],
        Pauli::X => [ZERO, ONE, ONE, ZERO],
        Pauli::Y => [ZERO, -I, I, ZERO],
        Pauli::Z => [ONE, ZERO, ZERO, -ONE],
    };
    DMatrix::from_row_slice(2, 2, &entries)
}

/// Kronecker product of the single-qubit factors of `p`.
pub fn pauli_to_matrix(p: &PauliString) -> Result<DenseMatrix> {
    let n = p.n_qubits();
    check_size(n, MAX_ORACLE_QUBITS)?;
    let mut m = DMatrix::<Complex64>::identity(1, 1);
    for q in 0..n {
        m = m.kronecker(&single_qubit(p.get(q)));
    }
    Ok(DenseMatrix { n_qubits: n, data: m })
}

pub fn sum_to_matrix(s: &PauliSum) -> Result<DenseMatrix> {
    let n = s.n_qubits();
    check_size(n, MAX_ORACLE_QUBITS)?;
    let side = 1 << n;
    let mut m = DMatrix::<Complex64>::zeros(side, side);
    for (p, c) in s.iter() {
        m += pauli_to_matrix(p)?.data.map(|v| v * c);
    }
    Ok(DenseMatrix { n_qubits: n, data: m })
}

/// `exp(i·theta·M)` for the Hermitian `M` of `s`, by spectral decomposition.
pub fn exp_i(theta: f64, s: &PauliSum) -> Result<DenseMatrix> {
    let m = sum_to_matrix(s)?;
    Ok(exp_i_hermitian(theta, &m))
}

pub fn exp_i_hermitian(theta: f64, m: &DenseMatrix) -> DenseMatrix {
    let eig = SymmetricEigen::new(m.data.clone());
    let u = &eig.eigenvectors;
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, theta * l)));
    DenseMatrix { n_qubits: m.n_qubits, data: u * phases * u.adjoint() }
}

/// Permutation/phase/single-qubit matrix of a Clifford gate, built from its
/// action on computational basis states.
pub fn clifford_matrix(gate: &CliffordGate, n_qubits: usize) -> Result<DenseMatrix> {
    check_size(n_qubits, MAX_ORACLE_QUBITS)?;
    gate.validate(n_qubits)?;
    let side = 1usize << n_qubits;
    let bit = |state: usize, q: usize| (state >> (n_qubits - 1 - q)) & 1;
    let mut m = DMatrix::<Complex64>::zeros(side, side);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for col in 0..side {
        match *gate {
            CliffordGate::Cnot { control, target } => {
                let row = if bit(col, control) == 1 { col ^ (1 << (n_qubits - 1 - target)) } else { col };
                m[(row, col)] = ONE;
            }
            CliffordGate::Cz(a, b) => {
                m[(col, col)] = if bit(col, a) & bit(col, b) == 1 { -ONE } else { ONE };
            }
            CliffordGate::S(q) => {
                m[(col, col)] = if bit(col, q) == 1 { I } else { ONE };
            }
            CliffordGate::Sdg(q) => {
                m[(col, col)] = if bit(col, q) == 1 { -I } else { ONE };
            }
            CliffordGate::H(q) => {
                let flipped = col ^ (1 << (n_qubits - 1 - q));
                m[(col, col)] = Complex64::new(if bit(col, q) == 1 { -h } else { h }, 0.0);
                m[(flipped, col)] = Complex64::new(h, 0.0);
            }
        }
    }
    Ok(DenseMatrix { n_qubits, data: m })
}

/// Whether `exp(i·angle·h)` reproduces `gate` entrywise within 1e-10.
pub fn verify_gate_hamiltonian(gate: &CliffordGate, h: &PauliSum, angle: f64) -> Result<bool> {
    let target = clifford_matrix(gate, h.n_qubits())?;
    Ok(exp_i(angle, h)?.max_abs_diff(&target) <= 1e-10)
}

/// Normalized trace inner product `Re tr(A B) / 2^n` of two Hermitian matrices.
fn inner(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    // tr(AB) = Σ_ij A_ij B_ji
    let mut acc = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += (a[(i, j)] * b[(j, i)]).re;
        }
    }
    acc / a.nrows() as f64
}

/// Gram–Schmidt under the trace inner product, which is pivoted Cholesky of
/// the Gram matrix done one column at a time.
struct GramBasis {
    ortho: Vec<DMatrix<Complex64>>,
}

impl GramBasis {
    /// Adds `m` if its Gram-matrix rank contribution clears the threshold
    /// relative to `scale`, the magnitude `m` would have if it were nonzero.
    /// Brackets of unit-norm elements use scale 1, so a commutator that is
    /// zero up to roundoff is rejected instead of normalized into noise.
    fn try_add(&mut self, m: &DMatrix<Complex64>, scale: f64) -> bool {
        let norm0 = inner(m, m).sqrt();
        if norm0 <= CLOSURE_RANK_THRESHOLD * scale {
            return false;
        }
        let mut r = m.clone();
        // two passes keep the residual orthogonal to working precision
        for _ in 0..2 {
            for e in &self.ortho {
                let c = inner(e, &r);
                r -= e.map(|v| v * c);
            }
        }
        let norm = inner(&r, &r).sqrt();
        if norm <= CLOSURE_RANK_THRESHOLD * norm0.min(scale) {
            return false;
        }
        self.ortho.push(r.map(|v| v / norm));
        true
    }
}

/// Lie-closure dimension computed entirely with dense matrices.
pub fn dense_closure_dim(generators: &[PauliSum]) -> Result<usize> {
    let mats = generators.iter().map(sum_to_matrix).collect::<Result<Vec<_>>>()?;
    dense_closure_dim_matrices(&mats)
}

/// Closure dimension of Hermitian generator matrices under `-i[A, B]`.
pub fn dense_closure_dim_matrices(generators: &[DenseMatrix]) -> Result<usize> {
    if generators.is_empty() {
        return Ok(0);
    }
    if generators.len() > MAX_CLOSURE_GENERATORS {
        return Err(Error::OracleGenerators { count: generators.len(), max: MAX_CLOSURE_GENERATORS });
    }
    for g in generators {
        check_size(g.n_qubits, MAX_CLOSURE_QUBITS)?;
    }
    let mut basis = GramBasis { ortho: Vec::new() };
    for g in generators {
        let scale = inner(&g.data, &g.data).sqrt();
        basis.try_add(&g.data, scale);
    }
    // Bracket every pair until no new direction appears.
    let mut i = 0;
    while i < basis.ortho.len() {
        for j in 0..i {
            let (a, b) = (&basis.ortho[i], &basis.ortho[j]);
            let c = (a * b - b * a).map(|v| v * -I);
            basis.try_add(&c, 1.0);
        }
        i += 1;
    }
    Ok(basis.ortho.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn sum(s: &str) -> PauliSum {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basic_matrices() {
        let id = pauli_to_matrix(&"III".parse().unwrap()).unwrap();
        assert_eq!(id, DenseMatrix::identity(3).unwrap());
        let z = pauli_to_matrix(&"Z".parse().unwrap()).unwrap();
        assert_eq!(z.as_matrix(), &DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]));
        // qubit 0 is the most significant tensor factor
        let zi = pauli_to_matrix(&"ZI".parse().unwrap()).unwrap();
        assert_eq!(zi.get(2, 2), -ONE);
        assert_eq!(zi.get(1, 1), ONE);
        assert!(matches!(
            pauli_to_matrix(&"IIIIII".parse().unwrap()),
            Err(Error::OracleSize { n_qubits: 6, max: 5 })
        ));
    }

    #[test]
    fn cnot_generator_spectrum() {
        let m = sum_to_matrix(&sum("II - IX - ZI + ZX")).unwrap();
        let ev = m.hermitian_eigenvalues();
        let expected = [0.0, 0.0, 0.0, 4.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn exponential_examples() {
        let cnot = CliffordGate::Cnot { control: 0, target: 1 };
        let u = exp_i(FRAC_PI_4, &sum("II - IX - ZI + ZX")).unwrap();
        assert!(u.max_abs_diff(&clifford_matrix(&cnot, 2).unwrap()) < 1e-12);
        assert!(u.is_unitary(1e-12));

        let id = exp_i(0.0, &sum("XY - 3*ZZ")).unwrap();
        assert!(id.max_abs_diff(&DenseMatrix::identity(2).unwrap()) < 1e-12);

        let theta: f64 = 0.37;
        let p = sum("XYZ");
        let expected = DenseMatrix::identity(3)
            .unwrap()
            .scale(c(theta.cos(), 0.0))
            .as_matrix()
            + sum_to_matrix(&p).unwrap().scale(c(0.0, theta.sin())).as_matrix();
        assert!(exp_i(theta, &p).unwrap().as_matrix().iter().zip(expected.iter()).all(|(a, b)| (a - b).norm() < 1e-12));
    }

    #[test]
    fn gate_hamiltonians() {
        let cnot = CliffordGate::Cnot { control: 0, target: 1 };
        assert!(verify_gate_hamiltonian(&cnot, &sum("II - IX - ZI + ZX"), FRAC_PI_4).unwrap());
        assert!(verify_gate_hamiltonian(&CliffordGate::Cz(0, 1), &sum("II - IZ - ZI + ZZ"), FRAC_PI_4).unwrap());
        assert!(!verify_gate_hamiltonian(&cnot, &sum("II - IX - ZI + ZX"), FRAC_PI_2).unwrap());
    }

    #[test]
    fn gate_matrices_are_unitary() {
        for g in [
            CliffordGate::Cnot { control: 2, target: 0 },
            CliffordGate::Cz(1, 2),
            CliffordGate::H(1),
            CliffordGate::S(0),
            CliffordGate::Sdg(2),
        ] {
            let m = clifford_matrix(&g, 3).unwrap();
            assert!(m.is_unitary(1e-12), "{g}");
            let inv = clifford_matrix(&g.inverse(), 3).unwrap();
            assert!(m.mul(&inv).max_abs_diff(&DenseMatrix::identity(3).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn closure_oracle_examples() {
        assert_eq!(dense_closure_dim(&[sum("ZZ")]).unwrap(), 1);
        assert_eq!(dense_closure_dim(&[sum("II - IX - ZI + ZX"), sum("IZ")]).unwrap(), 5);
        assert_eq!(dense_closure_dim(&[sum("X"), sum("Z")]).unwrap(), 3);
        assert_eq!(dense_closure_dim(&[sum("XX"), sum("ZI"), sum("IZ")]).unwrap(), 6);
        assert!(dense_closure_dim(&[sum("ZZZZ")]).is_err());
    }

    #[test]
    fn pauli_matrices_are_trace_orthogonal() {
        let all: Vec<PauliString> = (0..16)
            .map(|k| {
                let ops = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
                PauliString::from_paulis(&[ops[k / 4], ops[k % 4]])
            })
            .collect();
        for a in &all {
            for b in &all {
                let t = pauli_to_matrix(a).unwrap().mul(&pauli_to_matrix(b).unwrap()).trace();
                let expected = if a == b { 4.0 } else { 0.0 };
                assert!((t - c(expected, 0.0)).norm() < 1e-12, "{a} {b}");
            }
        }
    }
}
