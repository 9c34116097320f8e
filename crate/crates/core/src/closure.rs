//! Lie closure of a set of Pauli-sum generators.
//!
//! The closure is grown by bracketing pairs of basis elements in FIFO order
//! and keeping every bracket that is linearly independent of what is already
//! there. Independence is decided by row reduction in the Pauli-string
//! coordinate system: the basis is kept in echelon form, where every element
//! owns a pivot string that no later element contains.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::pauli::{bracket, PauliString, PauliSum};

/// Termination and independence settings for [`lie_closure`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClosureConfig {
    /// A candidate is dependent when its residual norm falls below this
    /// fraction of its own norm.
    pub independence_tolerance: f64,
    /// Defaults to `4^n`, the dimension of the full operator space.
    pub max_dimension: Option<usize>,
    /// Cap on bracket evaluations. Unlimited when `None`.
    pub max_brackets: Option<usize>,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig { independence_tolerance: 1e-8, max_dimension: None, max_brackets: None }
    }
}

impl ClosureConfig {
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.independence_tolerance = tol;
        self
    }

    pub fn with_max_dimension(mut self, cap: usize) -> Self {
        self.max_dimension = Some(cap);
        self
    }

    pub fn with_max_brackets(mut self, cap: usize) -> Self {
        self.max_brackets = Some(cap);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let tol = self.independence_tolerance;
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::InvalidConfig(format!("tolerance must lie in (0, 1), got {tol}")));
        }
        if self.max_dimension == Some(0) {
            return Err(Error::InvalidConfig("max_dimension must be positive".into()));
        }
        if self.max_brackets == Some(0) {
            return Err(Error::InvalidConfig("max_brackets must be positive".into()));
        }
        Ok(())
    }

    /// The effective dimension cap on `n_qubits` qubits.
    pub fn dimension_cap(&self, n_qubits: usize) -> usize {
        let ambient = 1usize.checked_shl(2 * n_qubits as u32).unwrap_or(usize::MAX);
        self.max_dimension.map_or(ambient, |cap| cap.min(ambient))
    }
}

/// A list of Pauli sums in echelon form.
///
/// Rows are appended already reduced against the existing rows, so reduction
/// is one forward pass that clears each row's pivot in turn.
#[derive(Debug, Clone)]
pub struct ReducedBasis {
    n_qubits: usize,
    tolerance: f64,
    rows: Vec<PauliSum>,
    pivots: Vec<PauliString>,
}

impl ReducedBasis {
    pub fn new(n_qubits: usize, tolerance: f64) -> Self {
        ReducedBasis { n_qubits, tolerance, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Builds an echelon basis for the span of `elements`, skipping
    /// dependent ones.
    pub fn from_elements(n_qubits: usize, tolerance: f64, elements: &[PauliSum]) -> Result<Self> {
        let mut basis = Self::new(n_qubits, tolerance);
        for e in elements {
            basis.insert(e)?;
        }
        Ok(basis)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[PauliSum] {
        &self.rows
    }

    pub fn pivots(&self) -> &[PauliString] {
        &self.pivots
    }

    fn check(&self, s: &PauliSum) -> Result<()> {
        if s.n_qubits() == self.n_qubits {
            Ok(())
        } else {
            Err(Error::QubitMismatch { left: self.n_qubits, right: s.n_qubits() })
        }
    }

    /// Residual of `candidate` after removing every row's pivot component.
    pub fn reduce(&self, candidate: &PauliSum) -> Result<PauliSum> {
        self.check(candidate)?;
        let mut residual = candidate.clone();
        for (row, pivot) in self.rows.iter().zip(&self.pivots) {
            let c = residual.coefficient(pivot);
            if c == 0.0 {
                continue;
            }
            residual.add_scaled(-c / row.coefficient(pivot), row)?;
            residual.remove(pivot);
        }
        Ok(residual)
    }

    /// Whether a residual counts as zero relative to the candidate it came from.
    pub fn is_negligible(&self, residual: &PauliSum, candidate: &PauliSum) -> bool {
        residual.is_zero() || residual.norm() < self.tolerance * candidate.norm()
    }

    pub fn contains(&self, candidate: &PauliSum) -> Result<bool> {
        let residual = self.reduce(candidate)?;
        Ok(self.is_negligible(&residual, candidate))
    }

    /// Reduces `candidate` and, if independent, appends the unit-norm
    /// residual. Returns the appended row.
    pub fn insert(&mut self, candidate: &PauliSum) -> Result<Option<&PauliSum>> {
        let residual = self.reduce(candidate)?;
        if self.is_negligible(&residual, candidate) {
            return Ok(None);
        }
        self.push_residual(residual);
        Ok(self.rows.last())
    }

    fn push_residual(&mut self, residual: PauliSum) {
        let row = residual.scale(1.0 / residual.norm());
        let pivot = row.leading_term().expect("nonzero residual").0.clone();
        self.rows.push(row);
        self.pivots.push(pivot);
    }
}

/// Residual of `candidate` against the span of `basis`, using the default
/// independence tolerance to discard dependent entries of `basis`.
pub fn reduce_against_basis(candidate: &PauliSum, basis: &[PauliSum]) -> Result<PauliSum> {
    let tol = ClosureConfig::default().independence_tolerance;
    ReducedBasis::from_elements(candidate.n_qubits(), tol, basis)?.reduce(candidate)
}

/// Output of [`lie_closure`].
#[derive(Debug, Clone)]
pub struct DlaResult {
    pub n_qubits: usize,
    /// Unit-norm elements in echelon form, in insertion order.
    pub basis: Vec<PauliSum>,
    pub dimension: usize,
    /// False when a dimension or bracket cap stopped the computation.
    pub closed: bool,
    pub contains_identity_direction: bool,
    pub bracket_count: usize,
    pub tolerance: f64,
    reduced: ReducedBasis,
}

impl DlaResult {
    pub fn pivots(&self) -> &[PauliString] {
        self.reduced.pivots()
    }

    /// Largest relative residual of `bracket(b_i, b_j)` over all basis pairs.
    /// Close to zero for a closed result.
    pub fn closure_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let c = bracket(&self.basis[i], &self.basis[j]).expect("uniform qubit count");
                if c.is_zero() {
                    continue;
                }
                let r = self.reduced.reduce(&c).expect("uniform qubit count");
                worst = worst.max(r.norm() / c.norm());
            }
        }
        worst
    }
}

/// Lie closure of `generators` under `-i[·,·]`.
///
/// Generators are reduced and inserted in order; every inserted element is
/// then paired with all earlier ones and the pairs are processed FIFO. The
/// result depends only on the generator order.
pub fn lie_closure(generators: &[PauliSum], config: &ClosureConfig) -> Result<DlaResult> {
    config.validate()?;
    let n = generators.first().ok_or(Error::EmptyGenerators)?.n_qubits();
    if let Some(g) = generators.iter().find(|g| g.n_qubits() != n) {
        return Err(Error::QubitMismatch { left: n, right: g.n_qubits() });
    }
    let dim_cap = config.dimension_cap(n);
    let bracket_cap = config.max_brackets.unwrap_or(usize::MAX);

    let mut basis = ReducedBasis::new(n, config.independence_tolerance);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let mut closed = true;
    let mut bracket_count = 0;

    let admit = |basis: &mut ReducedBasis, queue: &mut VecDeque<(usize, usize)>, cand: &PauliSum| {
        let residual = basis.reduce(cand).expect("uniform qubit count");
        if basis.is_negligible(&residual, cand) {
            return true;
        }
        if basis.rank() >= dim_cap {
            return false;
        }
        basis.push_residual(residual);
        let k = basis.rank() - 1;
        queue.extend((0..k).map(|i| (i, k)));
        true
    };

    for g in generators {
        if !admit(&mut basis, &mut queue, g) {
            closed = false;
            break;
        }
    }
    if closed {
        while let Some((i, j)) = queue.pop_front() {
            if bracket_count >= bracket_cap {
                closed = false;
                break;
            }
            let c = bracket(&basis.rows()[i], &basis.rows()[j])?;
            bracket_count += 1;
            if c.is_zero() {
                continue;
            }
            if !admit(&mut basis, &mut queue, &c) {
                closed = false;
                break;
            }
        }
    }

    let identity = PauliSum::from_string(PauliString::identity(n));
    let contains_identity_direction = basis.contains(&identity)?;
    Ok(DlaResult {
        n_qubits: n,
        basis: basis.rows().to_vec(),
        dimension: basis.rank(),
        closed,
        contains_identity_direction,
        bracket_count,
        tolerance: config.independence_tolerance,
        reduced: basis,
    })
}

/// Whether `op` lies in the span of `result.basis`. The zero operator is
/// always contained; an operator on a different qubit count never is.
pub fn contains(result: &DlaResult, op: &PauliSum) -> bool {
    result.reduced.contains(op).unwrap_or(false)
}

/// Whether `a` and `b` span the same real subspace.
pub fn span_equals(a: &[PauliSum], b: &[PauliSum]) -> bool {
    span_equals_with_tolerance(a, b, ClosureConfig::default().independence_tolerance)
}

pub fn span_equals_with_tolerance(a: &[PauliSum], b: &[PauliSum], tolerance: f64) -> bool {
    let n = match a.first().or(b.first()) {
        Some(s) => s.n_qubits(),
        None => return true,
    };
    let (Ok(ra), Ok(rb)) = (
        ReducedBasis::from_elements(n, tolerance, a),
        ReducedBasis::from_elements(n, tolerance, b),
    ) else {
        return false;
    };
    ra.rank() == rb.rank()
        && a.iter().all(|x| rb.contains(x).unwrap_or(false))
        && b.iter().all(|x| ra.contains(x).unwrap_or(false))
}

/// Dimension of the real span of `elements`.
pub fn rank(elements: &[PauliSum], tolerance: f64) -> Result<usize> {
    match elements.first() {
        None => Ok(0),
        Some(e) => Ok(ReducedBasis::from_elements(e.n_qubits(), tolerance, elements)?.rank()),
    }
}
