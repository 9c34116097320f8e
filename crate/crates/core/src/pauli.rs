//! Pauli strings in symplectic form and real-weighted Hermitian Pauli sums.
//!
//! A [`PauliString`] stores one X bit and one Z bit per qubit. The pair
//! `(x, z)` on a qubit encodes `I = (0,0)`, `X = (1,0)`, `Z = (0,1)` and
//! `Y = (1,1)`, with `Y = iXZ`, so every stored string is the Hermitian
//! operator `i^{x·z} X^x Z^z`. Products pick up a power of `i`, tracked as a
//! [`Phase`].
//!
//! A [`PauliSum`] maps strings to real coefficients. Real coefficients on
//! Hermitian strings keep every sum Hermitian, and [`bracket`] is defined as
//! `-i(ab - ba)` so that brackets of sums are again sums.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Coefficients with magnitude below this are removed after every operation.
pub const DROP_TOLERANCE: f64 = 1e-12;

type Words = SmallVec<[u64; 2]>;

fn word_count(n_qubits: usize) -> usize {
    n_qubits.div_ceil(64)
}

fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A power of `i`: the exponent is kept in `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(exponent: i64) -> Self {
        Phase(exponent.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    /// `(re, im)` of `i^exponent`.
    pub fn to_complex(self) -> (f64, f64) {
        match self.0 {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    }
}

/// Tensor product of single-qubit Paulis, stored as X and Z bit vectors.
///
/// Carries no coefficient or phase. Ordering is lexicographic over the
/// literal text with `I < X < Y < Z`, starting at qubit 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: Words,
    z: Words,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        let w = word_count(n_qubits);
        PauliString {
            n_qubits,
            x: smallvec::smallvec![0; w],
            z: smallvec::smallvec![0; w],
        }
    }

    /// A string with `pauli` on `qubit` and identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, pauli: Pauli) -> Result<Self> {
        let mut p = Self::identity(n_qubits);
        p.check_qubit(qubit)?;
        p.set(qubit, pauli);
        Ok(p)
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut p = Self::identity(paulis.len());
        for (q, &op) in paulis.iter().enumerate() {
            p.set(q, op);
        }
        p
    }

    pub fn from_bits(x_bits: &[bool], z_bits: &[bool]) -> Result<Self> {
        if x_bits.len() != z_bits.len() {
            return Err(Error::QubitMismatch { left: x_bits.len(), right: z_bits.len() });
        }
        let mut p = Self::identity(x_bits.len());
        for q in 0..x_bits.len() {
            p.set_bits(q, x_bits[q], z_bits[q]);
        }
        Ok(p)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub(crate) fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit < self.n_qubits {
            Ok(())
        } else {
            Err(Error::QubitIndex { index: qubit, n_qubits: self.n_qubits })
        }
    }

    pub fn x_bit(&self, qubit: usize) -> bool {
        (self.x[qubit / 64] >> (qubit % 64)) & 1 == 1
    }

    pub fn z_bit(&self, qubit: usize) -> bool {
        (self.z[qubit / 64] >> (qubit % 64)) & 1 == 1
    }

    pub fn x_bits(&self) -> Vec<bool> {
        (0..self.n_qubits).map(|q| self.x_bit(q)).collect()
    }

    pub fn z_bits(&self) -> Vec<bool> {
        (0..self.n_qubits).map(|q| self.z_bit(q)).collect()
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(qubit), self.z_bit(qubit))
    }

    /// Panics if `qubit` is out of range.
    pub fn set(&mut self, qubit: usize, pauli: Pauli) {
        let (x, z) = pauli.bits();
        self.set_bits(qubit, x, z);
    }

    pub(crate) fn set_bits(&mut self, qubit: usize, x: bool, z: bool) {
        assert!(qubit < self.n_qubits, "qubit {qubit} out of range");
        let (w, b) = (qubit / 64, qubit % 64);
        self.x[w] = (self.x[w] & !(1 << b)) | ((x as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((z as u64) << b);
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(x, z)| (x | z).count_ones() as usize).sum()
    }

    fn y_count(&self) -> u32 {
        popcount_and(&self.x, &self.z)
    }

    fn check_same(&self, other: &PauliString) -> Result<()> {
        if self.n_qubits == other.n_qubits {
            Ok(())
        } else {
            Err(Error::QubitMismatch { left: self.n_qubits, right: other.n_qubits })
        }
    }

    /// Product without the qubit-count check. Callers guarantee equal sizes.
    pub(crate) fn mul_unchecked(&self, other: &PauliString) -> (Phase, PauliString) {
        let x: Words = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z: Words = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        let out = PauliString { n_qubits: self.n_qubits, x, z };
        // i^{x1·z1} X^x1 Z^z1 · i^{x2·z2} X^x2 Z^z2
        //   = i^{x1·z1 + x2·z2} (-1)^{z1·x2} X^x3 Z^z3,  X^x3 Z^z3 = i^{-x3·z3} P3
        let e = self.y_count() as i64 + other.y_count() as i64
            + 2 * popcount_and(&self.z, &other.x) as i64
            - out.y_count() as i64;
        (Phase::new(e), out)
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliString) -> bool {
        (popcount_and(&self.x, &other.z) + popcount_and(&self.z, &other.x)) % 2 == 0
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_qubits.cmp(&other.n_qubits).then_with(|| {
            for w in 0..self.x.len() {
                let diff = (self.x[w] ^ other.x[w]) | (self.z[w] ^ other.z[w]);
                if diff != 0 {
                    let q = w * 64 + diff.trailing_zeros() as usize;
                    return self.get(q).cmp(&other.get(q));
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

/// Parses a literal such as `"IZ"` into a string on `n_qubits` qubits.
/// Character `k` is qubit `k`.
pub fn parse_pauli(text: &str, n_qubits: usize) -> Result<PauliString> {
    let found = text.chars().count();
    if found != n_qubits {
        return Err(Error::PauliLength { literal: text.to_string(), expected: n_qubits, found });
    }
    if n_qubits == 0 {
        return Err(Error::NoQubits);
    }
    let mut p = PauliString::identity(n_qubits);
    for (position, c) in text.chars().enumerate() {
        let op = Pauli::from_char(c).ok_or(Error::PauliChar { found: c, position })?;
        p.set(position, op);
    }
    Ok(p)
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pauli(s, s.chars().count())
    }
}

/// `p·q = i^φ · r` with `r` a Hermitian Pauli string.
pub fn pauli_mul(p: &PauliString, q: &PauliString) -> Result<(Phase, PauliString)> {
    p.check_same(q)?;
    Ok(p.mul_unchecked(q))
}

/// True iff `p` and `q` commute (even symplectic inner product).
pub fn commutes(p: &PauliString, q: &PauliString) -> Result<bool> {
    p.check_same(q)?;
    Ok(p.commutes_unchecked(q))
}

/// Real linear combination of Pauli strings on a fixed number of qubits.
///
/// Zero-like coefficients (below [`DROP_TOLERANCE`]) are never stored.
#[derive(Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum { n_qubits, terms: BTreeMap::new() }
    }

    pub fn from_string(p: PauliString) -> Self {
        let mut s = Self::zero(p.n_qubits());
        s.terms.insert(p, 1.0);
        s
    }

    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, PauliString)>,
    {
        let mut s = Self::zero(n_qubits);
        for (c, p) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::QubitMismatch { left: n_qubits, right: p.n_qubits() });
            }
            s.accumulate(c, p);
        }
        s.prune();
        Ok(s)
    }

    /// Builds a sum from `(coefficient, literal)` pairs; the qubit count is
    /// taken from the first literal.
    pub fn from_literals(terms: &[(f64, &str)]) -> Result<Self> {
        let n = terms.first().map(|(_, l)| l.chars().count()).ok_or(Error::NoQubits)?;
        let parsed = terms
            .iter()
            .map(|&(c, l)| parse_pauli(l, n).map(|p| (c, p)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(n, parsed)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PauliString) -> f64 {
        self.terms.get(p).copied().unwrap_or(0.0)
    }

    /// Terms in ascending string order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, f64)> + '_ {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    fn check_same(&self, other: &PauliSum) -> Result<()> {
        if self.n_qubits == other.n_qubits {
            Ok(())
        } else {
            Err(Error::QubitMismatch { left: self.n_qubits, right: other.n_qubits })
        }
    }

    /// Adds without pruning.
    pub(crate) fn accumulate(&mut self, c: f64, p: PauliString) {
        match self.terms.entry(p) {
            Entry::Occupied(mut e) => *e.get_mut() += c,
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub(crate) fn remove(&mut self, p: &PauliString) {
        self.terms.remove(p);
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, c| c.abs() >= DROP_TOLERANCE);
    }

    pub fn checked_add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.accumulate(c, p.clone());
        }
        out.prune();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_same(other)?;
        self.checked_add(&other.scale(-1.0))
    }

    /// `self += c * other` in place.
    pub fn add_scaled(&mut self, c: f64, other: &PauliSum) -> Result<()> {
        self.check_same(other)?;
        for (p, v) in other.iter() {
            self.accumulate(c * v, p.clone());
        }
        self.prune();
        Ok(())
    }

    pub fn scale(&self, c: f64) -> PauliSum {
        let mut out = PauliSum {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(p, &v)| (p.clone(), v * c)).collect(),
        };
        out.prune();
        out
    }

    /// Euclidean norm of the coefficient vector in the Pauli-string basis.
    pub fn norm(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| acc + c * c).sqrt()
    }

    /// Coefficient-vector dot product in the Pauli-string basis.
    pub fn dot(&self, other: &PauliSum) -> f64 {
        let (small, large) =
            if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().map(|(p, c)| c * large.coefficient(p)).sum()
    }

    /// The term with the largest |coefficient|; ties go to the smallest string.
    pub fn leading_term(&self) -> Option<(&PauliString, f64)> {
        let mut best: Option<(&PauliString, f64)> = None;
        for (p, c) in self.iter() {
            match best {
                Some((_, b)) if c.abs() <= b.abs() => {}
                _ => best = Some((p, c)),
            }
        }
        best
    }

    pub fn contains_string(&self, p: &PauliString) -> bool {
        self.terms.contains_key(p)
    }
}

impl From<PauliString> for PauliSum {
    fn from(p: PauliString) -> Self {
        PauliSum::from_string(p)
    }
}

/// The bracket `-i(ab - ba)`.
///
/// Only anticommuting string pairs contribute; for those `pq = i^φ r` with φ
/// odd, and `-i(pq - qp) = 2·i^{φ+3}·r`, which is `±2r`.
pub fn bracket(a: &PauliSum, b: &PauliSum) -> Result<PauliSum> {
    a.check_same(b)?;
    let mut out = PauliSum::zero(a.n_qubits);
    for (p, cp) in a.iter() {
        for (q, cq) in b.iter() {
            if p.commutes_unchecked(q) {
                continue;
            }
            let (phase, r) = p.mul_unchecked(q);
            let sign = if phase == Phase::I { 2.0 } else { -2.0 };
            out.accumulate(sign * cp * cq, r);
        }
    }
    out.prune();
    Ok(out)
}

impl fmt::Display for PauliSum {
    /// `II - IX - ZI + ZX`, `2*IY - 2*ZY`; the zero sum prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.iter().enumerate() {
            let mag = c.abs();
            match (k, c < 0.0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag == 1.0 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{mag}*{p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliSum[{}]({self})", self.n_qubits)
    }
}

impl FromStr for PauliSum {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) form: terms joined by `+`/`-`,
    /// each an optional `coefficient*` followed by a literal.
    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse { line: 1, column: 1, message: format!("{msg}: {s:?}") };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut chunks: Vec<(f64, String)> = Vec::new();
        let mut sign = 1.0;
        let mut current = String::new();
        for c in compact.chars() {
            if (c == '+' || c == '-') && !current.is_empty() && !current.ends_with(['e', 'E', '*']) {
                chunks.push((sign, std::mem::take(&mut current)));
                sign = if c == '-' { -1.0 } else { 1.0 };
            } else if (c == '+' || c == '-') && current.is_empty() {
                if c == '-' {
                    sign = -sign;
                }
            } else {
                current.push(c);
            }
        }
        if current.is_empty() {
            return Err(err("empty term"));
        }
        chunks.push((sign, current));

        let mut terms = Vec::with_capacity(chunks.len());
        for (sign, chunk) in chunks {
            let (coeff, literal) = match chunk.split_once('*') {
                Some((c, l)) => (c.parse::<f64>().map_err(|_| err("bad coefficient"))?, l),
                None => (1.0, chunk.as_str()),
            };
            terms.push((sign * coeff, literal.to_string()));
        }
        let n = terms[0].1.chars().count();
        let parsed = terms
            .into_iter()
            .map(|(c, l)| parse_pauli(&l, n).map(|p| (c, p)))
            .collect::<Result<Vec<_>>>()?;
        PauliSum::from_terms(n, parsed)
    }
}
