//! Circuits of parameterized rotations and fixed gates, and the two ways of
//! turning them into DLA generators.

use std::f64::consts::FRAC_PI_4;
use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{parse_pauli, Pauli, PauliString, PauliSum};

/// Angle at which the built-in naive Hamiltonians reproduce their gate:
/// `gate = exp(i·π/4·H)`.
pub const NAIVE_ANGLE: f64 = FRAC_PI_4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
    H(usize),
    S(usize),
    /// Inverse of `S`. Appears as the inverse of an `S` gate.
    Sdg(usize),
}

impl CliffordGate {
    pub fn name(&self) -> &'static str {
        match self {
            CliffordGate::Cnot { .. } => "CNOT",
            CliffordGate::Cz(..) => "CZ",
            CliffordGate::H(_) => "H",
            CliffordGate::S(_) => "S",
            CliffordGate::Sdg(_) => "SDG",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            CliffordGate::Cnot { control, target } => vec![control, target],
            CliffordGate::Cz(a, b) => vec![a, b],
            CliffordGate::H(q) | CliffordGate::S(q) | CliffordGate::Sdg(q) => vec![q],
        }
    }

    pub fn inverse(&self) -> CliffordGate {
        match *self {
            CliffordGate::S(q) => CliffordGate::Sdg(q),
            CliffordGate::Sdg(q) => CliffordGate::S(q),
            g => g,
        }
    }

    /// Builds a gate from its file-format name and qubit indices.
    pub fn from_name(name: &str, qubits: &[usize]) -> Result<Self> {
        let arity = |k: usize| {
            if qubits.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidGate(format!("{name} takes {k} qubit(s), got {}", qubits.len())))
            }
        };
        let gate = match name {
            "CNOT" => {
                arity(2)?;
                CliffordGate::Cnot { control: qubits[0], target: qubits[1] }
            }
            "CZ" => {
                arity(2)?;
                CliffordGate::Cz(qubits[0], qubits[1])
            }
            "H" => {
                arity(1)?;
                CliffordGate::H(qubits[0])
            }
            "S" => {
                arity(1)?;
                CliffordGate::S(qubits[0])
            }
            "SDG" => {
                arity(1)?;
                CliffordGate::Sdg(qubits[0])
            }
            other => return Err(Error::InvalidGate(format!("unknown gate name {other:?}"))),
        };
        Ok(gate)
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        if let Some(&index) = qs.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::QubitIndex { index, n_qubits });
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidGate(format!("{} needs two distinct qubits, got {}", self.name(), qs[0])));
        }
        Ok(())
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// `exp(-iθH)` with a trainable angle.
    ParamRotation(PauliSum),
    FixedClifford(CliffordGate),
    /// `exp(i·angle·hamiltonian)` with a constant angle.
    FixedHamiltonian { angle: f64, hamiltonian: PauliSum },
}

/// Gates in time order: index 0 is applied first.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::NoQubits);
        }
        Ok(Circuit { n_qubits, gates: Vec::new() })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.validate_gate(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn with(mut self, gate: Gate) -> Result<Self> {
        self.push(gate)?;
        Ok(self)
    }

    /// Appends a rotation about a single-qubit Pauli.
    pub fn rotate(&mut self, qubit: usize, pauli: Pauli) -> Result<()> {
        let p = PauliString::single(self.n_qubits, qubit, pauli)?;
        self.push(Gate::ParamRotation(p.into()))
    }

    pub fn fixed(&mut self, gate: CliffordGate) -> Result<()> {
        self.push(Gate::FixedClifford(gate))
    }

    fn validate_gate(&self, gate: &Gate) -> Result<()> {
        let n = self.n_qubits;
        let same = |s: &PauliSum| {
            if s.n_qubits() == n {
                Ok(())
            } else {
                Err(Error::QubitMismatch { left: n, right: s.n_qubits() })
            }
        };
        match gate {
            Gate::ParamRotation(h) => {
                same(h)?;
                if h.is_zero() {
                    return Err(Error::InvalidGate("rotation generator is zero".into()));
                }
                Ok(())
            }
            Gate::FixedClifford(g) => g.validate(n),
            Gate::FixedHamiltonian { angle, hamiltonian } => {
                same(hamiltonian)?;
                if !angle.is_finite() {
                    return Err(Error::InvalidGate(format!("non-finite angle {angle}")));
                }
                Ok(())
            }
        }
    }

    pub fn fixed_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| !matches!(g, Gate::ParamRotation(_))).count()
    }

    pub fn rotation_count(&self) -> usize {
        self.gates.len() - self.fixed_gate_count()
    }
}

/// `g†·(sign·p)·g` for a Clifford gate `g`, as a signed Pauli string.
///
/// Rules, in the `g† P g` direction:
/// CNOT(c,t): `X_c → X_c X_t`, `Z_t → Z_c Z_t`;
/// CZ(a,b): `X_a → X_a Z_b`, `X_b → Z_a X_b`;
/// H: `X ↔ Z`, `Y → -Y`;
/// S: `X → -Y`, `Y → X`;
/// SDG: `X → Y`, `Y → -X`.
pub fn clifford_conjugate(p: &PauliString, sign: i8, gate: &CliffordGate) -> Result<(i8, PauliString)> {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    gate.validate(p.n_qubits())?;
    let mut out = p.clone();
    let flip;
    match *gate {
        CliffordGate::Cnot { control: c, target: t } => {
            let (xc, zc, xt, zt) = (p.x_bit(c), p.z_bit(c), p.x_bit(t), p.z_bit(t));
            flip = xc && zt && !(xt ^ zc);
            out.set_bits(c, xc, zc ^ zt);
            out.set_bits(t, xt ^ xc, zt);
        }
        CliffordGate::Cz(a, b) => {
            let (xa, za, xb, zb) = (p.x_bit(a), p.z_bit(a), p.x_bit(b), p.z_bit(b));
            flip = xa && xb && (za ^ zb);
            out.set_bits(a, xa, za ^ xb);
            out.set_bits(b, xb, zb ^ xa);
        }
        CliffordGate::H(q) => {
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            flip = x && z;
            out.set_bits(q, z, x);
        }
        CliffordGate::S(q) => {
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            flip = x && !z;
            out.set_bits(q, x, z ^ x);
        }
        CliffordGate::Sdg(q) => {
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            flip = x && z;
            out.set_bits(q, x, z ^ x);
        }
    }
    Ok((if flip { -sign } else { sign }, out))
}

/// Term-wise [`clifford_conjugate`] of a sum.
pub fn conjugate_sum(s: &PauliSum, gate: &CliffordGate) -> Result<PauliSum> {
    let terms = s
        .iter()
        .map(|(p, c)| clifford_conjugate(p, 1, gate).map(|(sign, q)| (c * sign as f64, q)))
        .collect::<Result<Vec<_>>>()?;
    PauliSum::from_terms(s.n_qubits(), terms)
}

/// Hamiltonian `H` with `gate = exp(i·π/4·H)`, for the gates that have one
/// built in: `CNOT(c,t) → (I - Z_c)(I - X_t)` and `CZ(a,b) → (I - Z_a)(I - Z_b)`.
pub fn naive_hamiltonian(gate: &CliffordGate, n_qubits: usize) -> Result<Option<PauliSum>> {
    gate.validate(n_qubits)?;
    let (a, b, pb) = match *gate {
        CliffordGate::Cnot { control, target } => (control, target, Pauli::X),
        CliffordGate::Cz(a, b) => (a, b, Pauli::Z),
        _ => return Ok(None),
    };
    let id = PauliString::identity(n_qubits);
    let za = PauliString::single(n_qubits, a, Pauli::Z)?;
    let pb_only = PauliString::single(n_qubits, b, pb)?;
    let mut both = za.clone();
    both.set(b, pb);
    PauliSum::from_terms(n_qubits, [(1.0, id), (-1.0, pb_only), (-1.0, za), (1.0, both)]).map(Some)
}

fn push_unique(out: &mut Vec<PauliSum>, s: PauliSum) {
    if !out.contains(&s) {
        out.push(s);
    }
}

/// Generators in circuit order, treating every fixed gate's Hamiltonian as
/// a generator. Exact duplicates are dropped.
///
/// Angles of fixed gates are not used: DLA membership is scale invariant.
pub fn naive_generators(circuit: &Circuit) -> Result<Vec<PauliSum>> {
    let n = circuit.n_qubits();
    let mut out = Vec::new();
    for (position, gate) in circuit.gates().iter().enumerate() {
        let g = match gate {
            Gate::ParamRotation(h) => h.clone(),
            Gate::FixedHamiltonian { hamiltonian, .. } => hamiltonian.clone(),
            Gate::FixedClifford(cg) => naive_hamiltonian(cg, n)?.ok_or_else(|| {
                Error::UnregisteredHamiltonian { gate: cg.to_string(), position }
            })?,
        };
        push_unique(&mut out, g);
    }
    Ok(out)
}

/// Rotation generators pulled back through the fixed Cliffords before them.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatedGenerators {
    /// `C_j† H_j C_j` per rotation, exact duplicates dropped.
    pub generators: Vec<PauliSum>,
    /// All fixed gates in time order. Their product is the Clifford left over
    /// at the end of the circuit once every rotation is rewritten.
    pub residual: Vec<CliffordGate>,
}

impl ConjugatedGenerators {
    /// Whether the leftover Clifford is the identity up to global phase.
    pub fn residual_is_identity(&self, n_qubits: usize) -> bool {
        (0..n_qubits).all(|q| {
            [Pauli::X, Pauli::Z].into_iter().all(|op| {
                let p = PauliString::single(n_qubits, q, op).expect("qubit in range");
                let mut cur = (1i8, p.clone());
                for g in self.residual.iter().rev() {
                    cur = clifford_conjugate(&cur.1, cur.0, g).expect("validated gate");
                }
                cur == (1, p)
            })
        })
    }
}

/// For a rotation at position `j` with generator `H`, returns `C†HC` where
/// `C` is the product of every fixed Clifford before `j`. Conjugation runs
/// from the gate nearest `j` back to the start of the circuit.
pub fn conjugated_generators(circuit: &Circuit) -> Result<ConjugatedGenerators> {
    let mut prefix: Vec<CliffordGate> = Vec::new();
    let mut generators = Vec::new();
    for (position, gate) in circuit.gates().iter().enumerate() {
        match gate {
            Gate::FixedClifford(g) => prefix.push(*g),
            Gate::FixedHamiltonian { .. } => return Err(Error::NonCliffordFixedGate { position }),
            Gate::ParamRotation(h) => {
                let mut cur = h.clone();
                for g in prefix.iter().rev() {
                    cur = conjugate_sum(&cur, g)?;
                }
                push_unique(&mut generators, cur);
            }
        }
    }
    Ok(ConjugatedGenerators { generators, residual: prefix })
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                tokens.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    tokens
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn parse_terms(tokens: &[Token], n: usize, line: usize, after: usize) -> Result<PauliSum> {
    if tokens.is_empty() {
        return Err(parse_error(line, after, "expected coefficient/Pauli pairs"));
    }
    if tokens.len() % 2 != 0 {
        let last = &tokens[tokens.len() - 1];
        return Err(parse_error(line, last.column, format!("coefficient {:?} has no Pauli literal", last.text)));
    }
    let mut terms = Vec::new();
    for pair in tokens.chunks(2) {
        let c: f64 = pair[0]
            .text
            .parse()
            .ok()
            .filter(|c: &f64| c.is_finite())
            .ok_or_else(|| parse_error(line, pair[0].column, format!("bad coefficient {:?}", pair[0].text)))?;
        let p = parse_pauli(pair[1].text, n).map_err(|e| match e {
            Error::PauliChar { position, .. } => parse_error(line, pair[1].column + position, e.to_string()),
            e => parse_error(line, pair[1].column, e.to_string()),
        })?;
        terms.push((c, p));
    }
    PauliSum::from_terms(n, terms)
}

/// Parses the line-oriented circuit format:
///
/// ```text
/// qubits N
/// rot c1 P1 [c2 P2 ...]
/// fixed NAME i [j]
/// fixedh ANGLE c1 P1 [c2 P2 ...]
/// ```
///
/// `#` starts a comment. Errors carry 1-based line and column.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens = tokenize(raw);
        let Some(head) = tokens.first() else { continue };
        let rest = &tokens[1..];
        let end_col = head.column + head.text.chars().count();

        if head.text == "qubits" {
            if circuit.is_some() {
                return Err(parse_error(line, head.column, "duplicate `qubits` directive"));
            }
            let [tok] = rest else {
                return Err(parse_error(line, end_col, "expected `qubits N`"));
            };
            let n: usize = tok
                .text
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| parse_error(line, tok.column, format!("bad qubit count {:?}", tok.text)))?;
            circuit = Some(Circuit::new(n)?);
            continue;
        }
        let Some(c) = circuit.as_mut() else {
            return Err(parse_error(line, head.column, "first directive must be `qubits N`"));
        };
        let n = c.n_qubits();
        let at = |col: usize| move |e: Error| match e {
            e @ Error::Parse { .. } => e,
            e => parse_error(line, col, e.to_string()),
        };
        match head.text {
            "rot" => {
                let h = parse_terms(rest, n, line, end_col)?;
                c.push(Gate::ParamRotation(h)).map_err(at(head.column))?;
            }
            "fixed" => {
                let Some((name, idx_toks)) = rest.split_first() else {
                    return Err(parse_error(line, end_col, "expected gate name"));
                };
                let mut qubits = Vec::new();
                for t in idx_toks {
                    let q: usize =
                        t.text.parse().map_err(|_| parse_error(line, t.column, format!("bad qubit index {:?}", t.text)))?;
                    if q >= n {
                        return Err(parse_error(line, t.column, Error::QubitIndex { index: q, n_qubits: n }.to_string()));
                    }
                    qubits.push(q);
                }
                let g = CliffordGate::from_name(name.text, &qubits).map_err(at(name.column))?;
                c.fixed(g).map_err(at(name.column))?;
            }
            "fixedh" => {
                let Some((angle_tok, term_toks)) = rest.split_first() else {
                    return Err(parse_error(line, end_col, "expected angle"));
                };
                let angle: f64 = angle_tok
                    .text
                    .parse()
                    .map_err(|_| parse_error(line, angle_tok.column, format!("bad angle {:?}", angle_tok.text)))?;
                let hamiltonian = parse_terms(term_toks, n, line, angle_tok.column)?;
                c.push(Gate::FixedHamiltonian { angle, hamiltonian }).map_err(at(head.column))?;
            }
            other => return Err(parse_error(line, head.column, format!("unknown directive {other:?}"))),
        }
    }
    circuit.ok_or_else(|| parse_error(1, 1, "missing `qubits N` directive"))
}

fn write_terms(out: &mut String, s: &PauliSum) {
    for (p, c) in s.iter() {
        out.push_str(&format!(" {c} {p}"));
    }
}

/// Inverse of [`parse_circuit`].
pub fn format_circuit(circuit: &Circuit) -> String {
    let mut out = format!("qubits {}\n", circuit.n_qubits());
    for gate in circuit.gates() {
        match gate {
            Gate::ParamRotation(h) => {
                out.push_str("rot");
                write_terms(&mut out, h);
            }
            Gate::FixedClifford(g) => out.push_str(&format!("fixed {g}")),
            Gate::FixedHamiltonian { angle, hamiltonian } => {
                out.push_str(&format!("fixedh {angle}"));
                write_terms(&mut out, hamiltonian);
            }
        }
        out.push('\n');
    }
    out
}
