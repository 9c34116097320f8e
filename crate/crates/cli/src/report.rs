use std::fmt::Write as _;

use dla_core::{DlaResult, PauliSum};
use serde::{Deserialize, Serialize};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] so that the stored value is exactly what
/// every rendering prints.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: f64,
    pub pauli: String,
}

pub fn terms(s: &PauliSum) -> Vec<Term> {
    s.iter()
        .map(|(p, c)| Term { coefficient: round_significant(c), pauli: p.to_string() })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeReport {
    pub mode: String,
    pub generators: Vec<Vec<Term>>,
    pub dimension: usize,
    pub closed: bool,
    pub contains_identity: bool,
    pub bracket_count: usize,
    pub basis: Vec<Vec<Term>>,
}

impl ModeReport {
    pub fn new(mode: &str, generators: &[PauliSum], result: &DlaResult) -> Self {
        ModeReport {
            mode: mode.to_string(),
            generators: generators.iter().map(terms).collect(),
            dimension: result.dimension,
            closed: result.closed,
            contains_identity: result.contains_identity_direction,
            bracket_count: result.bracket_count,
            basis: result.basis.iter().map(terms).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, status: Status, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), status, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub n_qubits: usize,
    pub gates: usize,
    pub rotations: usize,
    pub modes: Vec<ModeReport>,
    pub subset_verified: Option<bool>,
    pub residual_clifford: Option<Vec<String>>,
    pub residual_is_identity: Option<bool>,
    pub checks: Vec<Check>,
    pub timing_ms: f64,
}

impl Report {
    pub fn mode(&self, name: &str) -> Option<&ModeReport> {
        self.modes.iter().find(|m| m.mode == name)
    }

    pub fn all_closed(&self) -> bool {
        self.modes.iter().all(|m| m.closed)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_machine(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "qubits: {}  gates: {}  rotations: {}", self.n_qubits, self.gates, self.rotations);
        for m in &self.modes {
            let _ = writeln!(out, "[{}]", m.mode);
            let _ = writeln!(out, "  dimension: {}", m.dimension);
            let _ = writeln!(out, "  closed: {}", m.closed);
            let _ = writeln!(out, "  contains_identity: {}", m.contains_identity);
            let _ = writeln!(out, "  brackets: {}", m.bracket_count);
            let _ = writeln!(out, "  generators:");
            for (i, g) in m.generators.iter().enumerate() {
                let _ = writeln!(out, "    g{}: {}", i + 1, render_terms(g));
            }
            let _ = writeln!(out, "  basis:");
            for (i, b) in m.basis.iter().enumerate() {
                let _ = writeln!(out, "    b{}: {}", i + 1, render_terms(b));
            }
        }
        if let Some(s) = self.subset_verified {
            let _ = writeln!(out, "subset_verified: {s}");
        }
        if let Some(r) = &self.residual_clifford {
            let list = if r.is_empty() { "(none)".to_string() } else { r.join("; ") };
            let _ = writeln!(out, "residual_clifford: {list}");
        }
        if let Some(id) = self.residual_is_identity {
            let _ = writeln!(out, "residual_is_identity: {id}");
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let _ = writeln!(out, "  {}  {}: {}", c.status.label(), c.name, c.detail);
            }
        }
        let _ = writeln!(out, "timing_ms: {}", self.timing_ms);
        out
    }
}

/// `c*P` terms joined with signs; coefficients print in shortest round-trip
/// form so the text carries the same values as the machine report.
pub fn render_terms(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let c = t.coefficient;
        match (i, c < 0.0) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if c.abs() == 1.0 {
            out.push_str(&t.pauli);
        } else {
            let _ = write!(out, "{}*{}", c.abs(), t.pauli);
        }
    }
    out
}
