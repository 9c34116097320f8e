use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::path::Path;
use std::time::Instant;

use dla_core::ansatz::lie_closure_or_empty;
use dla_core::closure::span_equals_with_tolerance;
use dla_core::oracle::{clifford_matrix, dense_closure_dim, exp_i, MAX_CLOSURE_GENERATORS, MAX_CLOSURE_QUBITS};
use dla_core::{
    build_equivariant_ansatz, build_rzz_decomposition, compare_modes, conjugated_generators, format_circuit,
    naive_generators, parse_circuit, Circuit, CliffordGate, ClosureConfig, DlaResult, EquivariantAnsatzSpec,
    ModeComparison, PauliSum,
};

use crate::report::{Check, ModeReport, Report, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MODE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_CHECK: i32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<dla_core::Error> for Failure {
    fn from(e: dla_core::Error) -> Self {
        let code = if e.is_mode_error() { EXIT_MODE } else { EXIT_INPUT };
        Failure { code, message: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Naive,
    Conjugation,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Naive => "naive",
            Mode::Conjugation => "conjugation",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub tolerance: f64,
    pub max_dimension: Option<usize>,
    pub oracle: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { tolerance: ClosureConfig::default().independence_tolerance, max_dimension: None, oracle: false }
    }
}

impl Options {
    pub fn config(&self) -> Result<ClosureConfig, Failure> {
        let mut cfg = ClosureConfig::default().with_tolerance(self.tolerance);
        if let Some(cap) = self.max_dimension {
            cfg = cfg.with_max_dimension(cap);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// What to run on a built circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analysis {
    None,
    Single(Mode),
    Compare,
}

/// The exit status for a report that was produced.
pub fn exit_code(report: &Report) -> i32 {
    if !report.all_closed() {
        EXIT_CAP
    } else if report.any_failed() {
        EXIT_CHECK
    } else {
        EXIT_OK
    }
}

pub fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_circuit(&text).map_err(|e| Failure::input(format!("{}:{e}", path.display())))
}

fn mode_generators(circuit: &Circuit, mode: Mode) -> Result<Vec<PauliSum>, Failure> {
    let gens = match mode {
        Mode::Naive => naive_generators(circuit),
        Mode::Conjugation => conjugated_generators(circuit).map(|c| c.generators),
    };
    gens.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{} mode: {}", mode.name(), f.message);
        f
    })
}

fn oracle_check(mode: Mode, gens: &[PauliSum], result: &DlaResult) -> Check {
    let name = format!("oracle {}", mode.name());
    if !result.closed {
        return Check::new(&name, Status::Skip, "closure incomplete");
    }
    if result.n_qubits > MAX_CLOSURE_QUBITS || gens.len() > MAX_CLOSURE_GENERATORS {
        return Check::new(
            &name,
            Status::Skip,
            format!("dense closure limited to {MAX_CLOSURE_QUBITS} qubits and {MAX_CLOSURE_GENERATORS} generators"),
        );
    }
    match dense_closure_dim(gens) {
        Ok(d) => Check::new(
            &name,
            Status::from_bool(d == result.dimension),
            format!("symbolic {} vs dense {d}", result.dimension),
        ),
        Err(e) => Check::new(&name, Status::Fail, e.to_string()),
    }
}

fn base_report(command: &str, circuit: &Circuit) -> Report {
    Report {
        command: command.to_string(),
        n_qubits: circuit.n_qubits(),
        gates: circuit.len(),
        rotations: circuit.rotation_count(),
        modes: Vec::new(),
        subset_verified: None,
        residual_clifford: None,
        residual_is_identity: None,
        checks: Vec::new(),
        timing_ms: 0.0,
    }
}

fn run_single(report: &mut Report, circuit: &Circuit, mode: Mode, opts: &Options) -> Result<(), Failure> {
    let cfg = opts.config()?;
    let gens = mode_generators(circuit, mode)?;
    let result = lie_closure_or_empty(&gens, circuit.n_qubits(), &cfg)?;
    if mode == Mode::Conjugation {
        let conj = conjugated_generators(circuit)?;
        report.residual_is_identity = Some(conj.residual_is_identity(circuit.n_qubits()));
        report.residual_clifford = Some(conj.residual.iter().map(CliffordGate::to_string).collect());
    }
    if opts.oracle {
        report.checks.push(oracle_check(mode, &gens, &result));
    }
    report.modes.push(ModeReport::new(mode.name(), &gens, &result));
    Ok(())
}

fn run_compare(report: &mut Report, circuit: &Circuit, opts: &Options) -> Result<ModeComparison, Failure> {
    let cfg = opts.config()?;
    let naive_gens = mode_generators(circuit, Mode::Naive)?;
    let conj_gens = mode_generators(circuit, Mode::Conjugation)?;
    let cmp = compare_modes(circuit, &cfg)?;
    if opts.oracle {
        report.checks.push(oracle_check(Mode::Naive, &naive_gens, &cmp.naive));
        report.checks.push(oracle_check(Mode::Conjugation, &conj_gens, &cmp.conjugated));
    }
    report.modes.push(ModeReport::new(Mode::Naive.name(), &naive_gens, &cmp.naive));
    report.modes.push(ModeReport::new(Mode::Conjugation.name(), &conj_gens, &cmp.conjugated));
    report.subset_verified = Some(cmp.subset_verified);
    report.residual_clifford = Some(cmp.residual_clifford.iter().map(CliffordGate::to_string).collect());
    report.residual_is_identity = Some(cmp.residual_is_identity);
    Ok(cmp)
}

fn analyse(command: &str, circuit: &Circuit, analysis: Analysis, opts: &Options) -> Result<Report, Failure> {
    let start = Instant::now();
    let mut report = base_report(command, circuit);
    match analysis {
        Analysis::None => {}
        Analysis::Single(mode) => run_single(&mut report, circuit, mode, opts)?,
        Analysis::Compare => {
            run_compare(&mut report, circuit, opts)?;
        }
    }
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

pub fn compute(circuit: &Circuit, mode: Mode, opts: &Options) -> Result<Report, Failure> {
    analyse("compute", circuit, Analysis::Single(mode), opts)
}

pub fn compare(circuit: &Circuit, opts: &Options) -> Result<Report, Failure> {
    analyse("compare", circuit, Analysis::Compare, opts)
}

pub fn ansatz(
    spec: &EquivariantAnsatzSpec,
    analysis: Analysis,
    opts: &Options,
    emit: Option<&Path>,
) -> Result<Report, Failure> {
    let circuit = build_equivariant_ansatz(spec)?;
    if let Some(path) = emit {
        fs::write(path, format_circuit(&circuit)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    analyse("ansatz", &circuit, analysis, opts)
}

/// The five elements listed for the closure of `{cnot, Z₂}`.
pub fn listed_five() -> Vec<PauliSum> {
    ["II - IX - ZI + ZX", "IZ", "IY - ZY", "-IZ + ZZ", "-IX + ZX"]
        .iter()
        .map(|s| s.parse().expect("literal sum"))
        .collect()
}

/// Rebuilds the ZZ-rotation example, runs both modes and checks the
/// published values.
pub fn paper_example(opts: &Options) -> Result<Report, Failure> {
    let start = Instant::now();
    let circuit = build_rzz_decomposition();
    let mut report = base_report("paper-example", &circuit);
    let cmp = run_compare(&mut report, &circuit, opts)?;
    let tol = opts.tolerance;

    let naive = &cmp.naive;
    report.checks.push(Check::new(
        "naive dimension",
        Status::from_bool(naive.closed && naive.dimension == 5),
        format!("{} (expected 5)", naive.dimension),
    ));
    report.checks.push(Check::new(
        "naive span equals listed elements",
        Status::from_bool(span_equals_with_tolerance(&naive.basis, &listed_five(), tol)),
        "span{cnot, IZ, IY - ZY, -IZ + ZZ, -IX + ZX}",
    ));

    let cnot = CliffordGate::Cnot { control: 0, target: 1 };
    let generator = &listed_five()[0];
    let diff = exp_i(FRAC_PI_4, generator)?.max_abs_diff(&clifford_matrix(&cnot, 2)?);
    report.checks.push(Check::new(
        "cnot exponential",
        Status::from_bool(diff <= 1e-10),
        format!("max |exp(i pi/4 H) - CNOT| = {diff:.1e}"),
    ));

    let zz: PauliSum = "ZZ".parse().expect("literal sum");
    let conj = &cmp.conjugated;
    report.checks.push(Check::new(
        "conjugated basis is ZZ",
        Status::from_bool(conj.dimension == 1 && span_equals_with_tolerance(&conj.basis, &[zz], tol)),
        format!("dimension {}", conj.dimension),
    ));
    report.checks.push(Check::new(
        "conjugated within naive",
        Status::from_bool(cmp.subset_verified),
        format!("subset_verified = {}", cmp.subset_verified),
    ));
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}
