use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use dla_cli::commands::{self, Analysis, Failure, Mode, Options, EXIT_INPUT};
use dla_cli::report::Report;
use dla_core::{EquivariantAnsatzSpec, Topology};

#[derive(Parser)]
#[command(name = "dla", version, about = "Dynamical Lie algebras of parameterized Pauli circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Naive,
    Conjugation,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Naive => Mode::Naive,
            ModeArg::Conjugation => Mode::Conjugation,
        }
    }
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum TopologyArg {
    #[default]
    Chain,
    Ring,
}

#[derive(clap::Args)]
struct Common {
    /// Relative tolerance for linear independence.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Stop the closure once the basis reaches this size.
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cross-check dimensions against the dense-matrix closure (up to 3 qubits).
    #[arg(long)]
    oracle: bool,
}

impl Common {
    fn options(&self) -> Options {
        Options { tolerance: self.tol, max_dimension: self.max_dim, oracle: self.oracle }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the algebra of a circuit file in one generator mode.
    Compute {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run both generator modes on a circuit file and compare them.
    Compare {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce the CNOT / ZZ-rotation example and check the known values.
    PaperExample {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, hide = true, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Build the equivariant hardware-efficient ansatz and analyse it.
    #[command(group(ArgGroup::new("analysis").args(["mode", "compare"])))]
    Ansatz {
        #[arg(long)]
        qubits: usize,
        /// Number of qubits carrying rotations.
        #[arg(long)]
        rad: usize,
        #[arg(long)]
        layers: usize,
        #[arg(long, value_enum, default_value_t = TopologyArg::Chain)]
        topology: TopologyArg,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        compare: bool,
        /// Write the generated circuit to this file.
        #[arg(long)]
        emit_circuit: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn run(command: Command) -> Result<(Report, Format), Failure> {
    match command {
        Command::Compute { file, mode, common } => {
            let circuit = commands::load_circuit(&file)?;
            Ok((commands::compute(&circuit, mode.into(), &common.options())?, common.format))
        }
        Command::Compare { file, common } => {
            let circuit = commands::load_circuit(&file)?;
            Ok((commands::compare(&circuit, &common.options())?, common.format))
        }
        Command::PaperExample { format, tol } => {
            let opts = Options { tolerance: tol, ..Options::default() };
            Ok((commands::paper_example(&opts)?, format))
        }
        Command::Ansatz { qubits, rad, layers, topology, mode, compare, emit_circuit, common } => {
            let spec = EquivariantAnsatzSpec {
                n_qubits: qubits,
                n_rad: rad,
                layers,
                topology: match topology {
                    TopologyArg::Chain => Topology::Chain,
                    TopologyArg::Ring => Topology::Ring,
                },
            };
            let analysis = match (mode, compare) {
                (Some(m), _) => Analysis::Single(m.into()),
                (None, true) => Analysis::Compare,
                (None, false) => Analysis::None,
            };
            let report = commands::ansatz(&spec, analysis, &common.options(), emit_circuit.as_deref())?;
            Ok((report, common.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok((report, format)) => {
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Machine => println!("{}", report.to_machine()),
            }
            let code = commands::exit_code(&report);
            if code != 0 {
                eprintln!("error: {}", failure_summary(&report));
            }
            ExitCode::from(code as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}

fn failure_summary(report: &Report) -> String {
    if !report.all_closed() {
        return "closure cap reached before the algebra closed".into();
    }
    let failed: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.status == dla_cli::report::Status::Fail)
        .map(|c| c.name.as_str())
        .collect();
    format!("failed checks: {}", failed.join(", "))
}
