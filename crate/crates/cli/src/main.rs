//! `nilorbit`: command-line front end for exact coadjoint-orbit computations.
//!
//! Exit codes: 0 success, 1 validation or input error, 2 indeterminate
//! result, 3 usage error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::commands::Outcome;
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "nilorbit", version, about = "Exact coadjoint orbits of nilpotent Lie algebras")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct AlgebraArg {
    /// Algebra file or `catalog:NAME`.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Args, Debug)]
pub struct FunctionalArg {
    /// Comma-separated rationals, e.g. `0,0,1/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub functional: String,
}

#[derive(Args, Debug)]
pub struct FlagArg {
    /// `auto` for the canonical flag of ideals, or a flag file.
    #[arg(long, default_value = "auto")]
    pub flag: String,
}

#[derive(Args, Debug)]
pub struct SeedArg {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Jacobi identity and nilpotency of an algebra.
    Validate {
        #[command(flatten)]
        algebra: AlgebraArg,
    },
    /// Structure summary: class, lower central series, center, canonical flag.
    Info {
        #[command(flatten)]
        algebra: AlgebraArg,
    },
    /// Orbit of a functional; with `--target`, decide membership.
    Orbit {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        functional: FunctionalArg,
        #[command(flatten)]
        flag: FlagArg,
        /// Functional to test for membership (CSV).
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        #[command(flatten)]
        seed: SeedArg,
        /// Number of orbit points to sample.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Stabilizer subalgebra of a functional.
    Stabilizer {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        functional: FunctionalArg,
    },
    /// Polarization along a flag of ideals, with its certificate.
    Polarize {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        functional: FunctionalArg,
        #[command(flatten)]
        flag: FlagArg,
    },
    /// Induced-representation descriptor for a functional.
    Induce {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        functional: FunctionalArg,
        #[command(flatten)]
        flag: FlagArg,
        /// Central lattice file; the functional must be integral on it.
        #[arg(long)]
        lattice: Option<PathBuf>,
        /// Subalgebra file (`{"vectors": [...]}`) to use instead of the
        /// computed polarization.
        #[arg(long)]
        subalgebra: Option<PathBuf>,
    },
    /// Pull an orbit and its polarization back along a surjection.
    Pullback {
        /// Morphism file `{"source", "target", "matrix"}`.
        #[arg(long)]
        morphism: PathBuf,
        /// Functional on the target algebra.
        #[command(flatten)]
        functional: FunctionalArg,
        /// Lattice in the source algebra (enables the covering check).
        #[arg(long, requires = "target_lattice")]
        lattice: Option<PathBuf>,
        /// Lattice in the target algebra.
        #[arg(long, requires = "lattice")]
        target_lattice: Option<PathBuf>,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Integrality on a lattice, or the minimal integral level of a tower.
    Integrality {
        #[arg(long, conflicts_with = "tower", requires = "lattice")]
        algebra: Option<String>,
        #[arg(long, requires = "algebra")]
        lattice: Option<PathBuf>,
        #[arg(long)]
        tower: Option<PathBuf>,
        #[command(flatten)]
        functional: FunctionalArg,
        /// Highest tower level to scan.
        #[arg(long)]
        max_level: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Materialize the lattices of a quotient tower.
    Tower {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Finite level of a product family, optionally normalizing a dual.
    Product {
        #[arg(long)]
        product: PathBuf,
        /// Comma-separated factor indices.
        #[arg(long)]
        indices: String,
        /// Per-index dual file `{"entries": {"j": [...]}}`.
        #[arg(long)]
        dual: Option<PathBuf>,
    },
    /// Check that two levels present the same dual element.
    Reconcile {
        #[arg(long, conflicts_with = "product", required_unless_present = "product")]
        tower: Option<PathBuf>,
        #[arg(long)]
        product: Option<PathBuf>,
        /// Levels file `{"coarse": ..., "fine": ...}`.
        #[arg(long)]
        levels: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// List the built-in algebras.
    Catalog {
        #[arg(long)]
        name: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Validate { .. } => "validate",
            Self::Info { .. } => "info",
            Self::Orbit { .. } => "orbit",
            Self::Stabilizer { .. } => "stabilizer",
            Self::Polarize { .. } => "polarize",
            Self::Induce { .. } => "induce",
            Self::Pullback { .. } => "pullback",
            Self::Integrality { .. } => "integrality",
            Self::Tower { .. } => "tower",
            Self::Product { .. } => "product",
            Self::Reconcile { .. } => "reconcile",
            Self::Catalog { .. } => "catalog",
        }
    }
}

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_USAGE: u8 = 3;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let mut report = Report::new(json!({
        "name": cli.command.name(),
        "args": argv.get(1..).unwrap_or_default(),
    }));
    let outcome = commands::run(&cli.command, &mut report);
    let (code, body) = match &outcome {
        Ok(Outcome::Done) => (EXIT_OK, None),
        Ok(Outcome::Indeterminate) => (EXIT_INDETERMINATE, None),
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(commands::Failure::Library(e)) => (EXIT_INPUT, Some(e)),
    };
    let text = match (cli.output, body) {
        (Output::Json, None) => pretty(&report.to_json()),
        (Output::Json, Some(e)) => pretty(&report.error_json(e, i32::from(code))),
        (Output::Text, None) => report.to_text(),
        (Output::Text, Some(e)) => format!("error [{}]: {e}\n", e.kind()),
    };
    print!("{text}");
    if let Some(e) = body {
        eprintln!("nilorbit: {e}");
    }
    ExitCode::from(code)
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
