//! `hessalg`: run algebra, phase-space, dual-space and chart checks from the
//! command line and emit JSON or Markdown reports.
//!
//! Exit codes: 0 when every check passes, 1 when at least one check fails,
//! 2 on input or usage errors.

mod bundle;
mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hessalg::hessdual::{KnownPotential, DEFAULT_SEED};
use thiserror::Error;

use commands::{ChartAction, DualAction, FieldSource, PhaseAction, Run};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PotentialName {
    EntropyLike,
    ComplexLog,
    CubicNilpotent,
    CubicLine,
    UnitalThree,
    QuarticNilpotent,
    UnitalFour,
}

impl From<PotentialName> for KnownPotential {
    fn from(p: PotentialName) -> Self {
        match p {
            PotentialName::EntropyLike => Self::EntropyLike,
            PotentialName::ComplexLog => Self::ComplexLog,
            PotentialName::CubicNilpotent => Self::CubicNilpotent,
            PotentialName::CubicLine => Self::CubicLine,
            PotentialName::UnitalThree => Self::UnitalThree,
            PotentialName::QuarticNilpotent => Self::QuarticNilpotent,
            PotentialName::UnitalFour => Self::UnitalFour,
        }
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        Ok(_) => Err("tolerance must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Algebra inputs are JSON files or `example:N` for the built-in examples.
#[derive(Debug, Parser)]
#[command(name = "hessalg", version, about)]
struct Cli {
    /// Exact rational arithmetic.
    #[arg(long, global = true)]
    exact: bool,

    /// Sampling seed, decimal or 0x-prefixed hex.
    #[arg(long, global = true, env = "HESSALG_SEED", value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Tolerance override for the command's checks.
    #[arg(long, global = true, value_parser = parse_tol)]
    tol: Option<f64>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Axioms and power ideals of an algebra.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Phase spaces of a left-symmetric product.
    #[command(subcommand)]
    Phase(PhaseCmd),
    /// Geometry on the dual of a commutative associative algebra.
    #[command(subcommand)]
    Dual(DualCmd),
    /// Codazzi and triple-bracket checks for a bivector field on a chart.
    #[command(subcommand)]
    Chart(ChartCmd),
    /// The built-in example catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Debug, Subcommand)]
enum AlgebraCmd {
    Check {
        algebra: String,
        /// Checks that decide the exit code.
        #[arg(long, value_delimiter = ',', default_value = "commutative,associative")]
        require: Vec<String>,
    },
    Powers {
        algebra: String,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
}

#[derive(Debug, Subcommand)]
enum PhaseCmd {
    /// Build the phase space, triangular when no r is given.
    Build {
        product: String,
        #[arg(long)]
        r: Option<String>,
    },
    /// Build and run the para-Kähler suite.
    Verify {
        product: String,
        #[arg(long)]
        r: Option<String>,
    },
    /// Quasi-S-matrix conditions only.
    Smatrix {
        product: String,
        #[arg(long)]
        r: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum DualCmd {
    Orbit {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    Metric {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    Curvature {
        algebra: String,
    },
    Koszul {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Second element for the beta form.
        #[arg(long, allow_hyphen_values = true)]
        other: Option<String>,
    },
    Potential {
        algebra: String,
        #[arg(long, value_enum)]
        potential: PotentialName,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Debug, clap::Args)]
#[group(required = true, multiple = false)]
struct FieldArgs {
    /// Linear bivector of a commutative algebra.
    #[arg(long)]
    algebra: Option<String>,
    /// Inverse Hessian of the entropy function in this dimension.
    #[arg(long)]
    entropy: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum ChartCmd {
    Codazzi {
        #[command(flatten)]
        field: FieldArgs,
        /// JSON sample spec.
        #[arg(long)]
        samples: Option<String>,
    },
    Triple {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        samples: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogCmd {
    Run,
}

fn source(f: &FieldArgs) -> FieldSource<'_> {
    match (&f.algebra, f.entropy) {
        (Some(a), _) => FieldSource::Algebra(a),
        (None, Some(n)) => FieldSource::Entropy(n),
        (None, None) => unreachable!("clap enforces the group"),
    }
}

fn execute(cli: &Cli) -> Result<bundle::ReportBundle, CliError> {
    let run = Run {
        exact: cli.exact,
        seed: cli.seed,
        tol: cli.tol,
    };
    match &cli.command {
        Command::Algebra(AlgebraCmd::Check { algebra, require }) => {
            commands::algebra_check(&run, algebra, require)
        }
        Command::Algebra(AlgebraCmd::Powers { algebra, max }) => commands::algebra_powers(&run, algebra, *max),
        Command::Phase(cmd) => {
            let (action, product, r) = match cmd {
                PhaseCmd::Build { product, r } => (PhaseAction::Build, product, r),
                PhaseCmd::Verify { product, r } => (PhaseAction::Verify, product, r),
                PhaseCmd::Smatrix { product, r } => (PhaseAction::Smatrix, product, r),
            };
            commands::phase(&run, action, product, r.as_deref())
        }
        Command::Dual(cmd) => match cmd {
            DualCmd::Orbit { algebra, point, element } => {
                commands::dual(&run, algebra, DualAction::Orbit { point, element })
            }
            DualCmd::Metric { algebra, point } => commands::dual(&run, algebra, DualAction::Metric { point }),
            DualCmd::Curvature { algebra } => commands::dual(&run, algebra, DualAction::Curvature),
            DualCmd::Koszul { algebra, element, other } => commands::dual(
                &run,
                algebra,
                DualAction::Koszul {
                    element,
                    other: other.as_deref(),
                },
            ),
            DualCmd::Potential { algebra, potential, point } => commands::dual(
                &run,
                algebra,
                DualAction::Potential {
                    kind: (*potential).into(),
                    point,
                },
            ),
        },
        Command::Chart(ChartCmd::Codazzi { field, samples }) => {
            commands::chart(&run, ChartAction::Codazzi, source(field), samples.as_deref())
        }
        Command::Chart(ChartCmd::Triple { field, samples }) => {
            commands::chart(&run, ChartAction::Triple, source(field), samples.as_deref())
        }
        Command::Catalog(CatalogCmd::Run) => Ok(commands::catalog(&run)),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                CliError::Input(_) | CliError::Io(_) => 2,
                CliError::Compute(_) => 1,
            });
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for c in report.checks.iter().filter(|c| c.status.is_failure()) {
        log::warn!("check failed: {} (defect {:e})", c.name, c.defect);
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
