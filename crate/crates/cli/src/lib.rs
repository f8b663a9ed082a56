//! Command-line experiments over connection graphs.
//!
//! Every subcommand produces a stream of [`Report`] lines (or a CSV histogram
//! for `dist`) and an exit status: 0 when every checked trial passed, 1 when
//! any identity failed, 2 on bad parameters or input.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;
use unimod_core::Report;

pub mod histogram;
pub mod trials;

#[derive(Debug, Parser)]
#[command(name = "unimod", version, about = "Fredholm characteristics of connection graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check psi = phi on random complexes.
    Verify(VerifyArgs),
    /// Check the pyramid extension rule on random graphs and vertex subsets.
    Extend(ExtendArgs),
    /// Check the Moebius identities of prime graphs over a range of bounds.
    Prime(PrimeArgs),
    /// Histogram of normalized determinants of random graphs.
    Dist(DistArgs),
    /// Fraction of random graphs whose Whitney complex has psi = 1.
    PsiProb(PsiProbArgs),
    /// Green function value sets, optionally against a refinement.
    Green(GreenArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Abort an instance whose complex has more cells than this.
    #[arg(long, default_value_t = 4000)]
    pub max_cells: usize,
    /// Edge-list file to use instead of random graphs.
    #[arg(long, conflicts_with = "complex")]
    pub graph: Option<PathBuf>,
    /// Cell-list file to use instead of random complexes.
    #[arg(long)]
    pub complex: Option<PathBuf>,
}

/// Random graph size: `--n` vertices with either `--edges` or `--p`.
#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, conflicts_with = "p")]
    pub edges: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    pub count: u64,
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = Structure::Whitney)]
    pub structure: Structure,
    /// Attachment attempts per random CW complex.
    #[arg(long, default_value_t = 12)]
    pub steps: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    #[arg(long, default_value_t = 100)]
    pub count: u64,
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Fixed vertex subset, e.g. "0 1 2"; random per trial when absent.
    #[arg(long)]
    pub subset: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PrimeArgs {
    #[arg(long, default_value_t = 10)]
    pub from: usize,
    #[arg(long, default_value_t = 200)]
    pub to: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Which::Adjacency)]
    pub which: Which,
    #[arg(long, default_value_t = histogram::DEFAULT_BINS)]
    pub bins: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PsiProbArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GreenArgs {
    #[arg(long, value_enum, default_value_t = Corpus::Named)]
    pub corpus: Corpus,
    #[arg(long, value_enum, default_value_t = Refine::None)]
    pub refine: Refine,
    /// Random corpus size.
    #[arg(long, default_value_t = 10)]
    pub count: u64,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    Whitney,
    Skeleton1,
    Matroid,
    CwRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Adjacency,
    Fredholm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Refine {
    Barycentric,
    Edge,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Corpus {
    Named,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] unimod_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 2 for anything the caller can fix, 1 for internal inconsistencies.
    pub fn exit_code(&self) -> i32 {
        use unimod_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(E::Parameter(_) | E::Resource { .. } | E::Parse { .. } | E::Unsupported(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Rendered output of one command.
#[derive(Debug, Default)]
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

impl Outcome {
    pub fn from_reports(reports: &[Report]) -> Self {
        let mut text = String::new();
        for r in reports {
            text.push_str(&r.to_json_line());
            text.push('\n');
        }
        Outcome { text, failed: reports.iter().any(Report::failed) }
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed)
    }
}

pub fn read_input(path: &PathBuf) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Verify(a) => trials::verify(a),
        Command::Extend(a) => trials::extend(a),
        Command::Prime(a) => trials::prime(a),
        Command::Dist(a) => trials::dist(a),
        Command::PsiProb(a) => trials::psi_prob(a),
        Command::Green(a) => trials::green(a),
    }
}

fn common(cli: &Cli) -> &Common {
    match &cli.command {
        Command::Verify(a) => &a.common,
        Command::Extend(a) => &a.common,
        Command::Prime(a) => &a.common,
        Command::Dist(a) => &a.common,
        Command::PsiProb(a) => &a.common,
        Command::Green(a) => &a.common,
    }
}

/// Runs the command, writes its output, and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(outcome) => {
            let written = match &common(cli).out {
                Some(path) => fs::write(path, &outcome.text).map_err(|source| CliError::Io { path: path.clone(), source }),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => outcome.exit_code(),
                Err(e) => {
                    eprintln!("unimod: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("unimod: {e}");
            e.exit_code()
        }
    }
}
