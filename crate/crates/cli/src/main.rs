//! `ddg`: constructions, verification, classification and search for
//! divisible design graphs from the command line.
//!
//! Exit status: 0 on success, 1 when a graph fails a check (or a search is
//! cut short by its budget), 2 on usage or input errors.

mod commands;
mod fetch;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ddg", version, about = "Divisible design graphs with lattice-type parameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print it as graph6.
    Construct(ConstructArgs),
    /// Check graphs against DDG (or Deza) parameters.
    Verify(VerifyArgs),
    /// Structural classification within family A or B.
    Classify(ClassifyArgs),
    /// Isomorph-free exhaustive search.
    Enumerate(EnumerateArgs),
    /// Spectra, trace tables and quotient candidates.
    Tables(TablesArgs),
    /// Apply a switching.
    Switch(SwitchArgs),
    /// Parse a published adjacency-matrix list.
    Fetch(FetchArgs),
    /// Compare the constructions with exhaustive search.
    CrossValidate(CrossArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ConstructKind {
    Lattice,
    Hadamard,
    Gprime,
    ReverseSwitch,
    Cocktail,
    Q4,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SeedArg {
    First,
    Second,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    All,
    Ddg,
    NonDdg,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SwitchKind {
    Star,
    ClassPair,
    Seidel,
}

#[derive(Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,
    /// Class size.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "second")]
    pub seed: SeedArg,
    /// Components for `reverse-switch`, e.g. `FourCube(3)+CocktailCycle(4,E12)`.
    #[arg(long)]
    pub spec: Option<String>,
    /// Pair count for `cocktail`.
    #[arg(long)]
    pub pairs: Option<usize>,
    #[arg(long, default_value = "E12")]
    pub embedding: String,
    /// Partition id (1..=3) for `q4`; without it the bare 4-cube is printed.
    #[arg(long)]
    pub partition: Option<u8>,
    /// Print a JSON report with the class partition instead of graph6.
    #[arg(long)]
    pub json: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct ParamArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Class size; inferred from the order when omitted.
    #[arg(long)]
    pub n: Option<u64>,
    /// Explicit DDG parameters `v,k,λ1,λ2,m,n`.
    #[arg(long, conflicts_with = "family")]
    pub params: Option<String>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Only run the Deza check.
    #[arg(long)]
    pub deza: bool,
    /// Take the classes to be consecutive blocks of size n (needed when λ1 = λ2).
    #[arg(long)]
    pub blocks: bool,
    /// graph6 file, `-` for stdin.
    pub input: PathBuf,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long, value_enum, default_value = "a")]
    pub family: FamilyArg,
    pub input: PathBuf,
}

#[derive(Args)]
pub struct SearchLimits {
    /// Worker threads (0: all cores).
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    #[arg(long)]
    pub budget_secs: Option<u64>,
}

#[derive(Args)]
pub struct EnumerateArgs {
    /// Deza parameters `v,k,b,a`.
    #[arg(long, conflicts_with_all = ["ddg", "family"])]
    pub deza: Option<String>,
    /// DDG parameters `v,k,λ1,λ2,m,n`.
    #[arg(long, conflicts_with = "family")]
    pub ddg: Option<String>,
    #[arg(long, value_enum, requires = "n")]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub n: Option<u64>,
    /// Default: `all` for Deza targets, `ddg` for DDG targets.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[command(flatten)]
    pub limits: SearchLimits,
    /// Frontier file for resuming.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct TablesArgs {
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args)]
pub struct SwitchArgs {
    #[arg(value_enum)]
    pub kind: SwitchKind,
    #[arg(long, value_enum, default_value = "a")]
    pub family: FamilyArg,
    /// Vertex set for `seidel`, comma separated.
    #[arg(long)]
    pub set: Option<String>,
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct FetchArgs {
    /// URL or file path.
    pub source: String,
    /// graph6 list the parsed matrices should match.
    #[arg(long)]
    pub expect: Option<PathBuf>,
    /// Cache directory for fetched pages (default: $DDG_CACHE_DIR).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore a cached copy.
    #[arg(long)]
    pub refresh: bool,
}

#[derive(Args)]
pub struct CrossArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub constructions_only: bool,
    #[command(flatten)]
    pub limits: SearchLimits,
}

/// Failure kinds mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(a) => commands::construct(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::Tables(a) => commands::tables(&a),
        Command::Switch(a) => commands::switch(&a),
        Command::Fetch(a) => fetch::fetch(&a),
        Command::CrossValidate(a) => commands::cross_validate(&a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("see `ddg --help` for usage");
            ExitCode::from(2)
        }
    }
}
