//! `hcb`: command-line front end for hypergraph randomization.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Verification(String),
}

impl From<hypercurveball::Error> for CliError {
    fn from(e: hypercurveball::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "hcb", version, about = "Degree-preserving hypergraph randomization")]
pub struct Cli {
    /// Base seed for every random stream.
    #[arg(long, env = "HCB_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads for parallel runs.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// Treat hypergraphs and degree sequences as directed.
    #[arg(long, global = true)]
    pub directed: bool,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Trade,
    Shuffle,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Randomize a hypergraph with one chain.
    Sample(SampleArgs),
    /// Perturbation curves for one or both chains.
    Bench(BenchArgs),
    /// Exact uniformity verdict for one degree sequence.
    Verify(VerifyArgs),
    /// Sweep small degree sequences for non-uniform chains.
    Search(SearchArgs),
    /// Generate an artificial dataset.
    Gen(GenArgs),
    /// Degree statistics of a hypergraph.
    Stats(StatsArgs),
    /// Fit a double exponential to curves, or a log-log scaling line.
    Fit(FitArgs),
    /// Constrained partitions and sequential selection bias.
    Partitions(PartitionArgs),
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Allowed hyperedge types, a subset of "sdm".
    #[arg(long, default_value = "dm")]
    pub space: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Trade)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 10_000)]
    pub steps: u64,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "artificial"])))]
pub struct BenchArgs {
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub artificial: Option<u32>,
    /// Dataset name written to the CSV.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, default_value = "dm")]
    pub space: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 2_000)]
    pub steps: u64,
    #[arg(long, default_value_t = 20)]
    pub runs: u64,
    /// Record the perturbation degree every this many steps.
    #[arg(long, default_value_t = 10)]
    pub every: u64,
    /// Fraction of final points averaged into the plateau.
    #[arg(long, default_value_t = 0.1)]
    pub tail_frac: f64,
    /// Relative band around the plateau.
    #[arg(long, default_value_t = 0.02)]
    pub band: f64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Node degrees: "2,2" or, directed, "2:1,0:1".
    #[arg(long)]
    pub nodes: String,
    /// Hyperedge degrees, same format.
    #[arg(long)]
    pub edges: String,
    #[arg(long, default_value = "dm")]
    pub space: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Trade)]
    pub method: MethodArg,
    /// Exact rational arithmetic.
    #[arg(long)]
    pub exact: bool,
    /// Exit with code 3 unless every verdict is uniform.
    #[arg(long)]
    pub expect_uniform: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    pub max_nodes: usize,
    #[arg(long, default_value_t = 3)]
    pub max_edges: usize,
    #[arg(long, default_value_t = 3)]
    pub max_degree: u32,
    /// Space to sweep; repeat for several. All spaces when absent.
    #[arg(long)]
    pub space: Vec<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,
    /// Print every verdict, not only the non-uniform ones.
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 16)]
    pub max_stubs: u64,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Which artificial dataset (1, 2 or 3).
    #[arg(long)]
    pub artificial: u32,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("data").required(true).args(["curve", "scaling"])))]
pub struct FitArgs {
    /// Curve CSV as written by `bench`.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// CSV of `x,y` points for a log-log line.
    #[arg(long)]
    pub scaling: Option<PathBuf>,
    #[arg(long, default_value_t = 0.02)]
    pub band: f64,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    /// Combined multiset as comma-separated tokens; roles separated by '/'.
    #[arg(long)]
    pub combined: String,
    /// Size of the first part per role, '/'-separated.
    #[arg(long)]
    pub k: String,
    /// Pairs "x:y" whose counts in the first part must differ.
    #[arg(long, value_delimiter = ',')]
    pub differ: Vec<String>,
    /// Tokens that must occur on both sides.
    #[arg(long, value_delimiter = ',')]
    pub straddle: Vec<String>,
    /// Sequential decision order; adds a probability column.
    #[arg(long, value_delimiter = ',')]
    pub order: Vec<String>,
}

fn banner(cli: &Cli) {
    let args: Vec<String> =
        std::env::args().skip(1).map(|a| if a.is_empty() || a.contains(' ') { format!("{a:?}") } else { a }).collect();
    eprintln!("# hcb {} seed={} jobs={} args: {}", env!("CARGO_PKG_VERSION"), cli.seed, cli.jobs, args.join(" "));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    banner(&cli);
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
