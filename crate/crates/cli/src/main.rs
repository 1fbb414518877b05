use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod record;

#[derive(Parser)]
#[command(name = "minmaxcc", version, about = "Min-max correlation clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an edge-list instance with the sequential solver.
    Solve(SolveArgs),
    /// Run the single-pass streaming solver, replaying the file once per probe.
    Stream(StreamArgs),
    /// Exact optimum by exhaustive search (n ≤ 12).
    Oracle(OracleArgs),
    /// Check the structural facts on one instance or on seeded random graphs.
    Check(CheckArgs),
    /// Generate a planted-partition instance.
    Gen(GenArgs),
    /// Time the solver on planted instances of growing edge count.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Sketch,
}

#[derive(Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = Mode::Sketch)]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Clustering output; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run record output; stderr when omitted.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args)]
pub struct StreamArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1.5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Feed the edges in a seeded random order instead of file order.
    #[arg(long)]
    pub shuffle_seed: Option<u64>,
    /// Single pass at this guess.
    #[arg(long, conflicts_with = "search", required_unless_present = "search")]
    pub phi: Option<u64>,
    /// Binary search over φ, one pass per probe.
    #[arg(long)]
    pub search: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// One optimal clustering.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args)]
pub struct CheckArgs {
    /// Instance to check; random graphs are generated when omitted.
    #[arg(long, conflicts_with_all = ["instances", "n"])]
    pub input: Option<PathBuf>,
    /// Guess to check at; defaults to the exact optimum.
    #[arg(long)]
    pub phi: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    #[arg(long, default_value_t = 7)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub clusters: usize,
    /// Probability of flipping each vertex pair.
    #[arg(long, default_value_t = 0.01)]
    pub flip: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge list output; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Ground-truth clustering output.
    #[arg(long)]
    pub truth: Option<PathBuf>,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Target edge counts.
    #[arg(long, value_delimiter = ',', default_value = "50000,100000,200000")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, default_value_t = 4000)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = Mode::Sketch)]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// A failed command: exit code plus diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Failure { code: 3, message: format!("{}: {err}", path.display()) }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<minmaxcc::Error> for Failure {
    fn from(err: minmaxcc::Error) -> Self {
        use minmaxcc::Error as E;
        let code = match err {
            E::Io(_) => 3,
            E::TooLarge { .. } => 4,
            _ => 2,
        };
        Failure { code, message: err.to_string() }
    }
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::io(path, e))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn init_threads() -> Result<(), Failure> {
    let threads = match std::env::var("MINMAXCC_THREADS") {
        Ok(v) => v.trim().parse::<usize>().ok().filter(|&t| t > 0).ok_or_else(|| {
            Failure::usage(format!("MINMAXCC_THREADS = {v:?} is not a positive integer"))
        })?,
        Err(_) => 1,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let run = || -> Result<(), Failure> {
        init_threads()?;
        match cli.command {
            Command::Solve(a) => commands::solve(&a),
            Command::Stream(a) => commands::stream(&a),
            Command::Oracle(a) => commands::oracle(&a),
            Command::Check(a) => commands::check(&a),
            Command::Gen(a) => commands::gen(&a),
            Command::Bench(a) => commands::bench(&a),
        }
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("minmaxcc: {f}");
            ExitCode::from(f.code)
        }
    }
}
