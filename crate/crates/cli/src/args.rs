use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trussmerge_core::metrics::MetricId;
use trussmerge_core::Method;

#[derive(Debug, Parser)]
#[command(name = "trussmerge", version, about = "Grow a graph's k-truss by merging node pairs")]
pub struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truss decomposition statistics of an edge list.
    Decompose(DecomposeArgs),
    /// Run one solver and emit a JSON report.
    Maximize(MaximizeArgs),
    /// Run a method × k grid and emit a CSV of truss-size increases.
    Compare(CompareArgs),
    /// Track robustness measures under greedy merges, edge additions or a solver run.
    RobustnessStudy(StudyArgs),
    /// Write hardness fixtures as edge lists.
    Fixtures(FixtureArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave wall times out so repeated runs produce identical bytes.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Merger budget.
    #[arg(long, default_value_t = 10)]
    pub budget: usize,
    /// Inside nodes considered per round.
    #[arg(long = "ni", default_value_t = 100)]
    pub n_i: usize,
    /// Outside nodes considered per round.
    #[arg(long = "no", default_value_t = 50)]
    pub n_o: usize,
    /// Candidates evaluated per round.
    #[arg(long = "nc", default_value_t = 10)]
    pub n_c: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `label lat lon` file used with --dist-threshold.
    #[arg(long)]
    pub coords: Option<PathBuf>,
    /// Only merge pairs at most this many kilometres apart.
    #[arg(long)]
    pub dist_threshold: Option<f64>,
    /// Score candidates exactly as the printed pseudocode does.
    #[arg(long)]
    pub literal_heuristics: bool,
    /// Keep merging when no candidate grows the truss.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub allow_no_op: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub input: PathBuf,
    /// Truss levels to report, e.g. `--k 5,10,15`.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<u32>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct MaximizeArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub k: u32,
    /// BM, EQ, II, IO, RD, NE, NT or NAIVE.
    #[arg(long, default_value = "BM")]
    pub method: Method,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Per-step CSV trace.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub input: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "5,10,15,20")]
    pub k: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "BM,EQ,II,IO,RD,NE,NT")]
    pub methods: Vec<Method>,
    /// Seeds averaged for randomized methods.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Study {
    /// Solver run, truss size against each measure.
    Correlation,
    /// Greedy node merges improving one measure.
    Merge,
    /// Greedy edge additions improving one measure.
    Add,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Er,
    Ws,
    Hk,
}

#[derive(Debug, Args)]
pub struct StudyArgs {
    /// Edge list; a generated graph is used when absent.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "correlation")]
    pub study: Study,
    #[arg(long, value_enum, default_value = "er")]
    pub generator: Generator,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    /// Edge probability (ER), rewiring probability (WS) or triangle probability (HK).
    #[arg(long, default_value_t = 0.1)]
    pub p: f64,
    /// Ring neighbours (WS) or attachments per node (HK).
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// Measure improved by the merge and add studies.
    #[arg(long, default_value = "VB")]
    pub metric: MetricId,
    #[arg(long, default_value_t = 10)]
    pub rounds: usize,
    #[arg(long, default_value_t = 10)]
    pub k: u32,
    #[arg(long, default_value = "BM")]
    pub method: Method,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    /// Sets over elements 1..m, `;`-separated, e.g. `1,2;2,3;3,4`.
    #[arg(long, default_value = "1,2;2,3;3,4")]
    pub sets: String,
    #[arg(long, default_value_t = 4)]
    pub k: u32,
    /// Copies per element side.
    #[arg(long, default_value_t = 8)]
    pub d: usize,
    /// Hub node count; k - 3 when absent.
    #[arg(long)]
    pub r_nodes: Option<usize>,
    /// Emit the fixed instance with increasing marginal gains instead.
    #[arg(long)]
    pub witness: bool,
    #[command(flatten)]
    pub output: Output,
}
