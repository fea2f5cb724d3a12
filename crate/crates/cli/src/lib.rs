//! Argument definitions and subcommand implementations for the
//! `ramsey-toolkit` binary. Kept in a library so tests can drive the exact
//! code path the binary uses.

pub mod control;
pub mod report;

mod commands;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{run, DIAG_TABLE, CONTROL_TABLE};

#[derive(Debug, Parser)]
#[command(name = "ramsey-toolkit", version, about = "Random-projector Ramsey diagnostics and exact small-case oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Projector diagnostics per vertex count, written as CSV tables.
    Diag(DiagArgs),
    /// Stream a DIMACS CNF whose models are good colorings of K_N.
    Cnf(CnfArgs),
    /// Glue-and-prune frontier sizes for an (m, n) constraint.
    Glue(GlueArgs),
    /// Prime-sequence persistence scans over candidate windows.
    Prime(PrimeArgs),
    /// Statevector checks of the quantum estimators against classical oracles.
    Qsim(QsimArgs),
    /// Qubit counts of the brute-force oracle register.
    Estimate(EstimateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmbeddingKind {
    /// Independent directions per vertex count, no survivor subspace.
    SeedSchedule,
    /// Shared directions with a per-n survivor subspace of given rank.
    ConstraintRestricted,
}

#[derive(Debug, Args)]
pub struct DiagArgs {
    #[arg(long, default_value_t = 24)]
    pub d: usize,
    #[arg(long, default_value_t = 100)]
    pub k: usize,
    /// One or more α values; defaults to the standard grid.
    #[arg(long, num_args = 1..)]
    pub alpha: Vec<f64>,
    /// One or more seeds; results are aggregated over all of them.
    #[arg(long, num_args = 1..)]
    pub seed: Vec<u64>,
    #[arg(long = "n_values", num_args = 1.., default_values_t = [43u32, 44, 45, 46])]
    pub n_values: Vec<u32>,
    #[arg(long, value_enum, default_value_t = EmbeddingKind::SeedSchedule)]
    pub embedding: EmbeddingKind,
    /// Survivor ranks, one per n value (comma separated), for the
    /// constraint-restricted embedding.
    #[arg(long, value_delimiter = ',')]
    pub ranks: Vec<usize>,
    /// Override for log10 of the collapse threshold.
    #[arg(long = "tau_exp", allow_hyphen_values = true)]
    pub tau_exp: Option<f64>,
    #[arg(long = "tau_lin")]
    pub tau_lin: Option<f64>,
    #[arg(long = "out_dir", default_value = "out")]
    pub out_dir: PathBuf,
    /// Directory holding the red and blue adjacency files of a control coloring.
    #[arg(long = "control_dir", alias = "am46_dir")]
    pub control_dir: Option<PathBuf>,
    #[arg(long = "control_red", default_value = control::DEFAULT_RED_FILE)]
    pub control_red: String,
    #[arg(long = "control_blue", default_value = control::DEFAULT_BLUE_FILE)]
    pub control_blue: String,
    /// Clique sizes the control coloring must avoid.
    #[arg(long = "control_m", default_value_t = 5)]
    pub control_m: usize,
    #[arg(long = "control_n", default_value_t = 5)]
    pub control_n: usize,
    /// Survivor rank assigned to the control (at least 1).
    #[arg(long = "control_rank", default_value_t = 1)]
    pub control_rank: usize,
}

#[derive(Debug, Args)]
pub struct CnfArgs {
    /// Vertex count.
    #[arg(short = 'N')]
    pub big_n: usize,
    /// Forbidden red clique size.
    #[arg(short = 'm')]
    pub m: usize,
    /// Forbidden blue clique size.
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'o', long = "out")]
    pub out: PathBuf,
    /// Also write `<out>.map` with one `var i j` line per variable.
    #[arg(long)]
    pub map: bool,
}

#[derive(Debug, Args)]
pub struct GlueArgs {
    #[arg(short = 'm')]
    pub m: usize,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long)]
    pub vmax: usize,
    #[arg(long, default_value_t = ramsey_core::graded::DEFAULT_FRONTIER_BUDGET)]
    pub budget: usize,
    #[arg(long = "out_dir")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleKind {
    /// Smallest max exponent, then fewest distinct primes, then value.
    ExponentFirst,
    /// Fewest distinct primes, then smallest max exponent, then value.
    DistinctFirst,
}

#[derive(Debug, Args)]
pub struct PrimeArgs {
    /// Window as `n:lo:hi` (inclusive); repeatable. Defaults to the n = 6 and
    /// n = 7 windows.
    #[arg(long)]
    pub window: Vec<String>,
    #[arg(long, value_enum, default_value_t = RuleKind::ExponentFirst)]
    pub rule: RuleKind,
    #[arg(long = "max_distinct", default_value_t = 3)]
    pub max_distinct: usize,
    #[arg(long = "max_exponent", default_value_t = 3)]
    pub max_exponent: u32,
    #[arg(long = "out_dir")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QsimArgs {
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub probes: usize,
    #[arg(long = "out_dir")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long = "n_values", num_args = 1.., default_values_t = [44u64, 45, 46])]
    pub n_values: Vec<u64>,
    #[arg(long = "out_dir")]
    pub out_dir: Option<PathBuf>,
}

/// Parses `argv` and runs the subcommand, writing human-readable output to
/// `out`. Parse failures come back as `clap::Error` inside the `anyhow`
/// error so callers can print usage text.
pub fn run_from<I, T>(argv: I, out: &mut dyn Write) -> anyhow::Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    run(cli, out)
}
