//! `turan`: exact clique extremal values, constructions, certificates,
//! exhaustive search, and verification sweeps, speaking graph6 on the wire.

mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "turan",
    version,
    about = "Exact clique counts and extremal search under forbidden subgraphs and a bounded matching number"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write results to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads for parallel search and sweeps. Overrides the
    /// TURAN_THREADS environment variable; defaults to all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
pub enum Command {
    /// Closed-form extremal values: clique + matching cap (with --k),
    /// matching cap alone (without --k), or the per-vertex slope of a
    /// two-colorable forbidden pattern (--pattern).
    Value(ValueArgs),
    /// Emit a named construction as graph6.
    Construct(ConstructArgs),
    /// Count r-cliques and the maximum matching of each graph6 input line.
    Count(CountArgs),
    /// Certify that each input graph has no matching beyond a bound.
    Certify(CertifyArgs),
    /// Exhaustive (or stream-driven) extremal search.
    Oracle(OracleArgs),
    /// Run verification sweeps; exits nonzero if any case fails.
    Verify(VerifyArgs),
    /// Tabulate where the join construction overtakes the balanced core.
    Crossover(CrossoverArgs),
    /// Run the count-preserving switching engine on each input graph.
    Symmetrize(SymmetrizeArgs),
}

#[derive(Args)]
pub struct ValueArgs {
    /// Total number of vertices.
    #[arg(long)]
    pub n: Option<usize>,
    /// Forbid the complete graph on k+1 vertices.
    #[arg(long)]
    pub k: Option<usize>,
    /// Clique order being counted.
    #[arg(long)]
    pub r: usize,
    /// Matching cap: no matching with more than s edges.
    #[arg(long)]
    pub s: Option<usize>,
    /// Two-colorable forbidden pattern (graph6) for the slope value.
    #[arg(long)]
    pub pattern: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    /// Balanced complete k-partite graph on n vertices.
    Turan,
    /// Independent set of n-s vertices joined to a balanced (k-1)-part core.
    Split,
    /// s disjoint edges.
    Matching,
    /// Independent set joined to the densest core avoiding the one-class
    /// remainders of a forbidden pattern.
    Asymptotic,
}

#[derive(Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: ConstructKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Forbidden pattern (graph6) for the asymptotic construction.
    #[arg(long)]
    pub pattern: Option<String>,
}

#[derive(Args)]
pub struct CountArgs {
    /// Clique order to count.
    #[arg(long)]
    pub r: usize,
    /// graph6 input file; standard input when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Args)]
pub struct CertifyArgs {
    /// Claimed bound: no matching with more than s edges.
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Args)]
pub struct OracleArgs {
    /// Number of vertices.
    #[arg(long)]
    pub n: usize,
    /// Clique order to maximize.
    #[arg(long)]
    pub r: usize,
    /// Forbid the complete graph on k+1 vertices.
    #[arg(long)]
    pub k: Option<usize>,
    /// Matching cap: no matching with more than s edges.
    #[arg(long)]
    pub s: Option<usize>,
    /// Additional forbidden subgraphs as graph6 strings.
    #[arg(long)]
    pub forbid: Vec<String>,
    /// Search only candidates from this graph6 file instead of all graphs.
    #[arg(long)]
    pub stream: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Search vs formula under a forbidden clique and matching cap.
    ExtremalValue,
    /// Forbidden clique alone: value and unique balanced witness.
    UniqueTuran,
    /// Edge-count regression (r = 2).
    Edge,
    /// Clique-count recurrences.
    Recurrences,
    /// Growth and convexity of the bound families.
    Shape,
    /// Blossom matching vs subset brute force, with certificates.
    Matching,
    /// Four-cycle under a one-edge matching cap.
    FourCycle,
    /// Four-cycle window: zero slope across n = 6, 7, 8.
    Window,
    /// Remainder-family slope coefficient.
    Slope,
    /// Switching-engine safety on random inputs.
    Switching,
    /// Everything above.
    All,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Largest vertex count/grid edge a suite walks (suite-specific default).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Largest blow-up order for the recurrence grid.
    #[arg(long)]
    pub t_max: Option<usize>,
    /// Largest part count for the recurrence/shape grids.
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Largest matching cap for the shape/slope grids.
    #[arg(long)]
    pub s_max: Option<usize>,
    /// Random cases for the matching/switching suites.
    #[arg(long)]
    pub cases: Option<usize>,
    /// Seed for the randomized suites.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Include the n = 8 spot grid in the extremal-value suite.
    #[arg(long)]
    pub spots: bool,
}

#[derive(Args)]
pub struct CrossoverArgs {
    /// Largest forbidden-clique parameter k (grid runs 2..=k).
    #[arg(long, default_value_t = 5)]
    pub k_max: usize,
    /// Largest matching cap s (grid runs 1..=s).
    #[arg(long, default_value_t = 5)]
    pub s_max: usize,
}

#[derive(Args)]
pub struct SymmetrizeArgs {
    /// Clique order the engine must never decrease.
    #[arg(long)]
    pub r: usize,
    /// Maximum committed steps.
    #[arg(long, default_value_t = 1024)]
    pub budget: usize,
    /// Forbid the complete graph on k+1 vertices.
    #[arg(long)]
    pub k: Option<usize>,
    /// Matching cap: no matching with more than s edges.
    #[arg(long)]
    pub s: Option<usize>,
    /// Additional forbidden subgraphs as graph6 strings.
    #[arg(long)]
    pub forbid: Vec<String>,
    #[arg(long)]
    pub input: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    init_threads(cli.threads)?;
    let (rendered, ok) = commands::dispatch(&cli.command)?;
    let payload = rendered.into_payload(cli.format)?;
    match &cli.output {
        Some(path) => fs::write(path, payload)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{payload}"),
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn init_threads(flag: Option<usize>) -> Result<()> {
    let env = std::env::var("TURAN_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0);
    if let Some(threads) = flag.or(env) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}
