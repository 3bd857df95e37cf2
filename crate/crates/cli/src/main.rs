//! `dsp`: decide, search, generate and reduce disjoint shortest path instances.
//!
//! Exit status is 0 on success, 2 when the input or arguments are invalid
//! and 1 when a result fails its own check.

mod commands;
mod report;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dsp_core::selftest::Suite;

#[derive(Parser)]
#[command(name = "dsp", version, about = "Disjoint shortest paths by algebraic enumeration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two vertex-disjoint shortest paths exist.
    Decide(DecideArgs),
    /// Find two vertex-disjoint shortest paths.
    Search(SearchArgs),
    /// Edge-disjoint shortest paths on a DAG.
    Kedsp(KedspArgs),
    /// Edge-disjoint paths of any length on a DAG.
    Kedp(KedspArgs),
    /// Write generated instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Transform a graph into an equivalent disjoint shortest paths instance.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Time the decision procedure over a size sweep.
    Bench(BenchArgs),
    /// Check the fast algorithms against the exhaustive oracles.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Graph file.
    #[arg(long)]
    input: PathBuf,
    /// Accept graphs that are not weakly connected.
    #[arg(long)]
    allow_disconnected: bool,
}

#[derive(Args)]
struct SeedArg {
    /// Seed for all randomness; drawn from the clock and printed when absent.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct DecideArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value_t = dsp_core::dsp2::DEFAULT_TRIALS)]
    trials: usize,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args)]
struct KedspArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of terminal pairs; must match the graph.
    #[arg(long)]
    k: Option<usize>,
    /// Refuse graphs whose tuple graph would have more than this many nodes.
    #[arg(long, default_value_t = 100_000_000)]
    max_product_nodes: u128,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Covering family for `k` rows, as JSON.
    CoveringFamily {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k-DSP instance encoding a multicolored clique instance.
    CliqueToKdsp(CliqueArgs),
    /// p-DP instance encoding a multicolored clique instance.
    CliqueToPdp(CliqueArgs),
    RandomDag(RandomArgs),
    RandomUndirected(RandomArgs),
}

#[derive(Args)]
struct CliqueArgs {
    #[arg(long)]
    k: usize,
    /// Vertices per part.
    #[arg(long)]
    n: usize,
    /// Clique file (`k n` header, then `i a j b` edge lines); random when absent.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Edge probability of a random clique instance.
    #[arg(long, default_value_t = 0.6)]
    p: f64,
    #[command(flatten)]
    seed: SeedArg,
    /// Graph file to write; the certificate goes to `<out>.cert.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    pairs: usize,
    #[arg(long, default_value_t = 0.4)]
    edge_prob: f64,
    #[command(flatten)]
    seed: SeedArg,
    /// Graph file to write; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Edge-disjoint to vertex-disjoint shortest paths.
    EdspToDsp(ReduceArgs),
    /// Disjoint paths on a DAG to disjoint shortest paths.
    DpToDsp(ReduceArgs),
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Edge counts to time.
    #[arg(long, value_delimiter = ',', default_values_t = dsp_core::bench::DEFAULT_SIZES)]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values = ["dag", "undirected"], value_parser = parse_mode)]
    modes: Vec<dsp_core::graph::Mode>,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long, default_value_t = dsp_core::dsp2::DEFAULT_TRIALS)]
    trials: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// The default.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct SelftestArgs {
    /// Instances per suite.
    #[arg(long, default_value_t = 40)]
    cases: usize,
    /// Suites to run; all when absent.
    #[arg(long = "suite", value_parser = parse_suite)]
    suites: Vec<Suite>,
    #[command(flatten)]
    seed: SeedArg,
}

fn parse_mode(s: &str) -> Result<dsp_core::graph::Mode, String> {
    match s {
        "dag" => Ok(dsp_core::graph::Mode::Dag),
        "undirected" => Ok(dsp_core::graph::Mode::Undirected),
        _ => Err(format!("unknown mode `{s}`, expected dag or undirected")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|suite| suite.name()).collect();
        format!("unknown suite `{s}`, expected one of {}", names.join(", "))
    })
}

/// Library validation errors and unreadable files are the caller's fault;
/// anything else means a result failed a check.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<dsp_core::Error>() {
            return if matches!(e, dsp_core::Error::SearchExhausted { .. }) { 1 } else { 2 };
        }
        if cause.is::<io::Error>() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
