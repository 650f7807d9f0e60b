//! `nzflow`: batch analysis of cubic graphs from the command line.
//!
//! Every command except `certify` reads a stream of graphs and writes one
//! JSON record per graph, in input order. Exit codes: 0 success, 1 anomaly
//! or rejected certificate, 2 input error, 3 work budget exceeded.

pub mod commands;
pub mod input;

use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand};

pub use commands::{AnalysisReport, Timings};

#[derive(Debug, Parser)]
#[command(name = "nzflow", version, about = "Nowhere-zero flows, oddness and cyclic connectivity of cubic graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the 5-flow pipeline and emit a report per graph
    Analyze(AnalyzeArgs),
    /// Oddness and a 2-factor attaining it
    Oddness(InputArgs),
    /// Cyclic edge-connectivity, or a test against a threshold
    Cyclic(CyclicArgs),
    /// A nowhere-zero k-flow from the generic solver
    Flow(FlowArgs),
    /// Check flow certificates against graphs
    Certify(CertifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// graph6/sparse6 lines or edge-list JSON; "-" reads stdin
    pub input: String,
    /// Worker threads (0: one per core)
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Skip malformed records instead of stopping (the exit code still reports them)
    #[arg(long)]
    pub lenient: bool,
    /// Work budget per graph for the searches (unlimited by default)
    #[arg(long)]
    pub max_work: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Leave out the timings field
    #[arg(long)]
    pub no_timings: bool,
    /// Cross-check found flows by brute force when 2^n is at most this
    #[arg(long, default_value_t = 1 << 16)]
    pub max_subsets: u64,
    /// Stop before the partition checks on graphs that are not cyclically 6-edge-connected
    #[arg(long)]
    pub require_cyclic6: bool,
    /// Do not run the generic solver when the hypotheses fail
    #[arg(long)]
    pub no_fallback: bool,
    /// Embed the full claim log in each report
    #[arg(long)]
    pub claim_log: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CyclicArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Test cyclic k-edge-connectivity instead of computing the value
    #[arg(long)]
    pub k: Option<usize>,
    /// Largest value computed exactly
    #[arg(long, default_value_t = 6)]
    pub bound: usize,
}

#[derive(Debug, Clone, Args)]
pub struct FlowArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 5)]
    pub k: u32,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    /// Graphs, as for the other commands
    pub graph: String,
    /// Certificates: JSON, one per line, either bare or inside an analyze report
    pub certificate: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANOMALY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub fn run(cli: Cli, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Analyze(args) => commands::analyze(&args, stdin, out, err),
        Command::Oddness(args) => commands::oddness(&args, stdin, out, err),
        Command::Cyclic(args) => commands::cyclic(&args, stdin, out, err),
        Command::Flow(args) => commands::flow(&args, stdin, out, err),
        Command::Certify(args) => commands::certify(&args, stdin, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "nzflow: {e}");
            EXIT_INPUT
        }
    }
}
