//! `tutte`: checks, searches and corpus verification for Tutte trees and
//! fundamental Tutte trees.
//!
//! Machine-readable results go to stdout as JSON lines; human summaries go
//! to stderr. Exit codes: 0 holds, 1 fails, 2 invalid input, 3 inconclusive,
//! 4 unreadable file, 64 usage error.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tutte_trees::harness::TheoremId;
use tutte_trees::{Verdict, VertexOrder};

use input::Unreadable;

#[derive(Parser)]
#[command(name = "tutte", version, about = "Tutte trees and fundamental Tutte trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a given spanning tree.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Search for a tree, Hamiltonian cycle or Hamiltonian path.
    Find(FindArgs),
    /// Run a decision procedure.
    #[command(subcommand)]
    Decide(DecideCommand),
    /// Dump a structural decomposition.
    #[command(subcommand)]
    Structure(StructureCommand),
    /// Write a named graph as graph6.
    Gen(GenArgs),
    /// Check a theorem on every graph of a corpus.
    Verify(VerifyArgs),
    /// Re-check a counterexample bundle or a certificate record.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct GraphArg {
    /// graph6 file, `-` for standard input.
    #[arg(long, short, default_value = "-")]
    graph: String,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Check that a spanning tree is a Tutte tree (or, with --fundamental, a
    /// fundamental Tutte tree).
    Tree {
        #[command(flatten)]
        graph: GraphArg,
        /// Edge list `u-v,u-v,...`.
        #[arg(long, short)]
        tree: String,
        #[arg(long)]
        fundamental: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Tutte,
    Ftt,
    Hamcycle,
    Hampath,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Ascending,
    Degree,
}

#[derive(Args)]
struct SearchArgs {
    /// Node budget, 0 for unlimited.
    #[arg(long, default_value_t = 0)]
    budget: u64,
    /// Check whole spanning trees instead of pruning partial ones.
    #[arg(long)]
    unpruned: bool,
    #[arg(long, value_enum, default_value_t = Order::Ascending)]
    order: Order,
}

#[derive(Args)]
struct FindArgs {
    #[arg(value_enum)]
    problem: Problem,
    #[command(flatten)]
    graph: GraphArg,
    #[command(flatten)]
    search: SearchArgs,
    /// Fixed ends `u,v` of a Hamiltonian path.
    #[arg(long)]
    endpoints: Option<String>,
}

#[derive(Subcommand)]
enum DecideCommand {
    /// Decide whether a planar graph has a Tutte tree.
    PlanarTutte {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand)]
enum StructureCommand {
    /// Bridges of a vertex pair.
    Bridges {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        cut: String,
    },
    /// Block/cut-vertex tree.
    Blocks {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Series-parallel test.
    SpCheck {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// All 2-vertex cuts.
    TwoCuts {
        #[command(flatten)]
        graph: GraphArg,
    },
}

#[derive(Args)]
struct GenArgs {
    /// One of herschel, petersen, k33, k35, k5-barycentric, star-s,
    /// zamfirescu, noftt, or gn:N.
    name: String,
    /// Write graph6 here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a DOT rendering.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    theorem: TheoremId,
    /// graph6 corpus file; repeat to concatenate.
    #[arg(long, required = true)]
    corpus: Vec<String>,
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Directory for one JSON bundle per counterexample.
    #[arg(long)]
    bundles: Option<PathBuf>,
    /// Per-graph spanning tree cap for per-tree theorems.
    #[arg(long)]
    tree_cap: Option<u64>,
    /// Node budget per search, 0 for unlimited.
    #[arg(long, default_value_t = 0)]
    budget: u64,
    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ReplayArgs {
    /// JSON file, `-` for standard input.
    #[arg(long)]
    witness: String,
}

fn order(o: Order) -> VertexOrder {
    match o {
        Order::Ascending => VertexOrder::Ascending,
        Order::Degree => VertexOrder::DegreeDescending,
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Holds => 0,
        Verdict::Fails => 1,
        Verdict::Inconclusive => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(v) => ExitCode::from(verdict_code(v)),
        Err(e) => {
            eprintln!("error: {e:#}");
            let unreadable = e.downcast_ref::<Unreadable>().is_some();
            ExitCode::from(if unreadable { 4 } else { 2 })
        }
    }
}
