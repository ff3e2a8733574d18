//! Command-line front end over the library: every command is deterministic
//! given its flags (randomness always comes from an explicit --seed).
//!
//! Exit codes: 0 success / property holds; 1 runtime error (I/O, malformed
//! file, infeasible computation); 2 invalid arguments; 3 negative result
//! (statistical check failed, thresholds unmet, property fails, nothing
//! found); 4 inconclusive (budget exhausted before a definitive answer).

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Parser)]
#[command(
    name = "pathstab",
    version,
    about = "Random graphs, layered witness digraphs, and path-deletion stability checks"
)]
struct Cli {
    /// Suppress informational output on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    /// Print summaries as JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and write it in the graph text format.
    Sample(SampleArgs),
    /// Run an estimator and report closed form vs Monte Carlo.
    Estimate(EstimateArgs),
    /// Run the witness construction pipeline and write its report.
    Construct(ConstructArgs),
    /// Check the path-deletion stability property of a digraph file.
    Verify(VerifyArgs),
    /// Partition a digraph's vertices into directed paths.
    Partition(PartitionArgs),
    /// Sweep small layered digraphs for a verified witness.
    Search(SearchArgs),
}

#[derive(Args)]
struct SampleArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Edge probability in [0, 1].
    #[arg(long)]
    p: f64,
    /// Master seed (the graph comes from substream 0).
    #[arg(long)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(subcommand)]
    kind: EstimateKind,
}

#[derive(Subcommand)]
enum EstimateKind {
    /// Mean r-clique count of G(n, p) vs C(n,r) p^C(r,2), at 4 sigma.
    CliqueCount {
        #[arg(long)]
        n: usize,
        /// Clique size to count.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Frequency of k-clique-free G(u, p) vs e^(-mu + delta/2), at 3 sigma.
    NoCliqueProb {
        #[arg(long)]
        u: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Exhaustive overlap pair counts vs closed-form coefficients.
    DeltaPairs {
        #[arg(long)]
        u: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    /// Layer size k (k >= 2; for k = 1 use `verify` on any tournament).
    #[arg(long)]
    k: usize,
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Edge probability (free mode); mutually exclusive with --paper-mode.
    #[arg(long, conflicts_with = "paper_mode")]
    p: Option<f64>,
    /// Use p = min(1, 20 n^(-2/k)); requires n to be a multiple of 2k.
    #[arg(long)]
    paper_mode: bool,
    /// Master seed (attempt i samples from substream i).
    #[arg(long)]
    seed: u64,
    /// Maximum number of attempts.
    #[arg(long, default_value_t = 10)]
    attempts: u64,
    /// Cap on (k+1)-cliques per attempt; default 2 * 20^C(k+1,2).
    #[arg(long)]
    max_cliques: Option<num_bigint::BigUint>,
    /// Minimum layer-union coverage as a fraction of n; default 0.5.
    #[arg(long)]
    min_coverage: Option<f64>,
    /// Omit wall-clock timings so outputs are byte-comparable.
    #[arg(long)]
    canonical: bool,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Exhaustive,
    Adversarial,
}

#[derive(Args)]
struct VerifyArgs {
    /// Digraph file: arc-list text or layered digraph JSON.
    #[arg(long)]
    input: std::path::PathBuf,
    /// Required stability number.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = VerifyMode::Exhaustive)]
    mode: VerifyMode,
    /// Enumeration budget (exhaustive) or trial count (adversarial).
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Seed for the adversarial search (required in that mode).
    #[arg(long)]
    seed: Option<u64>,
    /// Require the deleted paths to be pairwise vertex-disjoint.
    #[arg(long)]
    disjoint: bool,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct PartitionArgs {
    /// Digraph file: arc-list text or layered digraph JSON.
    #[arg(long)]
    input: std::path::PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Layer size / required stability number.
    #[arg(long)]
    k: usize,
    /// Largest candidate vertex count (tiers are n = k, 2k, ...).
    #[arg(long)]
    max_n: usize,
    /// Maximum number of candidates to examine.
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    /// File for the witness digraph, when one is found.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let io = commands::Io {
        quiet: cli.quiet,
        json: cli.json,
    };
    let code = match cli.command {
        Command::Sample(args) => commands::sample(&io, args),
        Command::Estimate(args) => commands::estimate(&io, args),
        Command::Construct(args) => commands::construct(&io, args),
        Command::Verify(args) => commands::verify(&io, args),
        Command::Partition(args) => commands::partition(&io, args),
        Command::Search(args) => commands::search(&io, args),
    };
    std::process::exit(code);
}
