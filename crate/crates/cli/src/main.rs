//! `latticeforge`: build, analyze and check finite lattices from the shell.
//!
//! Exit codes: 0 when everything holds (or the expected failure occurred),
//! 1 for a mathematical failure, 2 for usage, parse and resource errors.

mod cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "latticeforge",
    version,
    about = "Finite lattice toolkit: permutohedra, Cambrian lattices, identities, embeddings"
)]
struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a lattice and write it as JSON.
    Build(BuildArgs),
    /// Print structural facts about a lattice file.
    Analyze {
        lattice: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check an identity on a lattice.
    Check(CheckArgs),
    /// Write a Hasse diagram in DOT.
    Dot {
        lattice: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an embedding of one lattice into another.
    Embed(EmbedArgs),
    /// Search every A_U(n), n up to a bound, for an embedding of a subdirectly irreducible lattice.
    EmbedScan(EmbedScanArgs),
    /// Write one of the built-in polarized measures as JSON.
    Measure(MeasureArgs),
    /// Report polarity, the V-condition and the dual homomorphism of a measure file.
    MeasureAnalyze {
        measure: PathBuf,
        /// Also write the induced map's images as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive every acceptance claim.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Permutohedron,
    Tamari,
    Cambrian,
    Bmn,
    Double,
    Product,
    Dual,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Ground size for permutohedron/tamari/cambrian; number of b-atoms for bmn.
    #[arg(long)]
    n: Option<usize>,
    /// Number of a-atoms for bmn.
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated U for cambrian, e.g. `3` or `4,5`.
    #[arg(long, value_delimiter = ',')]
    u: Vec<usize>,
    /// Input lattice for double/product/dual.
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Second factor for product.
    #[arg(long)]
    other: Option<PathBuf>,
    /// Interval [a, b] to double, by element name or id.
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    lattice: PathBuf,
    /// veg1, veg2, split-b33, or a path to an identity JSON file.
    #[arg(long, conflicts_with = "gzp", required_unless_present = "gzp")]
    identity: Option<String>,
    /// Gazpacho index, e.g. `2,1`.
    #[arg(long)]
    gzp: Option<String>,
    #[arg(long)]
    parallel: bool,
    /// Node-evaluation budget for the exhaustive scan.
    #[arg(long)]
    budget: Option<u128>,
    /// Exit 0 when the identity fails and 1 when it holds.
    #[arg(long)]
    expect_fail: bool,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    source: PathBuf,
    #[arg(
        long,
        conflicts_with = "target_cambrian",
        required_unless_present = "target_cambrian"
    )]
    target: Option<PathBuf>,
    /// Cambrian target, e.g. `n=6,u=4,5`.
    #[arg(long)]
    target_cambrian: Option<String>,
    /// Comma-separated generator names of the source (default: an irredundant subset of its join-irreducibles).
    #[arg(long, value_delimiter = ',')]
    gens: Vec<String>,
    #[arg(long)]
    budget: Option<u128>,
    /// Exit 0 when no embedding exists and 1 when one is found.
    #[arg(long)]
    expect_fail: bool,
    /// Write the embedding's image vector as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EmbedScanArgs {
    #[arg(long)]
    source: PathBuf,
    #[arg(long)]
    max_n: usize,
    #[arg(long, value_delimiter = ',')]
    gens: Vec<String>,
    /// Exit 0 when no embedding exists and 1 when one is found.
    #[arg(long)]
    expect_fail: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureKind {
    /// Into B(m,1) over the chain [m+2].
    Bm1,
    /// Into B(m,2) over the chain [2m+2].
    Bm2,
    /// `<x,y>_U` into A_U(n).
    Canonical,
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(value_enum)]
    kind: MeasureKind,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    u: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Comma-separated claim ids (default: all).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    #[arg(long)]
    json: bool,
    /// Negative control: corrupt the splitting identity before checking it.
    #[arg(long, hide = true)]
    corrupt_splitting: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Build(a) => cmd::build(a),
        Command::Analyze { lattice, json } => cmd::analyze(&lattice, json),
        Command::Check(a) => cmd::check(a),
        Command::Dot { lattice, out } => cmd::dot(&lattice, out.as_deref()),
        Command::Embed(a) => cmd::embed(a),
        Command::EmbedScan(a) => cmd::embed_scan(a),
        Command::Measure(a) => cmd::measure(a),
        Command::MeasureAnalyze { measure, out } => cmd::measure_analyze(&measure, out.as_deref()),
        Command::Reproduce(a) => cmd::reproduce(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
