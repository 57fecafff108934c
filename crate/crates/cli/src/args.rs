use clap::{Args, Parser, Subcommand};

/// Lattice dimension theory at desk scale.
///
/// Lattices are JSON files `{"ground": n, "elements": [[..], ..]}` or one of
/// `builtin:diamond`, `builtin:powerset<N>`. Formulas are DSL text or one of
/// `delta:N`, `ind:N`, `dg:N`, `conn`, `part`, `cut`.
#[derive(Debug, Parser)]
#[command(name = "dimlab", version)]
pub struct Cli {
    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Evaluate on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite lattices: formulas, Wallman spaces, closures.
    #[command(subcommand)]
    Lat(Lat),
    /// Closed subsets of [0,1] with endpoints in Q(√2).
    #[command(subcommand)]
    Iv(Iv),
    /// Write a seeded corpus of subbase-closure lattices.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct Query {
    pub lattice: String,
    pub formula: String,
    /// Parameter values, `name=value` where value is `top`, `bottom`,
    /// `{}`, `{0,2}`, `0,2` or `#k` (canonical index).
    #[arg(long = "assign", value_name = "K=V")]
    pub assign: Vec<String>,
    /// Exit 1 when the answer is negative.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Subcommand)]
pub enum Lat {
    /// Evaluate a formula.
    Eval(Query),
    /// Find the first witness of a leading existential block.
    Witness(Query),
    /// Ultrafilters and the closed base of the Wallman space.
    Wallman {
        lattice: String,
        /// Emit the element-point incidence graph as DOT.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Emit JSON (the default).
        #[arg(long)]
        json: bool,
    },
    /// Separativity/injectivity and normality/Hausdorff report.
    Duality {
        lattice: String,
        #[arg(long)]
        check: bool,
    },
    /// Witness closure of a seed set for a schema family.
    Skolem {
        lattice: String,
        /// Family file, or `builtin:standard`.
        family: String,
        /// Seed elements, same syntax as `--assign` values.
        #[arg(long = "seed-elems", value_name = "ELEM", num_args = 1..)]
        seed_elems: Vec<String>,
        #[arg(long)]
        budget: usize,
        /// Pick witnesses at random from this seed instead of canonically.
        #[arg(long)]
        random_seed: Option<u64>,
        #[arg(long)]
        check: bool,
    },
    /// δ_n, I_n(1) and Δ_n(1) for n up to K.
    Dims {
        lattice: String,
        #[arg(long = "max-n", default_value_t = 1)]
        max_n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Iv {
    /// Bounded-evidence report on a generated sample.
    Demo {
        /// BaseSpec JSON file, or `builtin:base32`, `builtin:base33`,
        /// `builtin:rational_intervals`.
        base: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a cut between disjoint x and y, or verify `--u`.
    Cut {
        x: String,
        y: String,
        #[arg(long)]
        u: Option<String>,
    },
    /// Verify that u is a partition between x and y.
    Partition { u: String, x: String, y: String },
    /// Swell sets with empty meet to a closed cover with empty meet.
    Swell {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(required = true)]
        sets: Vec<String>,
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(long)]
    pub count: usize,
    #[arg(long = "ground-max")]
    pub ground_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for the lattice files; without it the entries go in the report.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}
