use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_BUDGET: usize = 100_000;
pub const DEFAULT_PROPS_BUDGET: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "symcalc", version, about = "Reduction, typing and strong-normalization tools for λ̄μμ̃ and symmetric λμ")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CalculusName {
    Lbar,
    Lmu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value = "lbar")]
    pub calculus: CalculusName,
    /// Comma-separated rule tags; defaults depend on the calculus and command.
    #[arg(long, global = true)]
    pub rules: Option<String>,
    /// leftmost, rightmost, random or prefer:<rule>.
    #[arg(long, global = true, default_value = "leftmost")]
    pub strategy: String,
    #[arg(long, global = true, default_value_t = 1000)]
    pub max_steps: usize,
    /// Node budget for reduction graphs.
    #[arg(long, global = true, env = "SYMCALC_BUDGET")]
    pub budget: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Typing context, e.g. `x:A, @a:A` (λ̄μμ̃) or `x:A, @a:A -> bot` (λμ).
    #[arg(long, global = true, default_value = "")]
    pub context: String,
}

/// A term given inline, in a file, or on stdin (`-` or nothing).
#[derive(Debug, Clone, Args)]
pub struct Input {
    #[arg(short = 'e', long = "expr", conflicts_with = "file")]
    pub expr: Option<String>,
    pub file: Option<PathBuf>,
    /// Read the term as JSON instead of concrete syntax.
    #[arg(long)]
    pub json_input: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a term and print it back.
    Parse(Input),
    /// Typecheck a term and print its derivation.
    Check(Input),
    /// Reduce with a strategy, or replay a JSON-lines trace.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Build the reduction graph.
    Graph(Input),
    /// Decide strong normalization within the node budget.
    Sn(Input),
    /// Strong-normalization sweep over an enumerated corpus.
    Sweep {
        /// lbar, restricted or lmu; defaults to the calculus.
        #[arg(long)]
        grammar: Option<String>,
        #[arg(long, default_value_t = 5)]
        max_cxty: usize,
        #[arg(long)]
        typed: bool,
        /// Also write the η histogram as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Bounded counterexample search for the closure properties of SN in λμ.
    Props {
        /// 1, 2 or 3; all three when omitted.
        #[arg(long)]
        property: Option<u8>,
        #[arg(long, default_value_t = 6)]
        max_cxty: usize,
    },
    /// Interactive step-by-step reduction.
    Repl(Input),
}
