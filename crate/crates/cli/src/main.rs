//! `factorlab`: command-line front end.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage error.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "factorlab",
    version,
    about = "Factorization experiments in the monoid S = <a,b | ba^2b = a^2, a^4b = ba^4>"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of a word, e.g. "b a a b".
    Normalize { word: String },
    /// Whether two words are equal in S, cross-checked by both oracles.
    Equal { left: String, right: String },
    /// Unit / atom / nonatom with a witness split.
    Atom { word: String },
    /// Factorization lengths up to a length cap.
    Lengths {
        word: String,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Certify the strictly ascending chain of principal right ideals b^k a^2 S.
    Accp {
        #[arg(long, default_value_t = 20)]
        depth: u64,
    },
    /// Membership in the intersection of all S b^n.
    InAllSbn {
        word: String,
        #[arg(long)]
        probe: Option<u64>,
    },
    /// Arithmetic in the semigroup algebra K[S].
    Alg(AlgArgs),
    /// Growth table dim V^n.
    Growth {
        #[arg(long, value_enum, default_value_t = GrowthModel::S)]
        model: GrowthModel,
        /// Largest n.
        #[arg(long, alias = "n", default_value_t = 10)]
        depth: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Randomized right-length-function checks in a skew polynomial ring.
    SkewCheck {
        #[arg(long, default_value = "weyl")]
        config: String,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
    },
    /// Additivity of the Bernstein filtration length on the Weyl algebra.
    FiltCheck {
        #[arg(long, default_value_t = 500)]
        pairs: usize,
    },
    /// Length function contracts on sample hosts.
    LenfnCheck {
        #[arg(long, value_enum, default_value_t = LenfnHost::S)]
        host: LenfnHost,
        /// Number of random triples (free and poly hosts).
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Depth of the a^2 in (S \ {e})^n witness (s host).
        #[arg(long, default_value_t = 10)]
        depth: u64,
        /// Cap for the max-length candidate (s host).
        #[arg(long, default_value_t = 8)]
        cap: u64,
    },
    /// Peel diag(1, y) off a special-form matrix repeatedly.
    PiDemo {
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Four `;`-separated entries in x, y, y^-1.
        #[arg(long, default_value = "1; x; 1; x*y")]
        matrix: String,
    },
}

#[derive(Debug, Args)]
pub struct AlgArgs {
    #[command(subcommand)]
    pub op: AlgOp,
    /// Coefficient field: `q` for the rationals or a prime `p`.
    #[arg(long, default_value = "q", global = true)]
    pub field: String,
}

#[derive(Debug, Subcommand)]
pub enum AlgOp {
    /// f + g
    Add { f: String, g: String },
    /// f * g
    Mul { f: String, g: String },
    /// Largest a-degree in the support.
    Deg { f: String },
    /// Search for h with f * h = g.
    Divides {
        f: String,
        g: String,
        #[arg(long, default_value_t = 4)]
        cap: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GrowthModel {
    Free,
    FreeCommutative,
    S,
    SWords,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Columns,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LenfnHost {
    Free,
    Poly,
    S,
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Violation,
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("FACTORLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("FACTORLAB_THREADS must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match commands::run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
