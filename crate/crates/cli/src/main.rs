//! `stepseq`: generate, verify, transform and enumerate stepping sequences.
//!
//! Exit codes: 0 success, 1 invalid sequence, 2 usage or parse error,
//! 3 resource limit.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stepseq::generators::{DEFAULT_GREEDY_LIMIT, DEFAULT_MATERIALIZE_LIMIT};
use stepseq::sequence::DEFAULT_VERIFY_LIMIT;

#[derive(Parser, Debug)]
#[command(
    name = "stepseq",
    version,
    about = "Gray codes through nested set chains"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Largest m accepted by verification (allocates 2^m bits).
    #[arg(long, global = true, default_value_t = DEFAULT_VERIFY_LIMIT)]
    pub limit_verify: usize,

    /// Largest m for which a whole sequence is held in memory.
    #[arg(long, global = true, default_value_t = DEFAULT_MATERIALIZE_LIMIT)]
    pub limit_materialize: usize,

    /// Largest m for the greedy and humble methods.
    #[arg(long, global = true, default_value_t = DEFAULT_GREEDY_LIMIT)]
    pub limit_greedy: usize,

    /// Node budget for enumeration; lifts the default width limits.
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Write output to FILE instead of stdout.
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print R_m produced by the chosen method.
    Generate {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
        /// Emit moves as they are generated (for-c and for-j only).
        #[arg(long)]
        stream: bool,
    },
    /// Check stepping sequences, one per line.
    Verify {
        #[arg(long)]
        m: usize,
        /// Read from FILE instead of stdin.
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Enumerate stepping sequences by exhaustive search.
    Enumerate {
        #[arg(long)]
        m: usize,
        /// Only sequences whose adjacent moves differ by one.
        #[arg(long, conflicts_with = "strong")]
        contiguous: bool,
        /// Only contiguous sequences starting with m-1 and ending with 1.
        #[arg(long)]
        strong: bool,
        /// Print the number of sequences only.
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Apply a symmetry to sequences read one per line.
    Transform {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        op: TransformOp,
        /// Generators of the orbit, for `--op orbit`.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [OrbitGen::Reverse, OrbitGen::Complement, OrbitGen::Commutation])]
        ops: Vec<OrbitGen>,
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Print the Gray ordering of m-bit words induced by a stepping sequence
    /// (R_m unless --input is given).
    Graycode {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Binary)]
        format: Format,
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Print the induced Gray code on k-element subsets.
    Ksubsets {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Scan the binary reflected Gray code for the first non-nested family.
    CheckBrgc {
        #[arg(long)]
        m: usize,
    },
    /// Breakdown of the 34 stepping sequences for m = 4.
    CensusM4 {
        /// Also list the members of each class.
        #[arg(long)]
        list: bool,
    },
    /// Tokens per second for the recursive, for-c and for-j generators.
    Bench {
        #[arg(long, default_value_t = 24)]
        m: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Recursive,
    Greedy,
    Humble,
    ForC,
    ForJ,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformOp {
    Reverse,
    Complement,
    Commutations,
    Orbit,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitGen {
    Reverse,
    Complement,
    Commutation,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Binary,
    Decimal,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("stepseq: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
