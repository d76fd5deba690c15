use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod cmd;
mod output;

#[derive(Parser, Debug)]
#[command(name = "cyclicbent", version, about = "Cyclic bent and semi-bent functions and the objects built from them")]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the machine-readable report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Certification mode.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Reduced)]
    mode: Mode,
    /// Lift the size caps on certification.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Full,
    Reduced,
}

/// Selects a cyclic bent function on GF(2^{m-1}) x GF(2). Without `--chain`
/// the Kerdock function is used.
#[derive(Args, Debug, Clone)]
pub struct BentArgs {
    #[arg(long, default_value_t = 4)]
    m: u32,
    /// Divisor chain e_0,...,e_l, e.g. `1,3,9`.
    #[arg(long, value_delimiter = ',')]
    chain: Option<Vec<u32>>,
    /// Field-element indices gamma_0,...,gamma_{l-1} (default 1,0,...,0).
    #[arg(long, value_delimiter = ',')]
    gamma: Option<Vec<u32>>,
    /// Seed for a random eps vector (default: all zeros).
    #[arg(long)]
    eps_seed: Option<u64>,
}

/// Selects a cyclic semi-bent function on GF(2^n): `tr(x^{2^i+1})`, or the
/// restriction `f(x, eps)` of the chosen bent function on `m = n+1` variables.
#[derive(Args, Debug, Clone)]
pub struct SemiArgs {
    #[arg(long, default_value_t = 3)]
    n: u32,
    /// Exponent i of tr(x^{2^i+1}).
    #[arg(long, default_value_t = 1)]
    gold: u32,
    /// Use g(x) = f(x, eps) instead, with f selected by --chain/--gamma on
    /// m = n+1 variables.
    #[arg(long)]
    restrict: Option<u8>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CodebookKind {
    /// Real codebook from the bent family plus the Hadamard basis.
    Real,
    /// Complex codebook from the MUB set.
    Complex,
    /// Codebook from a cyclic semi-bent function.
    Semibent,
    /// Semi-bent codebook from the restrictions f(ax, eps_a).
    Restricted,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqKind {
    Quaternary,
    Binary,
    Semibent,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CodeKind {
    /// C(f) from a cyclic bent function (uses --m).
    Bent,
    /// C(g) from a cyclic semi-bent function (uses --n).
    Semibent,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PathChoice {
    Gcrd,
    Rank,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a cyclic bent (or, with --semibent, semi-bent) function and certify it.
    Construct {
        #[command(flatten)]
        bent: BentArgs,
        #[arg(long)]
        semibent: bool,
        #[command(flatten)]
        semi: SemiArgs,
    },
    /// Certify a function read from a JSON file written by `construct`.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Build a codebook and compare its maximum correlation with the Levenshtein bound.
    Codebook {
        #[arg(long, value_enum, default_value_t = CodebookKind::Real)]
        kind: CodebookKind,
        #[command(flatten)]
        bent: BentArgs,
        #[command(flatten)]
        semi: SemiArgs,
    },
    /// Build the complete MUB set and check every inner product.
    Mub {
        #[command(flatten)]
        bent: BentArgs,
    },
    /// Build a sequence family and its full correlation distribution.
    Seqfam {
        #[arg(long, value_enum, default_value_t = SeqKind::Quaternary)]
        kind: SeqKind,
        /// Compare the distribution with the closed-form table.
        #[arg(long)]
        table_check: bool,
        #[command(flatten)]
        bent: BentArgs,
        #[command(flatten)]
        semi: SemiArgs,
    },
    /// Build C(f) or C(g) with weight and distance distributions.
    Code {
        #[arg(long, value_enum, default_value_t = CodeKind::Bent)]
        kind: CodeKind,
        #[command(flatten)]
        bent: BentArgs,
        #[command(flatten)]
        semi: SemiArgs,
    },
    /// Check whether the codeword supports of weight k form t-designs.
    Design {
        #[arg(long, value_enum, default_value_t = CodeKind::Bent)]
        kind: CodeKind,
        /// Block sizes to check (default: every nontrivial weight).
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[command(flatten)]
        bent: BentArgs,
        #[command(flatten)]
        semi: SemiArgs,
    },
    /// Decide whether tr(x L(x)) is cyclic semi-bent via the skew-polynomial test.
    Charquad {
        /// Odd field degree.
        #[arg(long)]
        m: u32,
        /// Linearized polynomial, e.g. `x^4 + b3*x^2 + 5*x`.
        #[arg(long = "L")]
        l: String,
        #[arg(long, value_enum, default_value_t = PathChoice::Both)]
        path: PathChoice,
        /// Also run the Walsh-based certifier on tr(x L(x)).
        #[arg(long)]
        walsh: bool,
    },
    /// Run a quick battery of end-to-end checks.
    Selftest {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match cmd::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
