//! `knotgap`: shrinkage types of knots from the command line.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "knotgap", version, about = "Spectral gaps and shrinkage types of knot complements")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Working precision for certified evaluations.
    #[arg(long, global = true, env = "KNOTGAP_PRECISION_BITS", default_value_t = 192)]
    pub precision_bits: u32,
    /// Treat invariant violations (such as Λ(1) ≠ ±1) as errors.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a knot from Λ, from the pair (Δ₁, Δ₂) or from a presentation matrix.
    Classify {
        #[arg(long, conflicts_with_all = ["delta1", "delta2", "matrix"])]
        poly: Option<String>,
        #[arg(long, requires = "delta2", conflicts_with = "matrix")]
        delta1: Option<String>,
        #[arg(long, requires = "delta1", conflicts_with = "matrix")]
        delta2: Option<String>,
        /// Matrix file (JSON), or `-` for standard input.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Classify every knot of a table and compare with the expected types.
    Table {
        /// `builtin` or a CSV file.
        #[arg(long, default_value = "builtin")]
        dataset: String,
    },
    /// Scan the exponents −log σ̂ₙ / log n.
    Sigma {
        #[arg(long, required_unless_present = "matrix", conflicts_with = "matrix")]
        poly: Option<String>,
        /// Scan σₙ of a presentation matrix instead.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        nmax: u64,
        #[arg(long, default_value_t = 2)]
        nmin: u64,
        /// Append probes at n = 2q for convergents p/q of each non-cyclotomic root angle.
        #[arg(long)]
        spikes: bool,
        /// Enclosure half-width floor for singular values (matrix mode).
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
    },
    /// Baker constant for the root angle of an irreducible palindromic polynomial.
    Baker {
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Mahler measure and torsion growth rate.
    Mahler {
        #[arg(long)]
        poly: String,
        /// Also compute the torsion order |Res(1 + z + … + z^{n−1}, Δ)|.
        #[arg(long)]
        torsion_n: Option<u64>,
    },
    /// Smith normal form and Alexander polynomials of a presentation matrix.
    Smith {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Levine's realizability conditions for a chain Λ₁; Λ₂; …
    Levine {
        #[arg(long)]
        chain: String,
    },
    /// Λ and classification of a torus or twist knot.
    Family {
        #[command(subcommand)]
        kind: FamilyKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Gouillon,
    Bw,
}

#[derive(Subcommand, Debug)]
pub enum FamilyKind {
    /// The (p, q) torus knot.
    Torus { p: u32, q: u32 },
    /// The twist knot with m half twists.
    Twist { m: u32 },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            for n in &out.notices {
                eprintln!("notice: {n}");
            }
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = render::emit(&out, cli.format, &mut stdout).and_then(|_| stdout.flush()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(out.exit)
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}
