mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use a3d_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "a3d", version, about = "Computations in A(3,d) and the O(3)-invariant decomposability oracle")]
pub struct Cli {
    /// Characteristic: 0 (rationals) or one of 3, 5, 7, 11, 13, 2147483647.
    #[arg(long = "char", global = true, default_value_t = 3)]
    pub characteristic: u64,
    /// Number of matrix indices; inferred from the input when omitted, else 1.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Fixed number of oracle sample points (adaptive by default).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Directory for persisted components.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ambient, ideal and quotient dimensions of components.
    Dims {
        /// One multidegree, e.g. `3,3`.
        #[arg(long)]
        mdeg: Option<String>,
        /// Every multidegree of total degree 1..=maxdeg.
        #[arg(long)]
        maxdeg: Option<usize>,
    },
    /// Whether an expression vanishes in A(3,d).
    Iszero {
        #[arg(long)]
        expr: String,
    },
    /// Nilpotency degree of A(3,d).
    Nildeg {
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
    /// Largest degree of an indecomposable invariant, up to the cap.
    Dmax {
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    /// Build σ_{t,r}, or read a σ-expression, and optionally test decomposability.
    Sigma {
        #[arg(long, requires = "r", conflicts_with = "expr")]
        t: Option<usize>,
        #[arg(long, requires = "t")]
        r: Option<usize>,
        /// Monomials substituted for x1, x2, x3, comma separated.
        #[arg(long, requires = "t")]
        args: Option<String>,
        #[arg(long)]
        expr: Option<String>,
        /// Run the decomposability oracle on the result.
        #[arg(long)]
        decide: bool,
    },
    /// The witness x1^2 bar(x1)^2 x1 bar(x1) x2^2 ... xd^2.
    Witness {
        /// Also decide whether it vanishes.
        #[arg(long)]
        iszero: bool,
    },
    /// Run a property suite: word, linalg, a3d, sigma or all.
    Check { suite: String },
    /// The degree-21 nonvanishing claim at d = 7; refuses without --force.
    Hypothesis {
        #[arg(long)]
        force: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(report::EXIT_INTERNAL);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Parse { pos, .. } = &e {
                if let Some(text) = commands::expression_text(&cli) {
                    eprintln!("  {text}\n  {}^", " ".repeat(*pos));
                }
            }
            ExitCode::from(report::exit_code(&e))
        }
    }
}
