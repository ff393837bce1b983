//! `albert`: batch construction, verification and census runs.
//!
//! Exit codes: 0 when every check passes, 1 when a counterexample or a
//! census mismatch is found, 2 on a usage error. Reports go to stdout,
//! diagnostics to stderr.

mod output;
mod run;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "albert", version, about = "Intersections of Av in A^2 for three-dimensional division algebras over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Seed for sampled modes.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Worker threads for the sweeps; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Base field, cubic extension and the fibers of the norm.
    FieldInfo {
        #[arg(long)]
        q: u64,
    },
    /// Structure constants of the twisted field.
    Build(AlgebraArgs),
    /// Split form: the twisted field inside a split Albert algebra, or a
    /// split Albert algebra given by `--d`.
    Split {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// `d0,d1,d2` in GF(q).
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
    },
    /// Runs one of the verifiers.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// `d0,d1,d2` in GF(q), for 3.1 and 7.2-analogue (default 1,1,1).
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        /// Sample count when the sweep is too large to be exhaustive.
        #[arg(long, default_value_t = 2000)]
        samples: u64,
        /// For theorem B: test this class instead of the one given by `N(c)`.
        #[arg(long, value_enum)]
        claim_class: Option<ClassClaim>,
    },
    /// Per-vector census of `dim(Av ∩ Av')` over all `v'`.
    Census {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Base vector `[x0,x1,x2],[y0,y1,y2]`.
        #[arg(long, conflicts_with = "scan_all", required_unless_present = "scan_all")]
        v: Option<String>,
        /// Census for one `v` in every GL_2(F) orbit.
        #[arg(long)]
        scan_all: bool,
    },
    /// Counts of `v'` per line of `Av`, for nondegenerate `v`.
    LineCensus {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        v: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// Order of the base field: 3, 4, 5, 7, 8 or 9.
    #[arg(long)]
    pub q: u64,
    /// `c` in K as `[a0,a1,a2]` (coordinates on 1, t, t^2), or an element of GF(q).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "norm_target")]
    pub c: Option<String>,
    /// Picks the least `c` with this norm.
    #[arg(long, allow_hyphen_values = true)]
    pub norm_target: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassClaim {
    Commutative,
    Noncommutative,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "3.1")]
    T31,
    #[value(name = "7.1")]
    T71,
    #[value(name = "7.2-analogue")]
    T72,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(&cli) {
        Ok(out) => {
            print!("{}", out.text(cli.format));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("albert: check failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("albert: {e}");
            ExitCode::from(2)
        }
    }
}
