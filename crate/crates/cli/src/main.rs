//! `adjunct`: command-line front end for sectional-genus and adjoint-bundle
//! computations.
//!
//! Exit status: 0 all checks pass, 1 a check failed, 2 input error,
//! 3 abstention under `--abstain fail`.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use adjunct_core::Error;

#[derive(Parser, Debug)]
#[command(name = "adjunct", version, about = "Exact sectional genera and adjoint section counts on polarized varieties")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// What an abstention (uncertifiable section count or undeclared invariant) does to the exit status.
    #[arg(long, value_enum, default_value_t = AbstainPolicy::Fail, global = true)]
    pub abstain: AbstainPolicy,
    /// Directory searched for `catalog:NAME` as `NAME.json` before the built-in catalog.
    #[arg(long, env = "ADJUNCT_CATALOG_DIR", global = true)]
    pub catalog_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AbstainPolicy {
    Fail,
    Warn,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Euler characteristic of a divisor, optionally with the binomial-basis expansion of chi(tD).
    Chi {
        /// `catalog:NAME` or a variety JSON file.
        #[arg(long)]
        variety: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long)]
        expand: bool,
    },
    /// Sectional geometric genus g_i and arithmetic genus chi_i^H of n-i bundles.
    Genus {
        #[arg(long)]
        variety: String,
        #[arg(short = 'i', long = "index")]
        index: usize,
        /// Bundle, repeated n-i times.
        #[arg(short = 'L', long = "bundle", allow_hyphen_values = true)]
        bundles: Vec<String>,
    },
    /// Run a verification suite over the catalog and seeded random draws.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random draws per variety.
        #[arg(long, default_value_t = 25)]
        draws: usize,
        #[arg(long, default_value_t = 10)]
        m_max: i64,
        /// Restrict to these varieties (default: the standard fourfolds).
        #[arg(long)]
        variety: Vec<String>,
    },
    /// Additive closure, eventual-membership threshold, coin solutions, and
    /// minimal common non-vanishing multiple.
    Semigroup {
        /// Comma-separated generators, e.g. `4,5`.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        threshold: bool,
        /// List closure members up to this bound.
        #[arg(long)]
        bound: Option<u64>,
        /// Solve l = p i + q j, given as `p,q,l`.
        #[arg(long)]
        coin: Option<String>,
        /// `SOURCE=L` pairs for the minimal multiple r with h0(r(K+L)) > 0.
        #[arg(long)]
        entry: Vec<String>,
        #[arg(long, default_value_t = 6)]
        r_max: u64,
    },
    /// Adjunction-theoretic label from declared invariants.
    Classify {
        #[arg(long)]
        variety: String,
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
        /// Fine type declaration, e.g. `7.9`.
        #[arg(long)]
        fine_type: Option<String>,
        /// Opaque second-reduction case label, e.g. `4.7`.
        #[arg(long)]
        case: Option<String>,
        /// Nef value declaration, e.g. `1/2`.
        #[arg(long)]
        tau: Option<String>,
    },
    /// Effective non-vanishing and lower-bound suite for h0(m(K+L)).
    Bounds {
        #[arg(long)]
        variety: String,
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
        #[arg(long, default_value_t = 10)]
        m_max: i64,
    },
    /// Built-in catalog management.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// List catalog names.
    List,
    /// Print a variety description as JSON.
    Show { source: String },
    /// Write a variety description to a file.
    Export {
        source: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run structural and oracle-consistency validation.
    Validate { source: String },
}

/// Result of a command before rendering.
pub enum Status {
    Pass,
    Fail,
    Abstained,
}

fn exit_code(status: Status, policy: AbstainPolicy) -> u8 {
    match (status, policy) {
        (Status::Pass, _) => 0,
        (Status::Fail, _) => 1,
        (Status::Abstained, AbstainPolicy::Fail) => 3,
        (Status::Abstained, AbstainPolicy::Warn) => 0,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((text, status)) => {
            print!("{text}");
            if matches!(status, Status::Abstained) && cli.abstain == AbstainPolicy::Warn {
                eprintln!("warning: some results abstained");
            }
            ExitCode::from(exit_code(status, cli.abstain))
        }
        Err(err) => {
            let abstention = err.downcast_ref::<Error>().is_some_and(Error::is_abstention);
            if abstention {
                let tag = if cli.abstain == AbstainPolicy::Warn { "warning" } else { "abstained" };
                eprintln!("{tag}: {err:#}");
                ExitCode::from(exit_code(Status::Abstained, cli.abstain))
            } else {
                eprintln!("error: {err:#}");
                ExitCode::from(2)
            }
        }
    }
}
