//! Command-line front end: fibration files in, reports out.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::*;
use crate::error::{CliError, EXIT_INPUT, EXIT_INVARIANT, EXIT_OK};
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "lefschetz", version, about = "Invariants of Lefschetz fibrations from their vanishing cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Numerical tolerance (rank cutoff for reducibility, residual bound for theta-check).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Largest allowed state space or commutant dimension.
    #[arg(long, global = true)]
    pub guard_size: Option<usize>,
    /// Theta-sum truncation radius.
    #[arg(long, global = true)]
    pub truncation: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ranks of SU(2) conformal blocks.
    Verlinde {
        file: Option<PathBuf>,
        #[arg(short, long)]
        genus: Option<u32>,
        #[arg(short = 'k', long)]
        level: Option<u32>,
    },
    /// Spin structures and the mod-2 monodromy image.
    Spin { file: PathBuf },
    /// Reducibility of the monodromy composed with the level-k Weil representation.
    Reducibility {
        file: PathBuf,
        #[arg(short = 'k', long)]
        level: Option<u64>,
    },
    /// Degree, splitting and sections of the Verlinde bundle on the pencil.
    Bundle {
        file: Option<PathBuf>,
        #[arg(short, long)]
        genus: Option<u32>,
        #[arg(short = 'k', long)]
        level: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<i64>,
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long)]
        lambda: Option<i64>,
    },
    /// Tensor factorization of theta nulls and Weil operators on random inputs.
    ThetaCheck {
        file: Option<PathBuf>,
        #[arg(short, long)]
        genus: Option<usize>,
        /// Genus of the first block.
        #[arg(long, default_value_t = 1)]
        split: usize,
        #[arg(short = 'k', long)]
        level: Option<u64>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Expected dimension of representations with prescribed local monodromy.
    Homplus {
        file: Option<PathBuf>,
        #[arg(short, long)]
        n: Option<u64>,
        #[arg(short, long)]
        genus: Option<u32>,
        #[arg(short = 'k', long)]
        level: Option<u64>,
        #[arg(short, long)]
        r: Option<u64>,
        #[arg(short, long, value_delimiter = ',')]
        multiplicities: Vec<u64>,
        /// Vanishing cycle whose twist sets the local monodromy, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        cycle: Option<Vec<i64>>,
    },
}

impl Cli {
    pub fn options(&self) -> GlobalOptions {
        GlobalOptions { seed: self.seed, tolerance: self.tolerance, guard_size: self.guard_size, truncation: self.truncation }
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let opts = cli.options();
    match &cli.command {
        Command::Verlinde { file, genus, level } => {
            cmd_verlinde(&VerlindeArgs { file: file.clone(), genus: *genus, level: *level }, &opts)
        }
        Command::Spin { file } => cmd_spin(&SpinArgs { file: file.clone() }, &opts),
        Command::Reducibility { file, level } => cmd_reducibility(&ReducibilityArgs { file: file.clone(), level: *level }, &opts),
        Command::Bundle { file, genus, level, sigma, delta, lambda } => cmd_bundle(
            &BundleArgs { file: file.clone(), genus: *genus, level: *level, sigma: *sigma, delta: *delta, lambda: *lambda },
            &opts,
        ),
        Command::ThetaCheck { file, genus, split, level, trials } => cmd_theta_check(
            &ThetaCheckArgs { file: file.clone(), genus: *genus, split: *split, level: *level, trials: *trials },
            &opts,
        ),
        Command::Homplus { file, n, genus, level, r, multiplicities, cycle } => cmd_homplus(
            &HomPlusArgs {
                file: file.clone(),
                n: *n,
                genus: *genus,
                level: *level,
                r: *r,
                multiplicities: multiplicities.clone(),
                cycle: cycle.clone(),
            },
            &opts,
        ),
    }
}

/// Parses arguments, runs the command and returns what to print on stdout,
/// what to print on stderr, and the exit status.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK { (text, String::new(), code) } else { (String::new(), text, code) };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let out = if cli.json { report.to_json() } else { report.to_text() };
            let code = if report.passed() { EXIT_OK } else { EXIT_INVARIANT };
            (out, String::new(), code)
        }
        Err(e) => (String::new(), format!("error[{}]: {e}\n", e.kind()), e.exit_code()),
    }
}
