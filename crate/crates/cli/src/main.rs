mod commands;
mod expr;
mod target;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wsa_core::field::Field;
use wsa_core::parallel::with_jobs;

/// Weighted surface algebras: presentations, Ext groups and 3-cluster
/// tilting checks, in exact arithmetic.
#[derive(Debug, Parser)]
#[command(name = "wsa", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomised parts (isomorphism tests, sampled pairs).
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Ground field: `q` or `gf:p`.
    #[arg(long, global = true)]
    pub field: Option<Field>,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Value of λ.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Weight `k` of the triangular family.
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// Number of blocks of the n-spherical and mixed families.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Weight `m`.
    #[arg(long, global = true)]
    pub m: Option<u32>,
    /// Weight `m'` of the n-spherical family.
    #[arg(long = "m-prime", global = true)]
    pub m_prime: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the triangulation data and print its classification.
    Validate { target: String },
    /// Build the algebra; print vertex dimensions, Cartan matrix and the
    /// symmetric form check.
    Algebra {
        target: String,
        /// Also print the path basis.
        #[arg(long)]
        dump: bool,
    },
    /// dim Ext^i(left, right).
    Ext {
        target: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        degree: usize,
    },
    /// Build M, its Ext tables and candidates, and decide whether M is
    /// 3-cluster tilting. Exits 1 if the verdict differs from the expected one.
    ClusterCheck {
        target: String,
        /// Expected verdict for spec files (presets carry their own).
        #[arg(long)]
        expect: Option<String>,
        /// Include the audit in the report.
        #[arg(long)]
        audit: bool,
    },
    /// Periodicity, Ext symmetry, Hom vanishing and eAe checks.
    Audit {
        target: String,
        /// Number of sampled pairs for the Ext symmetry check.
        #[arg(long, default_value_t = 24)]
        pairs: usize,
    },
    /// Print the spec file of a preset (or normalise a spec file).
    Export {
        target: String,
        #[arg(long, short)]
        output: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.opts.jobs.max(1);
    match with_jobs(jobs, || commands::run(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
