mod commands;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Dedekind zeta coefficients, partial sums, identity checks and truncated
/// Perron experiments for number fields.
#[derive(Parser, Debug)]
#[command(name = "nfsums", author, version, about)]
pub struct Cli {
    /// Field config (TOML).
    #[arg(long, global = true)]
    pub field: Option<PathBuf>,

    /// Directory for output files and the run manifest; stdout if omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for randomized parameter sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Splitting-table cache directory.
    #[arg(long, global = true, env = "NFSUMS_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Splitting type of every prime up to a bound.
    Split(SplitArgs),
    /// Aggregated Dirichlet coefficients a_1..a_N of one series.
    Coeffs(CoeffsArgs),
    /// Checkpointed partial sums on a geometric grid.
    Sums(SumsArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Fit the growth exponent of a residual.
    Fit(FitArgs),
    /// Truncated Perron formula against exact partial sums.
    Perron(PerronArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct SplitArgs {
    #[arg(long)]
    pub p_max: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CoeffsArgs {
    /// zeta, inv-zeta, liouville, neg-log-deriv or zeta-squared.
    #[arg(long)]
    pub kind: String,
    #[arg(long = "n")]
    pub n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct SumsArgs {
    /// Comma-separated: M_K, L_K, PSI_K, I, H_K, SUM_RECIP, SUM_LOG, SUM_DIV.
    #[arg(long, value_delimiter = ',', default_value = "M_K")]
    pub kinds: Vec<String>,
    #[arg(long)]
    pub x_max: u64,
    #[arg(long, default_value_t = 1)]
    pub x_min: u64,
    #[arg(long, default_value_t = nfsums_core::sums::DEFAULT_GRID_RATIO)]
    pub grid_ratio: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Weber,
    Perron,
    GrhDiagnostic,
    All,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Largest checkpoint for the identity suite.
    #[arg(long, default_value_t = 1000)]
    pub x: u64,
    /// Bound used to estimate Delta (and c when invariants are missing).
    #[arg(long, default_value_t = 1_000_000)]
    pub delta_x: u64,
    /// Upper end of the Weber fit window (lower end 10^3).
    #[arg(long, default_value_t = 1_000_000)]
    pub weber_x_max: u64,
    /// Upper end of the GRH-diagnostic fit window (lower end 10^3).
    #[arg(long, default_value_t = 10_000_000)]
    pub grh_x_max: u64,
    /// Randomized Perron configurations.
    #[arg(long, default_value_t = 20)]
    pub perron_configs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitTarget {
    /// |I(x) - c x|
    Weber,
    /// |sum log N - (c x log x - c x)|
    SumLog,
    /// |M_K(x)|
    Mertens,
    /// |L_K(x)|
    Liouville,
    /// |psi_K(x) - x|
    Psi,
}

#[derive(Args, Debug, Serialize)]
pub struct FitArgs {
    #[arg(long, value_enum)]
    pub target: FitTarget,
    #[arg(long, default_value_t = 1000)]
    pub x_min: u64,
    #[arg(long)]
    pub x_max: u64,
    #[arg(long, default_value_t = nfsums_core::sums::DEFAULT_GRID_RATIO)]
    pub grid_ratio: f64,
    /// Bound used to estimate c when the config has no invariants.
    #[arg(long, default_value_t = 1_000_000)]
    pub residue_x: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    LiuYe,
    Classical,
    Both,
}

#[derive(Args, Debug, Serialize)]
pub struct PerronArgs {
    #[arg(long, default_value = "inv-zeta")]
    pub kind: String,
    /// Cut-off point; half-integers keep coefficients off the boundary.
    #[arg(long, default_value_t = 100.5)]
    pub x: f64,
    /// Line of integration (default 1 + 1/log x).
    #[arg(long)]
    pub b: Option<f64>,
    /// Height (default exp(sqrt(log x))).
    #[arg(long = "T")]
    pub t: Option<f64>,
    /// Neighbourhood parameter (default sqrt(T)).
    #[arg(long = "H")]
    pub h: Option<f64>,
    /// Coefficient cut-off (default ceil(2x)).
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Quadrature step (default min(0.5, 1/log x) / 2).
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, value_enum, default_value_t = Method::LiuYe)]
    pub method: Method,
    /// Run this many seeded random configurations instead of one.
    #[arg(long)]
    pub sweep: Option<usize>,
}

/// Exit codes: 0 success, 1 verification failure, 2 usage or config error.
pub enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
