use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Spline-integral-operator ODE solver: solve, reproduce error tables, study
/// convergence order, and map stability regions.
#[derive(Debug, Parser)]
#[command(name = "sio", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a registry problem and print the trajectory as CSV.
    Solve(SolverArgs),
    /// Compare T2, T4 and SIO errors at the first five nodes.
    Table(SolverArgs),
    /// Step-halving study: errors at h, h/2, h/4 and the fitted SIO slope.
    Order(SolverArgs),
    /// Sample amplification factors over a window of the complex plane.
    Stability(StabilityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntegralMode {
    /// Closed-form step integral when the problem has one.
    Auto,
    Quadrature,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML file with defaults for any of the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SolverArgs {
    /// Registry problem: example1, example2 or example3.
    #[arg(long)]
    pub problem: Option<String>,
    /// Spline degree; the method has order m + 1.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub fp_tol: Option<f64>,
    #[arg(long)]
    pub max_fp_iters: Option<usize>,
    /// Gauss-Legendre nodes per step (1 to 8).
    #[arg(long)]
    pub quad_nodes: Option<usize>,
    #[arg(long, value_enum)]
    pub integral: Option<IntegralMode>,
    /// Keep the last iterate when the inner iteration hits its cap.
    #[arg(long)]
    pub continue_on_nonconvergence: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct StabilityArgs {
    /// SIO spline degree; repeat for several regions.
    #[arg(long)]
    pub m: Vec<usize>,
    /// Taylor order; repeat for several regions.
    #[arg(long)]
    pub taylor_p: Vec<usize>,
    /// `re_min,re_max,im_min,im_max`.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// `N` or `NX,NY`.
    #[arg(long)]
    pub res: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub common: CommonArgs,
}
