use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "tensegrity", version, about = "Exact verification toolkit for an A4-symmetric tensegrity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Realize the framework at one point of the stable branch and report
    /// geometry, equilibrium, intersection parameters and linking numbers.
    Analyze(AnalyzeArgs),
    /// Geometry frames over a range of x plus a CSV of per-frame summaries.
    Sweep(SweepArgs),
    /// Run every hard check and write the master report.
    Verify(CommonArgs),
    /// Sign-persistence certificate of the tracked functions.
    Persistence(CommonArgs),
    /// Torsion subgroup of the elliptic curve and the model isomorphism.
    Torsion(CommonArgs),
    /// Samples of the intersection-point trajectory and their K residuals.
    Trajectory(TrajectoryArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Obj,
    Csv,
    Text,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Obj => "obj",
            Format::Csv => "csv",
            Format::Text => "text",
        }
    }
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Stress parameter: `p/q` or an integer selects the exact pipeline, a
    /// decimal the floating one.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Equilibrium tolerance for the floating pipeline.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
    #[arg(long)]
    pub steps: usize,
    /// Directory receiving the frames and `summary.csv`.
    #[arg(long)]
    pub out: PathBuf,
    /// Frame format: obj or json.
    #[arg(long, value_enum, default_value = "obj")]
    pub format: Format,
    /// Relative cable-length tolerance used for the equal-length column.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    #[arg(long, default_value_t = 500)]
    pub steps: usize,
    /// Largest admissible scaled K residual.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub common: CommonArgs,
}
