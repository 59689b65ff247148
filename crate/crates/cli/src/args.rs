use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "brjuno", version, about = "Small denominators, Brjuno series and logarithmic capacity estimates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Precision ceiling in bits for certified comparisons.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// ω(z, m), or Ω(λ, m) with --capital.
    Omega(OmegaArgs),
    /// Dyadic Brjuno sums, plateaus, the sandwich and Hölder checks, and the divergent comparison series.
    Brjuno(BrjunoArgs),
    /// Continued fraction expansion and convergents of a real number in (0, 1).
    Cf(CfArgs),
    /// One-dimensional series driven by convergents, and the 1-D potential.
    Series(SeriesArgs),
    /// Potential of the weighted hyperplane-measure family on a ball.
    Potential(PotentialArgs),
    /// Slice integral and its two-sided bounds.
    Lemma22(Lemma22Args),
    /// Comparison of |e^{2πr}e^{2πiα} − 1|² with ‖α‖² + r².
    Equiv(EquivArgs),
    /// Gauge sums of ball covers of a hyperplane tube.
    Hausdorff(HausdorffArgs),
    /// Kernel energy of atoms or of a uniform ball measure.
    Energy(EnergyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    /// Comma-separated coordinates ("3/7+2/5i,1/3") or a fixture name
    /// (golden, golden-rotation, nonbrjuno, nonbrjuno:depth=N, liouville-classical, pi-3).
    #[arg(long)]
    pub point: String,
    /// Dimension; replicates a single coordinate or fixture.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct OmegaArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long)]
    pub m: i64,
    /// Treat the point as λ and compute Ω(λ, m).
    #[arg(long)]
    pub capital: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrjunoMode {
    Sum,
    Plateau,
    Sandwich,
    Holder,
    Divergent,
    PRange,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantArg {
    Omega,
    CapitalOmega,
}

#[derive(Args, Debug, Clone)]
pub struct BrjunoArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_enum, default_value_t = BrjunoMode::Sum)]
    pub mode: BrjunoMode,
    #[arg(long, value_enum, default_value_t = VariantArg::Omega)]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 12)]
    pub depth: u32,
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
    /// Hölder split; defaults to the largest admissible value.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub l: u64,
    #[arg(long, default_value_t = 20)]
    pub kmax: i64,
    /// Growth per level above which a series is labelled growing.
    #[arg(long, default_value_t = 1e-3)]
    pub slope_threshold: f64,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Args, Debug, Clone)]
pub struct CfArgs {
    #[arg(long)]
    pub point: String,
    #[arg(long, default_value_t = 10)]
    pub depth: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Brjuno,
    Qn,
    Potential,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    #[arg(long)]
    pub point: String,
    #[arg(long, value_enum, default_value_t = SeriesKind::Brjuno)]
    pub kind: SeriesKind,
    #[arg(long, default_value_t = 20)]
    pub depth: usize,
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1000)]
    pub qmax: u64,
}

#[derive(Args, Debug, Clone)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Center of the ball V (same syntax as --point, exact coordinates).
    #[arg(long)]
    pub center: String,
    #[arg(long)]
    pub radius: f64,
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
    /// Kernel exponent; defaults to n + ε.
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long, default_value_t = 6)]
    pub kmax: i64,
    #[arg(long, default_value_t = 1)]
    pub resolution: u32,
    /// Require the closed ball to avoid the coordinate axes.
    #[arg(long)]
    pub axes_free: bool,
    /// With --p, also evaluate the lower-bound chain at this index ("1,0").
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<i64>,
    #[arg(long, default_value_t = 0.1)]
    pub eta: f64,
}

#[derive(Args, Debug, Clone)]
pub struct Lemma22Args {
    #[arg(long, alias = "dim")]
    pub n: usize,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub eta: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone)]
pub struct EquivArgs {
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0.01)]
    pub rho: f64,
    /// Evaluate a single ratio at (α, r) as well.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct HausdorffArgs {
    /// Hyperplane index, e.g. "1,1".
    #[arg(long)]
    pub k: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub p: i64,
    #[arg(long)]
    pub center: String,
    #[arg(long)]
    pub radius: f64,
    /// Gauge exponent; defaults to n + 2.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Tube radii 2^{−s} for s in s_min..=s_max.
    #[arg(long, default_value_t = 4)]
    pub s_min: i32,
    #[arg(long, default_value_t = 14)]
    pub s_max: i32,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyMode {
    Atoms,
    Ball,
}

#[derive(Args, Debug, Clone)]
pub struct EnergyArgs {
    #[arg(long, value_enum, default_value_t = EnergyMode::Atoms)]
    pub mode: EnergyMode,
    /// Atoms separated by ';', coordinates by ','.
    #[arg(long)]
    pub points: Option<String>,
    /// Comma-separated weights; uniform when omitted.
    #[arg(long)]
    pub weights: Option<String>,
    #[arg(long, alias = "n")]
    pub dim: usize,
    #[arg(long)]
    pub sigma: f64,
    /// Ball radius (ball mode).
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
}
