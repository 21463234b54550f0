use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const ZEROS_ENV: &str = "ZETA_KKR_ZEROS";

#[derive(Debug, Parser)]
#[command(name = "zeta-kkr", version, about = "Riemann-zero counting and KKR scattering numerics")]
pub struct Cli {
    /// File of `key = value` lines supplying defaults for the command's flags.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write data here instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scan Hardy's Z for zeros on the critical line.
    Zeros(ZerosArgs),
    /// Evaluate the exact or a smooth zero count at one height.
    Count(CountArgs),
    /// Estimate zeros from a counting model and compare with a catalog.
    #[command(alias = "compare")]
    Predict(PredictArgs),
    /// ln(E/2πe) / ln(E/2e) at the given heights.
    Ratio(RatioArgs),
    /// Kronig-Penney bands from the KKR determinant.
    Kp(KpArgs),
    /// Integrate the inverted oscillator and fit its far-field phase.
    Scatter(ScatterArgs),
    /// Roots of the 1x1 KKR determinant, or Krein quantization levels.
    Kkr(KkrArgs),
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long, default_value_t = 0.0)]
    pub t_min: f64,
    #[arg(long, default_value_t = 100.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 100)]
    pub max_refinements: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    Exact,
    RsSmooth,
    Polya,
    Leclair,
    Sierra,
    KkrGamma,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub method: CountMethod,
    #[arg(long = "e", value_name = "E")]
    pub e: f64,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, env = ZEROS_ENV, value_name = "PATH")]
    pub zeros_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Phase ϑ in radians (model default when omitted).
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// kkr-gamma: use the logarithmic asymptote instead of the gamma ratio.
    #[arg(long)]
    pub asymptotic: bool,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub method: String,
    #[arg(long)]
    pub n_max: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, env = ZEROS_ENV, value_name = "PATH")]
    pub zeros_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    /// Heights, comma separated.
    #[arg(long = "e", value_name = "E", value_delimiter = ',', default_values_t = [1e2, 1e3, 1e4, 1e6, 1e9, 1e12])]
    pub e: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct KpArgs {
    /// Dimensionless delta strength P >= 0.
    #[arg(long)]
    pub strength: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 64)]
    pub k_points: usize,
    #[arg(long, default_value_t = 3)]
    pub bands: usize,
    /// Also report the integrated density of states at this energy.
    #[arg(long, value_name = "E")]
    pub dos: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IcKind {
    Even,
    Odd,
    W,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[arg(long)]
    pub e_hat: f64,
    #[arg(long, default_value_t = 40.0)]
    pub xi_max: f64,
    #[arg(long, value_enum, default_value_t = IcKind::W)]
    pub ic: IcKind,
}

#[derive(Debug, Args)]
pub struct KkrArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.5 * std::f64::consts::PI)]
    pub theta: f64,
    /// Determinant roots on (Ê*, e_max].
    #[arg(long, default_value_t = 50.0)]
    pub e_max: f64,
    /// Solve the quantization condition instead of scanning the determinant.
    #[arg(long)]
    pub quantize: bool,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    pub n_min: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub n_max: Option<i64>,
}
