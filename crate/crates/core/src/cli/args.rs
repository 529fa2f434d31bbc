use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const UNITS_NOTE: &str = "\
Units: hbar = c = k_B = 1. Results are not converted. For a separation q0 in
metres, a 2D force value computed at q = 1 multiplies by hbar*c/q0^2, a 4D
pressure by hbar*c/q0^4, an energy by hbar*c/q0 (2D) or hbar*c/q0^3 (4D, per
unit area), and the temperature argument is k_B*T*q0/(hbar*c).
Positive forces attract: F1 = +F acts on mirror 1 along +x, F2 = -F on mirror 2.";

#[derive(Debug, Parser)]
#[command(name = "casimir", version, about = "Casimir forces between partially transmitting mirrors", after_help = UNITS_NOTE)]
pub struct Cli {
    /// Key-value file of default flags (`key = value` per line); command-line flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Force between two mirrors in the 2D scalar model.
    #[command(args_override_self = true)]
    Force2d(PointArgs),
    /// Pressure between two plane mirrors in 4D (both polarizations).
    #[command(args_override_self = true)]
    Force4d(PointArgs),
    /// Casimir energy in 2D (internal energy when T > 0).
    #[command(args_override_self = true)]
    Energy2d(PointArgs),
    /// Casimir energy per unit area in 4D, T = 0.
    #[command(args_override_self = true)]
    Energy4d(PointArgs),
    /// Free energy in 2D.
    #[command(name = "free-energy2d", args_override_self = true)]
    FreeEnergy2d(PointArgs),
    /// Evaluate one command over a range of a parameter.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Check reality, unitarity, bounds and transparency of a mirror model.
    #[command(name = "validate-model", args_override_self = true)]
    ValidateModel(ValidateArgs),
    /// Perfect-mirror force from the Euler-Maclaurin mode sum.
    #[command(args_override_self = true)]
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Perfect,
    Lorentzian,
    Tabulated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    ImagAxis,
    Roundtrip,
    LargeDistance,
    #[value(name = "high-T", alias = "high-t")]
    HighT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "perfect")]
    pub model: ModelArg,
    /// Cutoff of the first lorentzian mirror.
    #[arg(long, default_value_t = 1.0)]
    pub omega1: f64,
    /// Cutoff of the second lorentzian mirror (defaults to --omega1).
    #[arg(long)]
    pub omega2: Option<f64>,
    /// Reflectivity table of the first mirror.
    #[arg(long, value_name = "FILE")]
    pub table: Option<PathBuf>,
    /// Reflectivity table of the second mirror (defaults to --table).
    #[arg(long, value_name = "FILE")]
    pub table2: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Mirror separation.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub q: f64,
    /// Temperature.
    #[arg(long, short = 'T', default_value_t = 0.0, allow_negative_numbers = true)]
    pub temperature: f64,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Loop reflectivity at zero frequency for the large-distance and high-T forms.
    #[arg(long, allow_negative_numbers = true)]
    pub r0: Option<f64>,
    #[arg(long, default_value = "1e-9")]
    pub rel_tol: f64,
    #[arg(long, default_value = "1e-14")]
    pub abs_tol: f64,
    #[arg(long, default_value = "1e-10")]
    pub tail_tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_subdivisions: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_roundtrips: usize,
    #[arg(long, value_enum, default_value = "plain")]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepCommand {
    Force2d,
    Force4d,
    Energy2d,
    Energy4d,
    #[value(name = "free-energy2d")]
    FreeEnergy2d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Q,
    #[value(name = "T", alias = "t")]
    T,
    Omega1,
    Omega2,
    R0,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Q => "q",
            SweepParam::T => "T",
            SweepParam::Omega1 => "omega1",
            SweepParam::Omega2 => "omega2",
            SweepParam::R0 => "r0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub command: SweepCommand,
    #[arg(long, value_enum)]
    pub param: SweepParam,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "linear")]
    pub spacing: Spacing,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub point: PointArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Separation used to scale q-relative tables.
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub grid_min: f64,
    #[arg(long, default_value_t = 1e4)]
    pub grid_max: f64,
    #[arg(long, default_value_t = 100)]
    pub grid_points: usize,
    #[arg(long, value_enum, default_value = "plain")]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// 2 for the scalar model, 4 for the electromagnetic field.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=4))]
    pub dimension: u8,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long, value_enum, default_value = "plain")]
    pub output: OutputFormat,
}
