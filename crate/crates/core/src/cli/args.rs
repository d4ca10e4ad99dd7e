use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "faraday",
    version,
    about = "Giant Faraday rotation and single-photon spin entanglement in QD-cavity nodes"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. All rates and detunings are in units
/// of κ.
#[derive(Debug, Default, Clone, Args)]
pub struct CommonArgs {
    /// Exciton-cavity coupling g
    #[arg(long, global = true)]
    pub g: Option<f64>,

    /// Dipole decay rate γ
    #[arg(long, global = true)]
    pub gamma: Option<f64>,

    /// Cavity field decay rate κ (the unit of every other rate) [default: 1.0]
    #[arg(long, global = true)]
    pub kappa: Option<f64>,

    /// Exciton detuning ω_X − ω_c
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x_detuning: Option<f64>,

    /// Probe detuning ω − ω_c
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub detuning: Option<f64>,

    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    pub out: Option<OutFormat>,

    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// TOML run configuration; flags override its values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hot/cold reflection spectrum and Faraday angles over a detuning range (CSV)
    Spectrum(SpectrumArgs),
    /// Faraday rotation and outcome probabilities at one detuning
    Faraday(FaradayArgs),
    /// Polarization degree of a spin or spin ensemble
    Readout(ReadoutArgs),
    /// Entangle remote spins with one photon and report the heralded states
    Entangle(EntangleArgs),
}

#[derive(Debug, Default, Clone, Args)]
pub struct SpectrumArgs {
    /// Lowest detuning [default: -10]
    #[arg(long, allow_hyphen_values = true)]
    pub min: Option<f64>,

    /// Highest detuning [default: 10]
    #[arg(long, allow_hyphen_values = true)]
    pub max: Option<f64>,

    /// Number of samples, endpoints included [default: 1001]
    #[arg(long)]
    pub points: Option<i64>,

    /// Report phases unwrapped along the sweep instead of in (−π, π]
    #[arg(long)]
    pub unwrap_phase: bool,
}

#[derive(Debug, Default, Clone, Args)]
pub struct FaradayArgs {
    /// Spin amplitudes `re_a,im_a,re_b,im_b` [default: equal superposition]
    #[arg(long, allow_hyphen_values = true)]
    pub spin: Option<String>,

    /// Solve for the detuning where φ₀ − φ_h equals this phase (e.g. `pi/2`)
    #[arg(long, allow_hyphen_values = true)]
    pub target_phase: Option<String>,
}

#[derive(Debug, Default, Clone, Args)]
pub struct ReadoutArgs {
    /// Pure spin `re_a,im_a,re_b,im_b`
    #[arg(long, allow_hyphen_values = true, conflicts_with = "ensemble")]
    pub spin: Option<String>,

    /// Ensemble member `weight:re_a,im_a,re_b,im_b` (repeatable)
    #[arg(long, allow_hyphen_values = true)]
    pub ensemble: Vec<String>,
}

#[derive(Debug, Default, Clone, Args)]
pub struct EntangleArgs {
    /// Number of nodes on the photon bus [default: 2]
    #[arg(long)]
    pub nodes: Option<i64>,

    /// Spin of node i (1-based) as `i:re_a,im_a,re_b,im_b` (repeatable)
    #[arg(long, allow_hyphen_values = true)]
    pub spin: Vec<String>,

    /// Measurement basis pair
    #[arg(long, value_enum)]
    pub basis: Option<BasisArg>,

    /// Ideal gate phase, one value or one per node (`pi/2` accepted) [default: pi/2]
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Ideal,
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisArg {
    /// {deg0, deg90}
    Linear,
    /// {plus45, minus45}
    Diag,
}
