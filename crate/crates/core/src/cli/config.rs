//! Run configuration: TOML file merged with command-line flags.
//!
//! ```toml
//! g = 5.0
//! gamma = 0.3
//! kappa = 1.0
//! detuning = 0.5
//! mode = "physical"
//!
//! [spectrum]
//! min = -10.0
//! max = 10.0
//! points = 1001
//!
//! [entangle]
//! basis = "diag"
//! phi = ["pi/2", "pi/2", "pi/2"]
//!
//! [[node]]
//! spin = [1.0, 0.0, 1.0, 0.0]
//!
//! [[node]]
//! g = 20.0
//! spin = [0.6, 0.0, 0.0, 0.8]
//! ```
//!
//! Flags always win over file values. A flag such as `--g` applies to every
//! node, overriding per-node entries.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::args::{
    BasisArg, CommonArgs, EntangleArgs, FaradayArgs, Mode, OutFormat, ReadoutArgs, SpectrumArgs,
};
use super::CliError;
use crate::cavity::CavityParams;
use crate::protocol::WEIGHT_TOLERANCE;
use crate::qstate::{Amplitude, BasisPair, SpinState, MAX_SPINS};

pub const DEFAULT_G: f64 = 5.0;
pub const DEFAULT_GAMMA: f64 = 0.3;
pub const DEFAULT_KAPPA: f64 = 1.0;
pub const DEFAULT_MIN: f64 = -10.0;
pub const DEFAULT_MAX: f64 = 10.0;
pub const DEFAULT_POINTS: i64 = 1001;
/// Where φ₀ − φ_h = π/2: readout at ±π/4 rotation.
pub const DEFAULT_FARADAY_DETUNING: f64 = -0.5;
/// Where φ_h − φ₀ ≈ π/2: the entangling working point.
pub const DEFAULT_ENTANGLE_DETUNING: f64 = 0.5;
pub const DEFAULT_NODES: i64 = 2;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub g: Option<f64>,
    pub gamma: Option<f64>,
    pub kappa: Option<f64>,
    pub x_detuning: Option<f64>,
    pub detuning: Option<f64>,
    pub mode: Option<Mode>,
    pub out: Option<OutFormat>,
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub spectrum: SpectrumSection,
    #[serde(default)]
    pub faraday: FaradaySection,
    #[serde(default)]
    pub readout: ReadoutSection,
    #[serde(default)]
    pub entangle: EntangleSection,
    #[serde(default)]
    pub node: Vec<NodeSection>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSection {
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub points: Option<i64>,
    pub unwrap_phase: Option<bool>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaradaySection {
    pub spin: Option<[f64; 4]>,
    pub target_phase: Option<Angle>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadoutSection {
    pub spin: Option<[f64; 4]>,
    #[serde(default)]
    pub ensemble: Vec<EnsembleEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleEntry {
    pub weight: f64,
    pub spin: [f64; 4],
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntangleSection {
    pub nodes: Option<i64>,
    pub basis: Option<BasisArg>,
    pub phi: Option<PhiList>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSection {
    pub g: Option<f64>,
    pub gamma: Option<f64>,
    pub x_detuning: Option<f64>,
    /// Cavity frequency offset ω_c of this node relative to the common reference.
    pub cavity_offset: Option<f64>,
    pub spin: Option<[f64; 4]>,
}

/// An angle given either as a number or as text like `"pi/2"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Angle {
    Number(f64),
    Text(String),
}

impl Angle {
    fn value(&self) -> Result<f64, CliError> {
        match self {
            Angle::Number(x) => Ok(*x),
            Angle::Text(s) => parse_angle(s),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PhiList {
    One(Angle),
    Many(Vec<Angle>),
}

pub fn load_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

/// Parses `1.5`, `pi`, `-pi/2`, `pi/4`, `0.5pi` or `0.5*pi`.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Usage(format!("cannot parse angle '{text}'"));
    let t = text.trim().to_ascii_lowercase();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, t.as_str()),
    };
    let value = if let Some(pos) = body.find("pi") {
        let (coef, rest) = body.split_at(pos);
        let rest = &rest[2..];
        let coef = coef.trim().trim_end_matches('*').trim();
        let coef = if coef.is_empty() {
            1.0
        } else {
            coef.parse::<f64>().map_err(|_| bad())?
        };
        let div = match rest.trim() {
            "" => 1.0,
            r => r
                .strip_prefix('/')
                .ok_or_else(bad)?
                .trim()
                .parse::<f64>()
                .map_err(|_| bad())?,
        };
        coef * PI / div
    } else {
        body.parse::<f64>().map_err(|_| bad())?
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(sign * value)
}

fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("{name} must be finite, got {v}")))
    }
}

fn spin_from_array(a: [f64; 4]) -> Result<SpinState, CliError> {
    if a.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Usage("spin amplitudes must be finite".into()));
    }
    SpinState::new(Amplitude::new(a[0], a[1]), Amplitude::new(a[2], a[3]))
        .map_err(|e| CliError::Usage(format!("bad spin: {e}")))
}

/// Parses `re_a,im_a,re_b,im_b`.
pub fn parse_spin(text: &str) -> Result<SpinState, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "spin '{text}' needs four numbers re_a,im_a,re_b,im_b"
        )));
    }
    let mut v = [0.0; 4];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .parse()
            .map_err(|_| CliError::Usage(format!("bad number '{p}' in spin '{text}'")))?;
    }
    spin_from_array(v)
}

/// Splits `prefix:rest` at the first colon.
fn split_prefixed<'a>(text: &'a str, what: &str) -> Result<(&'a str, &'a str), CliError> {
    text.split_once(':')
        .map(|(a, b)| (a.trim(), b))
        .ok_or_else(|| CliError::Usage(format!("{what} '{text}' is missing the ':' separator")))
}

/// Settings shared by every run after merging file and flags.
#[derive(Debug, Clone)]
pub struct Common {
    pub g: f64,
    pub gamma: f64,
    pub kappa: f64,
    pub x_detuning: f64,
    pub detuning: Option<f64>,
    pub mode: Mode,
    pub out: Option<OutFormat>,
    pub output: Option<PathBuf>,
    /// Values given as flags, which beat per-node file entries.
    pub g_flag: Option<f64>,
    pub gamma_flag: Option<f64>,
    pub x_detuning_flag: Option<f64>,
}

impl Common {
    pub fn params(&self) -> Result<CavityParams, CliError> {
        cavity_params(self.g, self.gamma, self.kappa, 0.0, self.x_detuning)
    }
}

fn cavity_params(
    g: f64,
    gamma: f64,
    kappa: f64,
    cavity_offset: f64,
    x_detuning: f64,
) -> Result<CavityParams, CliError> {
    let omega_c = cavity_offset * kappa;
    CavityParams::new(
        g * kappa,
        kappa,
        gamma * kappa,
        omega_c,
        omega_c + x_detuning * kappa,
    )
    .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn resolve_common(flags: &CommonArgs, file: &FileConfig) -> Result<Common, CliError> {
    let common = Common {
        g: finite("g", flags.g.or(file.g).unwrap_or(DEFAULT_G))?,
        gamma: finite("gamma", flags.gamma.or(file.gamma).unwrap_or(DEFAULT_GAMMA))?,
        kappa: finite("kappa", flags.kappa.or(file.kappa).unwrap_or(DEFAULT_KAPPA))?,
        x_detuning: finite(
            "x-detuning",
            flags.x_detuning.or(file.x_detuning).unwrap_or(0.0),
        )?,
        detuning: flags
            .detuning
            .or(file.detuning)
            .map(|d| finite("detuning", d))
            .transpose()?,
        mode: flags.mode.or(file.mode).unwrap_or(Mode::Ideal),
        out: flags.out.or(file.out),
        output: flags.output.clone().or_else(|| file.output.clone()),
        g_flag: flags.g,
        gamma_flag: flags.gamma,
        x_detuning_flag: flags.x_detuning,
    };
    common.params()?;
    Ok(common)
}

#[derive(Debug, Clone)]
pub struct SpectrumRun {
    pub params: CavityParams,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub unwrap_phase: bool,
}

pub fn resolve_spectrum(
    common: &Common,
    flags: &SpectrumArgs,
    file: &FileConfig,
) -> Result<SpectrumRun, CliError> {
    let min = finite(
        "min",
        flags.min.or(file.spectrum.min).unwrap_or(DEFAULT_MIN),
    )?;
    let max = finite(
        "max",
        flags.max.or(file.spectrum.max).unwrap_or(DEFAULT_MAX),
    )?;
    let points = flags
        .points
        .or(file.spectrum.points)
        .unwrap_or(DEFAULT_POINTS);
    if points < 2 {
        return Err(CliError::Usage("points must be ≥ 2".into()));
    }
    if min >= max {
        return Err(CliError::Usage(format!(
            "min ({min}) must be below max ({max})"
        )));
    }
    Ok(SpectrumRun {
        params: common.params()?,
        min,
        max,
        points: points as usize,
        unwrap_phase: flags.unwrap_phase || file.spectrum.unwrap_phase.unwrap_or(false),
    })
}

#[derive(Debug, Clone)]
pub struct FaradayRun {
    pub params: CavityParams,
    pub detuning: f64,
    pub target_phase: Option<f64>,
    pub spin: SpinState,
}

pub fn resolve_faraday(
    common: &Common,
    flags: &FaradayArgs,
    file: &FileConfig,
) -> Result<FaradayRun, CliError> {
    let spin = match (&flags.spin, file.faraday.spin) {
        (Some(text), _) => parse_spin(text.strip_prefix("1:").unwrap_or(text))?,
        (None, Some(a)) => spin_from_array(a)?,
        (None, None) => SpinState::plus(),
    };
    let target_phase = match (&flags.target_phase, &file.faraday.target_phase) {
        (Some(text), _) => Some(parse_angle(text)?),
        (None, Some(a)) => Some(a.value()?),
        (None, None) => None,
    };
    if let Some(t) = target_phase {
        if t.abs() > PI {
            return Err(CliError::Usage(format!(
                "target phase {t} outside [-pi, pi]"
            )));
        }
    }
    Ok(FaradayRun {
        params: common.params()?,
        detuning: common.detuning.unwrap_or(DEFAULT_FARADAY_DETUNING),
        target_phase,
        spin,
    })
}

#[derive(Debug, Clone)]
pub struct ReadoutRun {
    pub ensemble: Vec<(f64, SpinState)>,
}

pub fn resolve_readout(flags: &ReadoutArgs, file: &FileConfig) -> Result<ReadoutRun, CliError> {
    let ensemble = if let Some(text) = &flags.spin {
        vec![(1.0, parse_spin(text)?)]
    } else if !flags.ensemble.is_empty() {
        flags
            .ensemble
            .iter()
            .map(|m| {
                let (w, spin) = split_prefixed(m, "ensemble member")?;
                let w: f64 = w
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad weight '{w}' in '{m}'")))?;
                Ok((w, parse_spin(spin)?))
            })
            .collect::<Result<Vec<_>, CliError>>()?
    } else if let Some(a) = file.readout.spin {
        vec![(1.0, spin_from_array(a)?)]
    } else if !file.readout.ensemble.is_empty() {
        file.readout
            .ensemble
            .iter()
            .map(|e| Ok((e.weight, spin_from_array(e.spin)?)))
            .collect::<Result<Vec<_>, CliError>>()?
    } else {
        return Err(CliError::Usage(
            "readout needs --spin or at least one --ensemble member".into(),
        ));
    };

    if ensemble.iter().any(|(w, _)| !w.is_finite() || *w < 0.0) {
        return Err(CliError::Usage(
            "ensemble weights must be non-negative".into(),
        ));
    }
    let total: f64 = ensemble.iter().map(|(w, _)| w).sum();
    if (total - 1.0).abs() > WEIGHT_TOLERANCE {
        return Err(CliError::Usage(format!(
            "ensemble weights sum to {total}, expected 1"
        )));
    }
    Ok(ReadoutRun { ensemble })
}

#[derive(Debug, Clone)]
pub struct EntangleRun {
    pub nodes: Vec<crate::protocol::NodeConfig>,
    pub mode: Mode,
    pub detuning: f64,
    /// Ideal-gate phase per node; the reference in physical mode.
    pub phis: Vec<f64>,
    pub basis: BasisPair,
}

pub fn resolve_entangle(
    common: &Common,
    flags: &EntangleArgs,
    file: &FileConfig,
) -> Result<EntangleRun, CliError> {
    let n = flags
        .nodes
        .or(file.entangle.nodes)
        .unwrap_or(if file.node.is_empty() {
            DEFAULT_NODES
        } else {
            file.node.len() as i64
        });
    if n < 2 || n > MAX_SPINS as i64 {
        return Err(CliError::Usage(format!(
            "entangle needs between 2 and {MAX_SPINS} nodes, got {n}"
        )));
    }
    let n = n as usize;
    if file.node.len() > n {
        return Err(CliError::Usage(format!(
            "config lists {} nodes but only {n} requested",
            file.node.len()
        )));
    }

    let blank = NodeSection::default();
    let mut nodes = Vec::with_capacity(n);
    for k in 0..n {
        let section = file.node.get(k).unwrap_or(&blank);
        let g = finite("g", common.g_flag.or(section.g).unwrap_or(common.g))?;
        let gamma = finite(
            "gamma",
            common.gamma_flag.or(section.gamma).unwrap_or(common.gamma),
        )?;
        let x_detuning = finite(
            "x_detuning",
            common
                .x_detuning_flag
                .or(section.x_detuning)
                .unwrap_or(common.x_detuning),
        )?;
        let offset = finite("cavity_offset", section.cavity_offset.unwrap_or(0.0))?;
        let params = cavity_params(g, gamma, common.kappa, offset, x_detuning)?;
        let spin = match section.spin {
            Some(a) => spin_from_array(a)?,
            None => SpinState::plus(),
        };
        nodes.push(crate::protocol::NodeConfig { params, spin });
    }
    for text in &flags.spin {
        let (idx, spin) = split_prefixed(text, "spin")?;
        let idx: usize = idx
            .parse()
            .map_err(|_| CliError::Usage(format!("bad node index '{idx}' in spin '{text}'")))?;
        if idx == 0 || idx > n {
            return Err(CliError::Usage(format!(
                "spin node index {idx} outside 1..={n}"
            )));
        }
        nodes[idx - 1].spin = parse_spin(spin)?;
    }

    let phis = match (&flags.phi, &file.entangle.phi) {
        (Some(text), _) => text
            .split(',')
            .map(parse_angle)
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(PhiList::One(a))) => vec![a.value()?],
        (None, Some(PhiList::Many(list))) => list
            .iter()
            .map(Angle::value)
            .collect::<Result<Vec<_>, _>>()?,
        (None, None) => vec![crate::protocol::NOMINAL_PHI],
    };
    let phis = match phis.len() {
        1 => vec![phis[0]; n],
        len if len == n => phis,
        len => {
            return Err(CliError::Usage(format!(
                "phi needs one value or {n} values, got {len}"
            )))
        }
    };

    let basis = match flags
        .basis
        .or(file.entangle.basis)
        .unwrap_or(BasisArg::Linear)
    {
        BasisArg::Linear => BasisPair::Linear,
        BasisArg::Diag => BasisPair::Diagonal,
    };

    Ok(EntangleRun {
        nodes,
        mode: common.mode,
        detuning: common.detuning.unwrap_or(DEFAULT_ENTANGLE_DETUNING),
        phis,
        basis,
    })
}
