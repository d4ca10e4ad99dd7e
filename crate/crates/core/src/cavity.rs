//! Steady-state reflection from a single-sided micropillar cavity, with and
//! without a strongly coupled charged-exciton transition.
//!
//! Rates and frequencies share one unit, normally `κ = 1`. The two
//! reflection coefficients are
//!
//! ```text
//! hot:  r(ω)  = 1 − κ[i(ω_X − ω) + γ/2] / ([i(ω_X − ω) + γ/2][i(ω_c − ω) + κ/2] + g²)
//! cold: r₀(ω) = [i(ω_c − ω) − κ/2] / [i(ω_c − ω) + κ/2]
//! ```
//!
//! valid for weak excitation (the exciton population is never saturated)
//! and with side leakage ignored. Phases are principal values in `(−π, π]`;
//! in particular the cold phase at `ω = ω_c` is reported as `+π`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::qstate::Amplitude;

/// Physical constants of one quantum-dot/cavity node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    g: f64,
    kappa: f64,
    gamma: f64,
    omega_c: f64,
    omega_x: f64,
}

impl CavityParams {
    pub fn new(g: f64, kappa: f64, gamma: f64, omega_c: f64, omega_x: f64) -> Result<Self> {
        let all = [g, kappa, gamma, omega_c, omega_x];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("all parameters must be finite".into()));
        }
        if kappa <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "kappa must be > 0, got {kappa}"
            )));
        }
        if g < 0.0 {
            return Err(Error::InvalidParams(format!("g must be >= 0, got {g}")));
        }
        if gamma < 0.0 {
            return Err(Error::InvalidParams(format!(
                "gamma must be >= 0, got {gamma}"
            )));
        }
        Ok(CavityParams {
            g,
            kappa,
            gamma,
            omega_c,
            omega_x,
        })
    }

    /// `κ = 1`, `ω_c = ω_X = 0`.
    pub fn resonant(g: f64, gamma: f64) -> Result<Self> {
        Self::new(g, 1.0, gamma, 0.0, 0.0)
    }

    /// Strong-coupling working point `g/κ = 5`, `γ/κ = 0.3`, `ω_X = ω_c = 0`.
    pub fn reference() -> Self {
        CavityParams {
            g: 5.0,
            kappa: 1.0,
            gamma: 0.3,
            omega_c: 0.0,
            omega_x: 0.0,
        }
    }

    /// Same node with a different coupling constant.
    pub fn with_g(self, g: f64) -> Result<Self> {
        Self::new(g, self.kappa, self.gamma, self.omega_c, self.omega_x)
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn omega_x(&self) -> f64 {
        self.omega_x
    }

    /// Probe frequency for a detuning `ω − ω_c` given in units of κ.
    pub fn omega_at(&self, detuning: f64) -> f64 {
        self.omega_c + detuning * self.kappa
    }

    /// Detuning `(ω − ω_c)/κ` of a probe frequency.
    pub fn detuning_of(&self, omega: f64) -> f64 {
        (omega - self.omega_c) / self.kappa
    }
}

/// Principal argument in `(−π, π]`.
pub fn principal_arg(z: Amplitude) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -PI {
        a + TAU
    } else {
        a
    }
}

/// Reduces an angle into `(−π, π]`.
pub fn wrap_pi(x: f64) -> f64 {
    x - TAU * (x / TAU - 0.5).ceil()
}

/// Reduces an angle modulo π into `(−π/2, π/2]`.
pub fn wrap_half_pi(x: f64) -> f64 {
    x - PI * (x / PI - 0.5).ceil()
}

/// Reflection coefficient at one probe frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionSample {
    pub omega: f64,
    pub r: Amplitude,
    pub modulus: f64,
    pub phase: f64,
}

impl ReflectionSample {
    pub fn new(omega: f64, r: Amplitude) -> Self {
        ReflectionSample {
            omega,
            r,
            modulus: r.norm(),
            phase: principal_arg(r),
        }
    }
}

fn hot_coefficient(p: &CavityParams, omega: f64) -> Amplitude {
    let dipole = Amplitude::new(p.gamma / 2.0, p.omega_x - omega);
    let field = Amplitude::new(p.kappa / 2.0, p.omega_c - omega);
    let denom = dipole * field + p.g * p.g;
    if denom == Amplitude::new(0.0, 0.0) {
        // γ = g = 0 probed exactly at ω_X: the dot drops out entirely.
        return cold_coefficient(p, omega);
    }
    Amplitude::new(1.0, 0.0) - dipole * p.kappa / denom
}

fn cold_coefficient(p: &CavityParams, omega: f64) -> Amplitude {
    let detuning = p.omega_c - omega;
    let half = p.kappa / 2.0;
    Amplitude::new(-half, detuning) / Amplitude::new(half, detuning)
}

/// Reflection from the cavity with the exciton transition coupled.
pub fn reflect_hot(params: &CavityParams, omega: f64) -> ReflectionSample {
    ReflectionSample::new(omega, hot_coefficient(params, omega))
}

/// Reflection from the empty cavity. Always unimodular.
pub fn reflect_cold(params: &CavityParams, omega: f64) -> ReflectionSample {
    ReflectionSample::new(omega, cold_coefficient(params, omega))
}

/// Hot and cold reflection phases at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShifts {
    pub phi_h: f64,
    pub phi_0: f64,
}

pub fn phase_shifts(params: &CavityParams, omega: f64) -> PhaseShifts {
    PhaseShifts {
        phi_h: reflect_hot(params, omega).phase,
        phi_0: reflect_cold(params, omega).phase,
    }
}

/// `φ₀ − φ_h` reduced into `(−π, π]`.
pub fn phase_difference(params: &CavityParams, omega: f64) -> f64 {
    let PhaseShifts { phi_h, phi_0 } = phase_shifts(params, omega);
    wrap_pi(phi_0 - phi_h)
}

/// Orientation of the excess electron spin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinOrientation {
    Up,
    Down,
}

/// Faraday rotation of a linearly polarized probe for a definite spin.
///
/// Spin up rotates by `(φ₀ − φ_h)/2` reduced into `(−π/2, π/2]`; spin down
/// by exactly the negative of that.
pub fn faraday_angle(params: &CavityParams, omega: f64, spin: SpinOrientation) -> f64 {
    let PhaseShifts { phi_h, phi_0 } = phase_shifts(params, omega);
    let up = wrap_half_pi((phi_0 - phi_h) / 2.0);
    match spin {
        SpinOrientation::Up => up,
        SpinOrientation::Down => -up,
    }
}

/// One row of a reflection spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    /// `(ω − ω_c)/κ`
    pub detuning: f64,
    pub cold: ReflectionSample,
    pub hot: ReflectionSample,
    pub theta_up: f64,
    pub theta_down: f64,
}

/// Evaluates the spectrum at one detuning (units of κ).
pub fn spectrum_point(params: &CavityParams, detuning: f64) -> SpectrumPoint {
    let omega = params.omega_at(detuning);
    let cold = reflect_cold(params, omega);
    let hot = reflect_hot(params, omega);
    let theta_up = wrap_half_pi((cold.phase - hot.phase) / 2.0);
    SpectrumPoint {
        detuning,
        cold,
        hot,
        theta_up,
        theta_down: -theta_up,
    }
}

/// Uniform grid of `n_points` detunings over `[detuning_min, detuning_max]`
/// (units of κ), both endpoints included.
pub fn sweep_spectrum(
    params: &CavityParams,
    detuning_min: f64,
    detuning_max: f64,
    n_points: usize,
) -> Result<Vec<SpectrumPoint>> {
    if !detuning_min.is_finite() || !detuning_max.is_finite() {
        return Err(Error::BadRange("range endpoints must be finite".into()));
    }
    if detuning_min >= detuning_max {
        return Err(Error::BadRange(format!(
            "min {detuning_min} must be below max {detuning_max}"
        )));
    }
    if n_points < 2 {
        return Err(Error::BadRange("points must be ≥ 2".into()));
    }
    // Weighted form keeps a range symmetric about zero exactly symmetric.
    let last = n_points - 1;
    Ok((0..n_points)
        .map(|i| {
            let d = match i {
                0 => detuning_min,
                i if i == last => detuning_max,
                i => (detuning_min * (last - i) as f64 + detuning_max * i as f64) / last as f64,
            };
            spectrum_point(params, d)
        })
        .collect())
}

/// Removes `2π` jumps between consecutive samples.
pub fn unwrap_phase(phases: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phases.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for &p in phases {
        if let Some(q) = prev {
            let step = p - q;
            offset -= TAU * (step / TAU).round();
        }
        out.push(p + offset);
        prev = Some(p);
    }
    out
}

/// Cells used to trace the phase difference across the search bracket.
const SOLVE_GRID: usize = 512;
/// Residual the returned root must satisfy.
pub const SOLVE_TOLERANCE: f64 = 1e-9;

/// Finds the probe frequency in `[ω_c − κ, ω_c + κ]` where `φ₀ − φ_h` equals
/// `target` (mod 2π).
///
/// The phase difference is traced continuously across the bracket, so the
/// `±π` jump of the principal cold phase at resonance does not create false
/// roots. When several branches cross the target, the root nearest to `ω_c`
/// wins. If the hot and cold phases coincide everywhere (e.g. `g = 0`) and
/// the target is 0, `ω_c` is returned.
pub fn solve_detuning(params: &CavityParams, target: f64) -> Result<f64> {
    let lo = params.omega_c - params.kappa;
    let hi = params.omega_c + params.kappa;
    let no_solution = || Error::NoSolutionInBracket { target, lo, hi };
    if !target.is_finite() || target.abs() > PI {
        return Err(no_solution());
    }

    let omegas: Vec<f64> = (0..=SOLVE_GRID)
        .map(|i| lo + (hi - lo) * i as f64 / SOLVE_GRID as f64)
        .collect();
    let principal: Vec<f64> = omegas
        .iter()
        .map(|&w| phase_difference(params, w))
        .collect();

    // Unwrap outward from the centre so the branch through ω_c is the one
    // whose principal value is kept.
    let mid = SOLVE_GRID / 2;
    let mut traced = vec![0.0; principal.len()];
    traced[mid] = principal[mid];
    for i in mid + 1..=SOLVE_GRID {
        traced[i] = traced[i - 1] + wrap_pi(principal[i] - principal[i - 1]);
    }
    for i in (0..mid).rev() {
        traced[i] = traced[i + 1] + wrap_pi(principal[i] - principal[i + 1]);
    }

    let flat = traced.iter().all(|d| (d - traced[mid]).abs() < 1e-12);
    if flat {
        return if wrap_pi(traced[mid] - target).abs() < SOLVE_TOLERANCE {
            Ok(params.omega_c)
        } else {
            Err(no_solution())
        };
    }

    let (t_min, t_max) = traced
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &d| {
            (a.min(d), b.max(d))
        });
    let mut best: Option<f64> = None;
    let mut shift = target - TAU * ((target - t_min) / TAU).ceil().max(0.0);
    while shift <= t_max + TAU {
        for i in 0..SOLVE_GRID {
            let (f0, f1) = (traced[i] - shift, traced[i + 1] - shift);
            if f0 == 0.0 || f0.signum() != f1.signum() {
                let root = bisect_cell(
                    params,
                    omegas[i],
                    omegas[i + 1],
                    traced[i],
                    principal[i],
                    shift,
                );
                let better =
                    best.is_none_or(|b| (root - params.omega_c).abs() < (b - params.omega_c).abs());
                if better {
                    best = Some(root);
                }
            }
        }
        shift += TAU;
    }

    let root = best.ok_or_else(no_solution)?;
    if wrap_pi(phase_difference(params, root) - target).abs() < SOLVE_TOLERANCE {
        Ok(root)
    } else {
        Err(no_solution())
    }
}

/// Bisection inside one grid cell, continuing the traced phase from the
/// cell's left edge.
fn bisect_cell(
    params: &CavityParams,
    mut lo: f64,
    mut hi: f64,
    traced_lo: f64,
    principal_lo: f64,
    target: f64,
) -> f64 {
    let eval = |w: f64| traced_lo + wrap_pi(phase_difference(params, w) - principal_lo) - target;
    let f_lo = eval(lo);
    if f_lo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = eval(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
