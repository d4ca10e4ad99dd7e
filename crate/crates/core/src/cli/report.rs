//! Serializable reports. JSON keys come out sorted because every report is
//! routed through `serde_json::Value`, whose maps are ordered.

use serde::{Deserialize, Serialize};

use crate::cavity::SpectrumPoint;
use crate::protocol::{OutcomeResult, ProtocolResult, Readout};
use crate::qstate::Amplitude;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub detuning: f64,
    pub cold_modulus: f64,
    pub cold_phase: f64,
    pub hot_modulus: f64,
    pub hot_phase: f64,
    pub theta_up: f64,
    pub theta_down: f64,
}

impl SpectrumRow {
    pub fn from_point(p: &SpectrumPoint) -> Self {
        SpectrumRow {
            detuning: p.detuning,
            cold_modulus: p.cold.modulus,
            cold_phase: p.cold.phase,
            hot_modulus: p.hot.modulus,
            hot_phase: p.hot.phase,
            theta_up: p.theta_up,
            theta_down: p.theta_down,
        }
    }

    pub fn values(&self) -> [f64; 7] {
        [
            self.detuning,
            self.cold_modulus,
            self.cold_phase,
            self.hot_modulus,
            self.hot_phase,
            self.theta_up,
            self.theta_down,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaradayReport {
    pub detuning: f64,
    pub phi_0: f64,
    pub phi_h: f64,
    pub hot_modulus: f64,
    pub theta_up: f64,
    pub theta_down: f64,
    /// Probability of observing `+theta_up`.
    pub p_plus: f64,
    /// Probability of observing `theta_down`.
    pub p_minus: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_phase: Option<f64>,
}

impl FaradayReport {
    pub const CSV_HEADER: &'static str =
        "detuning,phi_0,phi_h,hot_modulus,theta_up,theta_down,p_plus,p_minus";

    pub fn values(&self) -> [f64; 8] {
        [
            self.detuning,
            self.phi_0,
            self.phi_h,
            self.hot_modulus,
            self.theta_up,
            self.theta_down,
            self.p_plus,
            self.p_minus,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadoutReport {
    pub p_f: f64,
    /// `I(π/4)`
    pub i_plus: f64,
    /// `I(−π/4)`
    pub i_minus: f64,
}

impl ReadoutReport {
    pub const CSV_HEADER: &'static str = "p_f,i_plus,i_minus";

    pub fn values(&self) -> [f64; 3] {
        [self.p_f, self.i_plus, self.i_minus]
    }
}

impl From<Readout> for ReadoutReport {
    fn from(r: Readout) -> Self {
        ReadoutReport {
            p_f: r.p_f,
            i_plus: r.i_plus,
            i_minus: r.i_minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// 1-based node numbers on one side of the cut.
    pub cut: Vec<usize>,
    pub bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeReport {
    pub basis: String,
    pub probability: f64,
    /// `[re, im]` per spin configuration, node 1 most significant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub post_state: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concurrence: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entropies: Vec<EntropyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fidelity_vs_ideal: Option<f64>,
}

impl OutcomeReport {
    pub fn from_outcome(o: &OutcomeResult) -> Self {
        OutcomeReport {
            basis: o.basis.label().to_string(),
            probability: o.probability,
            post_state: o
                .post_spins
                .as_ref()
                .map(|s| s.amplitudes().iter().map(pair).collect()),
            concurrence: o.concurrence,
            entropies: o
                .entropies
                .iter()
                .map(|e| EntropyReport {
                    cut: e.spins.iter().map(|k| k + 1).collect(),
                    bits: e.bits,
                })
                .collect(),
            fidelity_vs_ideal: o.fidelity_vs_ideal,
        }
    }
}

fn pair(a: &Amplitude) -> [f64; 2] {
    [a.re, a.im]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntangleReport {
    pub mode: String,
    pub basis_pair: String,
    pub nodes: usize,
    /// Probe detuning, physical mode only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detuning: Option<f64>,
    /// Ideal gate phase per node (the reference in physical mode).
    pub phi: Vec<f64>,
    pub survival_probability: f64,
    pub outcomes: Vec<OutcomeReport>,
}

impl EntangleReport {
    pub fn new(mode: &str, detuning: Option<f64>, phi: Vec<f64>, result: &ProtocolResult) -> Self {
        EntangleReport {
            mode: mode.to_string(),
            basis_pair: result.basis_pair.label().to_string(),
            nodes: result.final_state.n_spins(),
            detuning,
            phi,
            survival_probability: result.survival,
            outcomes: result
                .outcomes
                .iter()
                .map(OutcomeReport::from_outcome)
                .collect(),
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_sorted_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
