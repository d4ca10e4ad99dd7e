//! Single-photon bus: a linearly polarized photon reflects off a chain of
//! charged-dot cavities in turn, picking up spin-dependent phases, and is
//! then measured in a polarization basis. Detection heralds an entangled
//! state of the remote spins.
//!
//! In every node the `|L⟩` component meets the hot cavity when the spin is
//! `|↑⟩` and the `|R⟩` component meets it when the spin is `|↓⟩`; the two
//! remaining combinations see the cold cavity.

use std::f64::consts::FRAC_PI_2;

use crate::cavity::{faraday_angle, reflect_cold, reflect_hot, CavityParams, SpinOrientation};
use crate::error::{Error, Result};
use crate::qstate::{
    self, concurrence, entanglement_entropy, fidelity, tensor_photon_spins, Amplitude, BasisPair,
    JointState, PhotonBasis, SpinRegister, SpinState, MAX_SPINS,
};

/// Ideal gate phase used as the reference when none is given.
pub const NOMINAL_PHI: f64 = FRAC_PI_2;

/// Tolerance on ensemble weights summing to one.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

/// One remote node: its cavity and the initial spin of its electron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeConfig {
    pub params: CavityParams,
    pub spin: SpinState,
}

/// How a reflection acts on the photon-spin state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScatterMode {
    /// Phase gate `exp(iφ(|L⟩⟨L|⊗|↑⟩⟨↑| + |R⟩⟨R|⊗|↓⟩⟨↓|))`: unit-modulus,
    /// hot phase taken as 0, global cold phase dropped.
    Ideal { phi: f64 },
    /// Exact hot/cold reflection coefficients at probe frequency `omega`.
    Physical { omega: f64 },
}

/// State after one reflection.
#[derive(Debug, Clone, PartialEq)]
pub struct Scattered {
    pub state: JointState,
    /// Squared norm that survived reflection, before renormalizing.
    /// Always 1 in ideal mode.
    pub survival: f64,
}

/// Reflects the photon off node `node_index`.
pub fn scatter(
    state: &JointState,
    node_index: usize,
    mode: ScatterMode,
    params: &CavityParams,
) -> Result<Scattered> {
    let n = state.n_spins();
    if node_index >= n {
        return Err(Error::BadNodeIndex {
            index: node_index,
            n_spins: n,
        });
    }
    // (hot, cold) multipliers
    let (hot, cold) = match mode {
        ScatterMode::Ideal { phi } => {
            if !phi.is_finite() {
                return Err(Error::NonFinite);
            }
            (Amplitude::from_polar(1.0, phi), Amplitude::new(1.0, 0.0))
        }
        ScatterMode::Physical { omega } => {
            if !omega.is_finite() {
                return Err(Error::NonFinite);
            }
            (reflect_hot(params, omega).r, reflect_cold(params, omega).r)
        }
    };

    let spin_shift = n - 1 - node_index;
    let amplitudes: Vec<Amplitude> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let photon = i >> n;
            let spin = (i >> spin_shift) & 1;
            if photon != spin {
                a * hot
            } else {
                a * cold
            }
        })
        .collect();

    match mode {
        ScatterMode::Ideal { .. } => Ok(Scattered {
            state: JointState::from_amplitudes(n, amplitudes)?,
            survival: 1.0,
        }),
        ScatterMode::Physical { .. } => {
            let survival: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
            Ok(Scattered {
                state: JointState::normalized(n, amplitudes)?,
                survival,
            })
        }
    }
}

/// Entropy of one bipartition of the register.
#[derive(Debug, Clone, PartialEq)]
pub struct CutEntropy {
    /// 0-based spin indices on one side of the cut.
    pub spins: Vec<usize>,
    pub bits: f64,
}

/// One photon-detection outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeResult {
    pub basis: PhotonBasis,
    /// Conditional on the photon surviving every reflection.
    pub probability: f64,
    /// `None` when the outcome cannot occur.
    pub post_spins: Option<SpinRegister>,
    /// Two-spin registers only.
    pub concurrence: Option<f64>,
    /// Every single-spin cut, for registers of two or more spins.
    pub entropies: Vec<CutEntropy>,
    /// Overlap with the post-measurement state of the ideal-gate reference run.
    pub fidelity_vs_ideal: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolResult {
    pub basis_pair: BasisPair,
    /// Product of per-node survival probabilities.
    pub survival: f64,
    /// The photon-spin state just before detection.
    pub final_state: JointState,
    pub outcomes: Vec<OutcomeResult>,
}

impl ProtocolResult {
    pub fn outcome(&self, basis: PhotonBasis) -> Option<&OutcomeResult> {
        self.outcomes.iter().find(|o| o.basis == basis)
    }
}

/// Runs the protocol with the same scatter mode at every node.
///
/// The ideal reference for `fidelity_vs_ideal` uses the node's own phase in
/// ideal mode and [`NOMINAL_PHI`] in physical mode.
pub fn run_chain(
    nodes: &[NodeConfig],
    mode: ScatterMode,
    input_photon: [Amplitude; 2],
    basis_pair: BasisPair,
) -> Result<ProtocolResult> {
    let modes = vec![mode; nodes.len()];
    let reference: Vec<f64> = modes
        .iter()
        .map(|m| match m {
            ScatterMode::Ideal { phi } => *phi,
            ScatterMode::Physical { .. } => NOMINAL_PHI,
        })
        .collect();
    run_chain_with(nodes, &modes, input_photon, basis_pair, &reference)
}

/// Runs the protocol with a scatter mode per node and explicit ideal
/// reference phases.
pub fn run_chain_with(
    nodes: &[NodeConfig],
    modes: &[ScatterMode],
    input_photon: [Amplitude; 2],
    basis_pair: BasisPair,
    reference_phis: &[f64],
) -> Result<ProtocolResult> {
    let n = nodes.len();
    if n == 0 || n > MAX_SPINS {
        return Err(Error::TooManySpins {
            got: n,
            max: MAX_SPINS,
        });
    }
    if modes.len() != n {
        return Err(Error::DimensionMismatch(modes.len(), n));
    }
    if reference_phis.len() != n {
        return Err(Error::DimensionMismatch(reference_phis.len(), n));
    }

    let (final_state, survival) = propagate(nodes, modes, input_photon)?;
    let ideal_modes: Vec<ScatterMode> = reference_phis
        .iter()
        .map(|&phi| ScatterMode::Ideal { phi })
        .collect();
    let (ideal_state, _) = propagate(nodes, &ideal_modes, input_photon)?;

    let outcomes = basis_pair
        .outcomes()
        .into_iter()
        .map(|basis| evaluate_outcome(&final_state, &ideal_state, basis))
        .collect::<Result<Vec<_>>>()?;

    Ok(ProtocolResult {
        basis_pair,
        survival,
        final_state,
        outcomes,
    })
}

fn propagate(
    nodes: &[NodeConfig],
    modes: &[ScatterMode],
    input_photon: [Amplitude; 2],
) -> Result<(JointState, f64)> {
    let spins: Vec<SpinState> = nodes.iter().map(|n| n.spin).collect();
    let mut state = tensor_photon_spins(input_photon, &spins)?;
    let mut survival = 1.0;
    for (k, (node, mode)) in nodes.iter().zip(modes).enumerate() {
        let out = scatter(&state, k, *mode, &node.params)?;
        state = out.state;
        survival *= out.survival;
    }
    Ok((state, survival))
}

fn evaluate_outcome(
    state: &JointState,
    ideal: &JointState,
    basis: PhotonBasis,
) -> Result<OutcomeResult> {
    let projection = match qstate::project_photon(state, basis) {
        Ok(p) => p,
        Err(Error::NegligibleProbability(probability)) => {
            return Ok(OutcomeResult {
                basis,
                probability,
                post_spins: None,
                concurrence: None,
                entropies: Vec::new(),
                fidelity_vs_ideal: None,
            })
        }
        Err(e) => return Err(e),
    };
    let post = projection.post_state;
    let amps = post.amplitudes();
    let n = post.n_spins();

    let concurrence = if n == 2 {
        Some(concurrence(amps)?)
    } else {
        None
    };
    let entropies = if n >= 2 {
        (0..n)
            .map(|k| {
                Ok(CutEntropy {
                    spins: vec![k],
                    bits: entanglement_entropy(amps, &[k])?,
                })
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let fidelity_vs_ideal = match qstate::project_photon(ideal, basis) {
        Ok(reference) => Some(fidelity(reference.post_state.amplitudes(), amps)?),
        Err(Error::NegligibleProbability(_)) => None,
        Err(e) => return Err(e),
    };

    Ok(OutcomeResult {
        basis,
        probability: projection.probability,
        post_spins: Some(post),
        concurrence,
        entropies,
        fidelity_vs_ideal,
    })
}

/// Intensities of the two Faraday-rotated components and their contrast.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Readout {
    /// Polarization degree `(I₊ − I₋)/(I₊ + I₋)`.
    pub p_f: f64,
    /// Intensity rotated by `+θ_F` (spin up weight).
    pub i_plus: f64,
    /// Intensity rotated by `−θ_F` (spin down weight).
    pub i_minus: f64,
}

/// Polarization degree of a classical mixture of spin states.
pub fn spin_readout(ensemble: &[(f64, SpinState)]) -> Result<Readout> {
    if ensemble.is_empty() {
        return Err(Error::BadWeights("ensemble is empty".into()));
    }
    if let Some((w, _)) = ensemble.iter().find(|(w, _)| !w.is_finite() || *w < 0.0) {
        return Err(Error::BadWeights(format!(
            "weight {w} is not a non-negative number"
        )));
    }
    let total: f64 = ensemble.iter().map(|(w, _)| w).sum();
    if (total - 1.0).abs() > WEIGHT_TOLERANCE {
        return Err(Error::BadWeights(format!("weights sum to {total}, not 1")));
    }
    let i_plus: f64 = ensemble.iter().map(|(w, s)| w * s.p_up()).sum();
    let i_minus: f64 = ensemble.iter().map(|(w, s)| w * s.p_down()).sum();
    Ok(Readout {
        p_f: (i_plus - i_minus) / (i_plus + i_minus),
        i_plus,
        i_minus,
    })
}

/// Distribution of the observed Faraday rotation for one probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaradayOutcome {
    /// Rotation for spin up; spin down rotates by `−theta`.
    pub theta: f64,
    pub p_plus: f64,
    pub p_minus: f64,
}

pub fn detect_faraday_outcome(
    spin: &SpinState,
    params: &CavityParams,
    omega: f64,
) -> FaradayOutcome {
    FaradayOutcome {
        theta: faraday_angle(params, omega, SpinOrientation::Up),
        p_plus: spin.p_up(),
        p_minus: spin.p_down(),
    }
}
