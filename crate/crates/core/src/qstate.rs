//! Pure-state algebra for one photon polarization qubit and a register of
//! electron spins.
//!
//! Joint states live in a dense vector of `2^(n+1)` amplitudes. The photon
//! occupies the most significant bit (`0 = |R⟩`, `1 = |L⟩`), followed by the
//! spins in node order (`0 = |↑⟩`, `1 = |↓⟩`), so spin 0 is the most
//! significant spin bit. A measured photon leaves behind a [`SpinRegister`]
//! with the same spin ordering.
//!
//! All states are stored normalized. Metrics are computed on the normalized
//! ray, so they are blind to global phase.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex probability amplitude.
pub type Amplitude = Complex64;

/// Largest register the dense representation accepts.
pub const MAX_SPINS: usize = 12;

/// Outcome probabilities at or below this are treated as impossible.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

/// Tolerance on `Σ|amp|² = 1` for states handed in from outside.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Squared-norm floor below which a vector cannot be normalized.
const ZERO_NORM: f64 = 1e-15;

const ZERO: Amplitude = Amplitude::new(0.0, 0.0);
const ONE: Amplitude = Amplitude::new(1.0, 0.0);

fn norm_sqr(amps: &[Amplitude]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

fn all_finite(amps: &[Amplitude]) -> bool {
    amps.iter().all(|a| a.re.is_finite() && a.im.is_finite())
}

fn normalize(mut amps: Vec<Amplitude>) -> Result<Vec<Amplitude>> {
    if !all_finite(&amps) {
        return Err(Error::NonFinite);
    }
    let n2 = norm_sqr(&amps);
    if n2 <= ZERO_NORM {
        return Err(Error::ZeroNormState);
    }
    let scale = 1.0 / n2.sqrt();
    amps.iter_mut().for_each(|a| *a *= scale);
    Ok(amps)
}

fn check_normalized(amps: &[Amplitude]) -> Result<()> {
    if !all_finite(amps) {
        return Err(Error::NonFinite);
    }
    let n2 = norm_sqr(amps);
    if (n2 - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(n2.sqrt()));
    }
    Ok(())
}

/// Number of spins encoded by a register of `len` amplitudes.
fn spins_for_len(len: usize) -> Option<usize> {
    if len >= 2 && len.is_power_of_two() {
        Some(len.trailing_zeros() as usize)
    } else {
        None
    }
}

/// Electron spin qubit `α|↑⟩ + β|↓⟩`, always normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    alpha: Amplitude,
    beta: Amplitude,
}

/// Builds a spin state from unnormalized amplitudes, rescaling to unit norm.
pub fn make_spin_state(alpha: Amplitude, beta: Amplitude) -> Result<SpinState> {
    let v = normalize(vec![alpha, beta])?;
    Ok(SpinState {
        alpha: v[0],
        beta: v[1],
    })
}

impl SpinState {
    pub fn new(alpha: Amplitude, beta: Amplitude) -> Result<Self> {
        make_spin_state(alpha, beta)
    }

    /// Real amplitudes, handy for tests and examples.
    pub fn real(alpha: f64, beta: f64) -> Result<Self> {
        make_spin_state(Amplitude::new(alpha, 0.0), Amplitude::new(beta, 0.0))
    }

    pub fn up() -> Self {
        SpinState {
            alpha: ONE,
            beta: ZERO,
        }
    }

    pub fn down() -> Self {
        SpinState {
            alpha: ZERO,
            beta: ONE,
        }
    }

    /// Equal superposition `(|↑⟩ + |↓⟩)/√2`.
    pub fn plus() -> Self {
        let h = Amplitude::new(FRAC_1_SQRT_2, 0.0);
        SpinState { alpha: h, beta: h }
    }

    pub fn alpha(&self) -> Amplitude {
        self.alpha
    }

    pub fn beta(&self) -> Amplitude {
        self.beta
    }

    /// `|α|²`, the weight on `|↑⟩`.
    pub fn p_up(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    /// `|β|²`, the weight on `|↓⟩`.
    pub fn p_down(&self) -> f64 {
        self.beta.norm_sqr()
    }

    pub fn amplitudes(&self) -> [Amplitude; 2] {
        [self.alpha, self.beta]
    }
}

/// Named photon polarization kets used as measurement outcomes.
///
/// | label     | ket              |
/// |-----------|------------------|
/// | `Deg0`    | `(|R⟩ − |L⟩)/√2`  |
/// | `Deg90`   | `(|R⟩ + |L⟩)/√2`  |
/// | `Plus45`  | `(|R⟩ − i|L⟩)/√2` |
/// | `Minus45` | `(|R⟩ + i|L⟩)/√2` |
///
/// The labels are identifiers only; nothing here depends on how they map
/// onto lab-frame angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhotonBasis {
    Deg0,
    Deg90,
    Plus45,
    Minus45,
}

impl PhotonBasis {
    pub const ALL: [PhotonBasis; 4] = [
        PhotonBasis::Deg0,
        PhotonBasis::Deg90,
        PhotonBasis::Plus45,
        PhotonBasis::Minus45,
    ];

    /// `[⟨R|ket⟩, ⟨L|ket⟩]`.
    pub fn ket(self) -> [Amplitude; 2] {
        let h = FRAC_1_SQRT_2;
        match self {
            PhotonBasis::Deg0 => [Amplitude::new(h, 0.0), Amplitude::new(-h, 0.0)],
            PhotonBasis::Deg90 => [Amplitude::new(h, 0.0), Amplitude::new(h, 0.0)],
            PhotonBasis::Plus45 => [Amplitude::new(h, 0.0), Amplitude::new(0.0, -h)],
            PhotonBasis::Minus45 => [Amplitude::new(h, 0.0), Amplitude::new(0.0, h)],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PhotonBasis::Deg0 => "deg0",
            PhotonBasis::Deg90 => "deg90",
            PhotonBasis::Plus45 => "plus45",
            PhotonBasis::Minus45 => "minus45",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.label() == label)
    }
}

/// One of the two orthogonal measurement settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisPair {
    /// `{deg0, deg90}`
    Linear,
    /// `{plus45, minus45}`
    Diagonal,
}

impl BasisPair {
    pub fn outcomes(self) -> [PhotonBasis; 2] {
        match self {
            BasisPair::Linear => [PhotonBasis::Deg0, PhotonBasis::Deg90],
            BasisPair::Diagonal => [PhotonBasis::Plus45, PhotonBasis::Minus45],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BasisPair::Linear => "linear",
            BasisPair::Diagonal => "diag",
        }
    }
}

/// Linearly polarized photon `(|R⟩ + |L⟩)/√2`, the protocol's probe.
pub fn linear_photon() -> [Amplitude; 2] {
    PhotonBasis::Deg90.ket()
}

/// Photon polarization ⊗ spin register, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    n_spins: usize,
    amplitudes: Vec<Amplitude>,
}

impl JointState {
    /// Wraps an amplitude vector that is already normalized.
    pub fn from_amplitudes(n_spins: usize, amplitudes: Vec<Amplitude>) -> Result<Self> {
        check_spin_count(n_spins)?;
        let expected = 1usize << (n_spins + 1);
        if amplitudes.len() != expected {
            return Err(Error::BadLength {
                got: amplitudes.len(),
                expected,
            });
        }
        check_normalized(&amplitudes)?;
        Ok(JointState {
            n_spins,
            amplitudes,
        })
    }

    /// Like [`JointState::from_amplitudes`] but rescales to unit norm.
    pub fn normalized(n_spins: usize, amplitudes: Vec<Amplitude>) -> Result<Self> {
        check_spin_count(n_spins)?;
        let expected = 1usize << (n_spins + 1);
        if amplitudes.len() != expected {
            return Err(Error::BadLength {
                got: amplitudes.len(),
                expected,
            });
        }
        Ok(JointState {
            n_spins,
            amplitudes: normalize(amplitudes)?,
        })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude> {
        self.amplitudes
    }

    /// Dimension of the spin register, `2^n_spins`.
    pub fn spin_dim(&self) -> usize {
        1 << self.n_spins
    }

    /// Flat index of photon bit `photon` (0 = R) and spin configuration
    /// `spins` (node 0 most significant).
    pub fn index(&self, photon: usize, spins: usize) -> usize {
        photon * self.spin_dim() + spins
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// Multiplies by a scalar, used for global phase checks.
    pub fn scaled(&self, factor: Amplitude) -> JointState {
        JointState {
            n_spins: self.n_spins,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }
}

fn check_spin_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SPINS {
        Err(Error::TooManySpins {
            got: n,
            max: MAX_SPINS,
        })
    } else {
        Ok(())
    }
}

/// Kronecker product `photon ⊗ spin₀ ⊗ spin₁ ⊗ …`.
pub fn tensor_photon_spins(photon: [Amplitude; 2], spins: &[SpinState]) -> Result<JointState> {
    let n = spins.len();
    check_spin_count(n)?;
    let photon = normalize(photon.to_vec())?;

    let mut amps = photon;
    for spin in spins {
        let factor = spin.amplitudes();
        amps = amps
            .iter()
            .flat_map(|a| factor.iter().map(move |f| a * f))
            .collect();
    }
    Ok(JointState {
        n_spins: n,
        amplitudes: amps,
    })
}

/// Normalized state of the spins alone.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinRegister {
    n_spins: usize,
    amplitudes: Vec<Amplitude>,
}

impl SpinRegister {
    /// Wraps normalized amplitudes; the length must be a power of two ≥ 2.
    pub fn from_amplitudes(amplitudes: Vec<Amplitude>) -> Result<Self> {
        let n_spins = register_spins(amplitudes.len())?;
        check_normalized(&amplitudes)?;
        Ok(SpinRegister {
            n_spins,
            amplitudes,
        })
    }

    pub fn normalized(amplitudes: Vec<Amplitude>) -> Result<Self> {
        let n_spins = register_spins(amplitudes.len())?;
        Ok(SpinRegister {
            n_spins,
            amplitudes: normalize(amplitudes)?,
        })
    }

    /// Product of single-spin states.
    pub fn product(spins: &[SpinState]) -> Result<Self> {
        check_spin_count(spins.len())?;
        let mut amps = vec![ONE];
        for spin in spins {
            let factor = spin.amplitudes();
            amps = amps
                .iter()
                .flat_map(|a| factor.iter().map(move |f| a * f))
                .collect();
        }
        Ok(SpinRegister {
            n_spins: spins.len(),
            amplitudes: amps,
        })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }
}

fn register_spins(len: usize) -> Result<usize> {
    match spins_for_len(len) {
        Some(n) if n <= MAX_SPINS => Ok(n),
        Some(n) => Err(Error::TooManySpins {
            got: n,
            max: MAX_SPINS,
        }),
        None => Err(Error::BadLength {
            got: len,
            expected: len.next_power_of_two().max(2),
        }),
    }
}

/// Result of detecting the photon in one basis ket.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub probability: f64,
    pub post_state: SpinRegister,
}

/// Projects the photon onto `basis` and returns the outcome probability
/// together with the renormalized spin state left behind.
///
/// Fails with [`Error::NegligibleProbability`] when the outcome is
/// (numerically) impossible; the error carries the probability.
pub fn project_photon(state: &JointState, basis: PhotonBasis) -> Result<Projection> {
    let (probability, overlap) = photon_overlap(state, basis);
    if probability <= PROBABILITY_FLOOR {
        return Err(Error::NegligibleProbability(probability));
    }
    let scale = 1.0 / probability.sqrt();
    let post = overlap.into_iter().map(|a| a * scale).collect();
    Ok(Projection {
        probability,
        post_state: SpinRegister {
            n_spins: state.n_spins,
            amplitudes: post,
        },
    })
}

/// Outcome probability only; never fails.
pub fn outcome_probability(state: &JointState, basis: PhotonBasis) -> f64 {
    photon_overlap(state, basis).0
}

fn photon_overlap(state: &JointState, basis: PhotonBasis) -> (f64, Vec<Amplitude>) {
    let [b_r, b_l] = basis.ket();
    let dim = state.spin_dim();
    let (r_part, l_part) = state.amplitudes.split_at(dim);
    let overlap: Vec<Amplitude> = r_part
        .iter()
        .zip(l_part)
        .map(|(r, l)| b_r.conj() * r + b_l.conj() * l)
        .collect();
    (norm_sqr(&overlap), overlap)
}

/// Pure-state concurrence `2|ad − bc|` of a two-spin register `(a, b, c, d)`
/// over `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩`.
pub fn concurrence(register: &[Amplitude]) -> Result<f64> {
    if register.len() != 4 {
        return Err(Error::WrongArity {
            got: register.len(),
            expected: 4,
        });
    }
    let n2 = norm_sqr(register);
    if n2 <= ZERO_NORM {
        return Err(Error::ZeroNormState);
    }
    let [a, b, c, d] = [register[0], register[1], register[2], register[3]];
    Ok((2.0 * (a * d - b * c).norm() / n2).clamp(0.0, 1.0))
}

/// Von Neumann entropy (bits) of the spins in `partition` after tracing out
/// the rest. Spin indices are 0-based in node order.
pub fn entanglement_entropy(register: &[Amplitude], partition: &[usize]) -> Result<f64> {
    let n = register_spins(register.len())?;
    let mut in_a = vec![false; n];
    for &k in partition {
        if k >= n {
            return Err(Error::BadPartition(format!(
                "spin {k} out of range for {n} spins"
            )));
        }
        if in_a[k] {
            return Err(Error::BadPartition(format!("spin {k} listed twice")));
        }
        in_a[k] = true;
    }
    let size_a = partition.len();
    if size_a == 0 || size_a == n {
        return Err(Error::BadPartition(format!(
            "{size_a} of {n} spins selected"
        )));
    }
    let n2 = norm_sqr(register);
    if n2 <= ZERO_NORM {
        return Err(Error::ZeroNormState);
    }

    // Schmidt decomposition: reshape into (A, B) and take singular values.
    let a_spins: Vec<usize> = (0..n).filter(|&k| in_a[k]).collect();
    let b_spins: Vec<usize> = (0..n).filter(|&k| !in_a[k]).collect();
    let sub_index = |full: usize, spins: &[usize]| {
        spins
            .iter()
            .fold(0usize, |acc, &k| (acc << 1) | ((full >> (n - 1 - k)) & 1))
    };
    let mut m = DMatrix::<Amplitude>::zeros(1 << a_spins.len(), 1 << b_spins.len());
    for (full, amp) in register.iter().enumerate() {
        m[(sub_index(full, &a_spins), sub_index(full, &b_spins))] = *amp;
    }
    let sv = m.svd(false, false).singular_values;
    let entropy = sv
        .iter()
        .map(|s| s * s / n2)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum::<f64>();
    Ok(entropy.clamp(0.0, size_a.min(n - size_a) as f64))
}

/// `|⟨a|b⟩|²` of the normalized arguments.
pub fn fidelity(a: &[Amplitude], b: &[Amplitude]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    let (na, nb) = (norm_sqr(a), norm_sqr(b));
    if na <= ZERO_NORM || nb <= ZERO_NORM {
        return Err(Error::ZeroNormState);
    }
    let overlap: Amplitude = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    Ok((overlap.norm_sqr() / (na * nb)).clamp(0.0, 1.0))
}
