//! Spin-dependent reflection from a charged quantum dot in a micropillar
//! cavity, and a single-photon bus that entangles remote dot spins.
//!
//! * [`cavity`] evaluates hot and cold reflection coefficients, phase shifts
//!   and Faraday rotation angles, sweeps spectra and solves for the detuning
//!   that produces a chosen phase difference.
//! * [`qstate`] is a small dense state-vector toolkit for one photon plus up
//!   to twelve spins, with concurrence, entanglement entropy and fidelity.
//! * [`protocol`] runs the photon through a chain of nodes, measures it and
//!   reports the heralded spin states.
//! * [`cli`] backs the `faraday` binary.
//!
//! ```
//! use faraday_spin::cavity::{faraday_angle, CavityParams, SpinOrientation};
//!
//! let node = CavityParams::reference();
//! let theta = faraday_angle(&node, node.omega_at(-0.5), SpinOrientation::Up);
//! assert!((theta - std::f64::consts::FRAC_PI_4).abs() < 0.02);
//! ```

pub mod cavity;
pub mod cli;
pub mod error;
pub mod protocol;
pub mod qstate;

pub use error::{Error, Result};

// Guide chapters, compiled as doc tests so their snippets track the API.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/reflection.md")]
    mod reflection {}
    #[doc = include_str!("../../../book/src/faraday.md")]
    mod faraday {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/entanglement.md")]
    mod entanglement {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
