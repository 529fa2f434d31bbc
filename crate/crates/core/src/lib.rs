//! Casimir forces between partially transmitting mirrors.
//!
//! The mirrors are described by causal, unitary scattering amplitudes. Forces,
//! energies and free energies are computed from these amplitudes through
//! several independent representations:
//!
//! * the imaginary-frequency integral, where `r[iξ]` is real and the integrand
//!   is exponentially damped,
//! * the roundtrip series in the time domain, where each term is a
//!   delay-convolved field correlation,
//! * large-distance closed forms in terms of the incomplete zeta function,
//! * Euler–Maclaurin mode sums for perfect mirrors.
//!
//! Natural units are used throughout: `ħ = c = k_B = 1`.

// `!(x > 0.0)` is used on purpose so that NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Reference values are kept with every digit they were computed to.
#![allow(clippy::excessive_precision)]

pub mod casimir2d;
pub mod casimir4d;
pub mod cli;
pub mod error;
pub mod quadrature;
pub mod results;
pub mod scattering;
pub mod special;
pub mod spectral;

pub use error::{CasimirError, Result};
pub use quadrature::{IntegrationResult, QuadratureSpec};
pub use results::{EnergyKind, EnergyResult, ForceResult, Method};
pub use scattering::{CavityConfig, MirrorModel};
