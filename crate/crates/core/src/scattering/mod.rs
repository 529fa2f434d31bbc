//! Mirror scattering models and two-mirror cavity composition.
//!
//! Conventions: the first mirror sits at `q₁ = 0`, the second at `q₂ = q`.
//! Amplitudes follow `r[ω] = ∫ r(t) e^{iωt} dt`, so causal models are analytic
//! in the upper half plane and `r[iξ]` is the (real) Laplace transform of the
//! time kernel.

mod cavity;
mod model;
mod table;
mod validate;

pub use cavity::{
    airy_factor, cavity_matrices, phase_shift, phase_shift_derivative_decomposition, phase_shift_fd, CavityConfig,
    CavityMatrices, PhaseShiftDerivative,
};
pub use model::{MirrorKind, MirrorModel, TimeKernel};
pub use table::{ReflectivityTable, TableUnits};
pub use validate::{validate_model, CheckOutcome, CheckStatus, ValidationOptions, ValidationReport};
