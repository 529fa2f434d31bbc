use num_complex::Complex64;

use super::table::ReflectivityTable;
use crate::error::{domain, CasimirError, Result};

/// Relative step of the centered finite difference used for `∂_ω r` when no
/// closed form exists.
pub(crate) const DERIVATIVE_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub enum MirrorKind {
    /// `r = -1`, `s = 0` at all frequencies. Only usable as a limit.
    Perfect,
    /// Single-pole causal mirror: `r[ω] = -Ω/(Ω - iω)`, `s[ω] = -iω/(Ω - iω)`.
    Lorentzian { cutoff: f64 },
    /// Imaginary-axis samples of `r[iξ]` only.
    Tabulated(ReflectivityTable),
}

/// Time-domain reflection kernel `r(t)`, `t ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeKernel {
    /// `r(t) = -δ(t)`
    Delta,
    /// `r(t) = -rate · e^{-rate t}`
    Exponential { rate: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MirrorModel {
    kind: MirrorKind,
}

impl MirrorModel {
    pub fn perfect() -> Self {
        Self { kind: MirrorKind::Perfect }
    }

    pub fn lorentzian(cutoff: f64) -> Result<Self> {
        if !(cutoff > 0.0) || !cutoff.is_finite() {
            return domain(format!("lorentzian cutoff must be positive, got {cutoff}"));
        }
        Ok(Self { kind: MirrorKind::Lorentzian { cutoff } })
    }

    pub fn tabulated(table: ReflectivityTable) -> Self {
        Self { kind: MirrorKind::Tabulated(table) }
    }

    pub fn kind(&self) -> &MirrorKind {
        &self.kind
    }

    pub fn is_perfect(&self) -> bool {
        matches!(self.kind, MirrorKind::Perfect)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            MirrorKind::Perfect => "perfect",
            MirrorKind::Lorentzian { .. } => "lorentzian",
            MirrorKind::Tabulated(_) => "tabulated",
        }
    }

    /// Whether real-frequency amplitudes are available.
    pub fn has_real_axis(&self) -> bool {
        !matches!(self.kind, MirrorKind::Tabulated(_))
    }

    fn real_axis_missing(&self) -> CasimirError {
        CasimirError::Capability(format!("{} mirror has no real-frequency amplitudes", self.name()))
    }

    /// Reflection amplitude at a complex frequency in the closed upper half plane.
    pub fn reflection_complex(&self, omega: Complex64) -> Result<Complex64> {
        match &self.kind {
            MirrorKind::Perfect => Ok(Complex64::new(-1.0, 0.0)),
            MirrorKind::Lorentzian { cutoff } => {
                let w = *cutoff;
                Ok(-w / (w - Complex64::i() * omega))
            }
            MirrorKind::Tabulated(_) => Err(self.real_axis_missing()),
        }
    }

    pub fn reflection(&self, omega: f64) -> Result<Complex64> {
        self.reflection_complex(Complex64::new(omega, 0.0))
    }

    pub fn transmission(&self, omega: f64) -> Result<Complex64> {
        match &self.kind {
            MirrorKind::Perfect => Ok(Complex64::new(0.0, 0.0)),
            MirrorKind::Lorentzian { cutoff } => {
                let iw = Complex64::new(0.0, omega);
                Ok(-iw / (*cutoff - iw))
            }
            MirrorKind::Tabulated(_) => Err(self.real_axis_missing()),
        }
    }

    /// `∂_ω r[ω]`: closed form for the lorentzian, centered difference otherwise.
    pub fn reflection_derivative(&self, omega: f64) -> Result<Complex64> {
        match &self.kind {
            MirrorKind::Perfect => Ok(Complex64::new(0.0, 0.0)),
            MirrorKind::Lorentzian { cutoff } => {
                let d = *cutoff - Complex64::new(0.0, omega);
                Ok(-Complex64::i() * *cutoff / (d * d))
            }
            MirrorKind::Tabulated(_) => {
                let h = DERIVATIVE_STEP * omega.abs().max(1.0);
                Ok((self.reflection(omega + h)? - self.reflection(omega - h)?) / (2.0 * h))
            }
        }
    }

    /// Real reflection amplitude `r[iξ]` on the positive imaginary axis.
    pub fn reflection_imag(&self, xi: f64) -> f64 {
        match &self.kind {
            MirrorKind::Perfect => -1.0,
            MirrorKind::Lorentzian { cutoff } => -cutoff / (cutoff + xi),
            MirrorKind::Tabulated(t) => t.eval(xi),
        }
    }

    /// `r[0]`, the zero-frequency reflection amplitude.
    pub fn zero_frequency_reflection(&self) -> f64 {
        self.reflection_imag(0.0)
    }

    pub fn time_kernel(&self) -> Option<TimeKernel> {
        match &self.kind {
            MirrorKind::Perfect => Some(TimeKernel::Delta),
            MirrorKind::Lorentzian { cutoff } => Some(TimeKernel::Exponential { rate: *cutoff }),
            MirrorKind::Tabulated(_) => None,
        }
    }

    /// Value of a regular time kernel at `t ≥ 0`; `None` for the δ kernel or
    /// models without a time-domain form.
    pub fn time_kernel_value(&self, t: f64) -> Option<f64> {
        match self.time_kernel()? {
            TimeKernel::Delta => None,
            TimeKernel::Exponential { rate } => Some(if t < 0.0 { 0.0 } else { -rate * (-rate * t).exp() }),
        }
    }

    /// Characteristic frequency of the model, used to size finite differences.
    pub fn frequency_scale(&self) -> f64 {
        match &self.kind {
            MirrorKind::Lorentzian { cutoff } => *cutoff,
            _ => 1.0,
        }
    }

    pub(crate) fn bind(&self, q: f64) -> Self {
        match &self.kind {
            MirrorKind::Tabulated(t) => Self::tabulated(t.to_absolute(q)),
            _ => self.clone(),
        }
    }
}
