use std::fmt;

use serde::{Deserialize, Serialize};

use crate::quadrature::{IntegrationResult, QuadratureSpec};

/// Representation used to obtain a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ImagAxis,
    RoundtripTime,
    LargeDistance,
    HighTemperature,
    ModeSumOracle,
    ClosedForm,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ImagAxis => "imag-axis",
            Method::RoundtripTime => "roundtrip-time",
            Method::LargeDistance => "large-distance",
            Method::HighTemperature => "high-T",
            Method::ModeSumOracle => "mode-sum-oracle",
            Method::ClosedForm => "closed-form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A force (2D) or pressure (4D). Positive values are attractive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    pub value: f64,
    pub error_estimate: f64,
    pub method: Method,
    pub roundtrips_used: Option<usize>,
    pub converged: bool,
}

impl ForceResult {
    pub(crate) fn exact(value: f64, method: Method) -> Self {
        Self { value, error_estimate: 0.0, method, roundtrips_used: None, converged: true }
    }

    pub(crate) fn from_integral(r: IntegrationResult, scale: f64, method: Method) -> Self {
        Self {
            value: r.value * scale,
            error_estimate: r.error_estimate * scale.abs(),
            method,
            roundtrips_used: None,
            converged: r.converged,
        }
    }

    pub(crate) fn from_series(r: IntegrationResult, method: Method) -> Self {
        Self {
            value: r.value,
            error_estimate: r.error_estimate,
            method,
            roundtrips_used: Some(r.evaluations),
            converged: r.converged,
        }
    }

    /// Whether the error estimate meets the spec's tolerance.
    pub fn within(&self, spec: &QuadratureSpec) -> bool {
        self.error_estimate <= spec.abs_tol.max(spec.rel_tol * self.value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyKind {
    CasimirEnergy,
    FreeEnergy,
    IntegratedFieldEnergy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    pub value: f64,
    pub error_estimate: f64,
    pub method: Method,
    pub kind: EnergyKind,
    pub roundtrips_used: Option<usize>,
    pub converged: bool,
}

impl EnergyResult {
    pub(crate) fn exact(value: f64, method: Method, kind: EnergyKind) -> Self {
        Self { value, error_estimate: 0.0, method, kind, roundtrips_used: None, converged: true }
    }
}
