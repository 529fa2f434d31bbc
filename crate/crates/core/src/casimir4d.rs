//! Electromagnetic field between plane mirrors.
//!
//! Reflection amplitudes are taken to depend on the normal wavevector only and
//! to be equal for both polarizations: `r_p[iω, iκ] = r_base[iκ]`. The inner
//! frequency integral of the imaginary-axis form is then elementary and every
//! quantity reduces to a single `κ` integral. Pressures are totals over both
//! polarizations unless a function says otherwise.

use std::cell::Cell;
use std::f64::consts::PI;

use num_rational::BigRational;

use crate::casimir2d::{euler_maclaurin_mode_sum, evaluate_mode_sum, thermal_ratio};
use crate::error::{domain, CasimirError, Result};
use crate::quadrature::{integrate_semi_infinite, sum_series, QuadratureSpec};
use crate::results::{EnergyKind, EnergyResult, ForceResult, Method};
use crate::scattering::{CavityConfig, MirrorKind, MirrorModel};
use crate::special::{polylog, PolylogArg};
use crate::spectral::SpectralKernel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    P1,
    P2,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::P1, Polarization::P2];
}

/// A plane mirror whose reflection depends on the normal wavevector only.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarMirrorModel {
    base: MirrorModel,
}

impl PlanarMirrorModel {
    pub fn new(base: MirrorModel) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &MirrorModel {
        &self.base
    }

    /// `r_p[iω, iκ]`; independent of `ω` and of the polarization.
    pub fn reflection_imag(&self, _omega: f64, kappa: f64, _pol: Polarization) -> f64 {
        self.base.reflection_imag(kappa)
    }

    /// `sup_κ |r[iκ]|`.
    pub fn reflection_bound(&self) -> f64 {
        match self.base.kind() {
            MirrorKind::Perfect | MirrorKind::Lorentzian { .. } => 1.0,
            MirrorKind::Tabulated(t) => t.samples().map(|(_, r)| r.abs()).fold(0.0, f64::max),
        }
    }
}

fn check_inputs(r0: f64, q: f64) -> Result<()> {
    if !(r0.abs() <= 1.0) {
        return domain(format!("|r0| must not exceed 1, got {r0}"));
    }
    if !(q > 0.0) || !q.is_finite() {
        return domain(format!("separation must be positive, got {q}"));
    }
    Ok(())
}

fn zero_temperature_only(cfg: &CavityConfig) -> Result<()> {
    if cfg.temperature != 0.0 {
        return domain(format!(
            "the 4D imaginary-axis forms are zero-temperature only; got T = {} (use the large-distance or high-T forms)",
            cfg.temperature
        ));
    }
    Ok(())
}

fn li(x: f64, p: u32) -> Result<f64> {
    polylog(PolylogArg::new(x, p)?, 1e-15)
}

/// One polarization: `F_p = (1/2π²) ∫₀^∞ dκ κ³ r/(e^{2κq} - r)`.
pub fn pressure_imag_axis_polarization(
    cfg: &CavityConfig,
    pol: Polarization,
    spec: &QuadratureSpec,
) -> Result<ForceResult> {
    spec.validate()?;
    zero_temperature_only(cfg)?;
    let q = cfg.q;
    let (m1, m2) = (PlanarMirrorModel::new(cfg.mirror1.clone()), PlanarMirrorModel::new(cfg.mirror2.clone()));
    let f = |u: f64| {
        let kappa = u / (2.0 * q);
        let r = m1.reflection_imag(kappa, kappa, pol) * m2.reflection_imag(kappa, kappa, pol);
        u.powi(3) * r / (u.exp_m1() + (1.0 - r))
    };
    let r = integrate_semi_infinite(f, 1.0, spec)?;
    Ok(ForceResult::from_integral(r, 1.0 / (32.0 * PI * PI * q.powi(4)), Method::ImagAxis))
}

/// Total pressure over both polarizations at `T = 0`.
pub fn pressure_imag_axis(cfg: &CavityConfig, spec: &QuadratureSpec) -> Result<ForceResult> {
    let mut total: Option<ForceResult> = None;
    for pol in Polarization::BOTH {
        let p = pressure_imag_axis_polarization(cfg, pol, spec)?;
        total = Some(match total {
            None => p,
            Some(t) => ForceResult {
                value: t.value + p.value,
                error_estimate: t.error_estimate + p.error_estimate,
                converged: t.converged && p.converged,
                ..t
            },
        });
    }
    Ok(total.expect("two polarizations"))
}

/// `3ζ_{r₀}(4)/(8π²q⁴)`.
pub fn pressure_large_distance(r0: f64, q: f64, spec: &QuadratureSpec) -> Result<ForceResult> {
    spec.validate()?;
    check_inputs(r0, q)?;
    Ok(ForceResult::exact(3.0 * li(r0, 4)? / (8.0 * PI * PI * q.powi(4)), Method::ClosedForm))
}

/// Roundtrip series `F = 2 Σ_ℓ (1/2π²) ∫₀^∞ dκ κ³ r[iκ]^ℓ e^{-2ℓκq}`.
pub fn pressure_roundtrip(cfg: &CavityConfig, spec: &QuadratureSpec) -> Result<ForceResult> {
    spec.validate()?;
    zero_temperature_only(cfg)?;
    if cfg.mirror1.is_perfect() && cfg.mirror2.is_perfect() {
        let mut r = pressure_large_distance(cfg.r0(), cfg.q, spec)?;
        r.method = Method::RoundtripTime;
        return Ok(r);
    }
    let q = cfg.q;
    let bound = PlanarMirrorModel::new(cfg.mirror1.clone()).reflection_bound()
        * PlanarMirrorModel::new(cfg.mirror2.clone()).reflection_bound();
    let inner = QuadratureSpec { rel_tol: (spec.rel_tol * 1e-2).max(1e-13), abs_tol: 1e-300, ..*spec };
    let ok = Cell::new(true);
    let failure = Cell::new(None::<String>);
    let mut res = sum_series(
        |ell| {
            let l = ell as f64;
            let f = |u: f64| u.powi(3) * cfg.loop_reflection_imag(u / (2.0 * q)).powi(ell as i32) * (-l * u).exp();
            match integrate_semi_infinite(f, 1.0 / l, &inner) {
                Ok(r) => {
                    if !r.converged {
                        ok.set(false);
                    }
                    r.value
                }
                Err(e) => {
                    failure.set(Some(e.to_string()));
                    f64::NAN
                }
            }
        },
        bound,
        spec,
    );
    if let Some(msg) = failure.take() {
        return Err(CasimirError::NonConvergence(msg));
    }
    res.converged &= ok.get();
    let scale = 2.0 / (32.0 * PI * PI * q.powi(4));
    res.value *= scale;
    res.error_estimate *= scale;
    Ok(ForceResult::from_series(res, Method::RoundtripTime))
}

/// `F = Σ_ℓ r₀^ℓ C_T(2ℓq)` with the thermal 4D kernel.
///
/// The classical part `2T/(πτ³)` of the kernel is summed in closed form,
/// `T ζ_{r₀}(3)/(4πq³)`; the rest decays like `e^{-4πTℓq}`.
pub fn pressure_thermal_large_distance(
    r0: f64,
    q: f64,
    temperature: f64,
    spec: &QuadratureSpec,
) -> Result<ForceResult> {
    spec.validate()?;
    check_inputs(r0, q)?;
    if temperature == 0.0 {
        return pressure_large_distance(r0, q, spec);
    }
    let k = SpectralKernel::new(temperature)?;
    let classical = pressure_high_temperature(r0, q, temperature)?.value;
    let res = sum_series(
        |ell| r0.powi(ell as i32) * k.kernel_4d_remainder(2.0 * ell as f64 * q).unwrap_or(f64::NAN),
        thermal_ratio(r0, q, temperature),
        spec,
    );
    Ok(ForceResult {
        value: res.value + classical,
        error_estimate: res.error_estimate,
        method: Method::LargeDistance,
        roundtrips_used: Some(res.evaluations),
        converged: res.converged,
    })
}

/// Classical limit `T ζ_{r₀}(3)/(4πq³)`.
pub fn pressure_high_temperature(r0: f64, q: f64, temperature: f64) -> Result<ForceResult> {
    check_inputs(r0, q)?;
    if !(temperature >= 0.0) || !temperature.is_finite() {
        return domain(format!("temperature must be >= 0, got {temperature}"));
    }
    Ok(ForceResult::exact(temperature * li(r0, 3)? / (4.0 * PI * q.powi(3)), Method::HighTemperature))
}

/// Euler–Maclaurin mode sum for one polarization, applied to
/// `f(κ) = κ²(K - κ)/4π²`. The cutoff `K` multiplies only even powers and
/// drops out; the `B₄` term gives `π²/(480q⁴)`.
pub fn mode_sum_oracle_4d_polarization(q: f64) -> Result<ForceResult> {
    check_inputs(1.0, q)?;
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let zero = || (r(0, 1), r(0, 1));
    let poly = vec![zero(), zero(), (r(0, 1), r(1, 4)), (r(-1, 4), r(0, 1))];
    let terms = euler_maclaurin_mode_sum(&poly)?;
    Ok(ForceResult::exact(evaluate_mode_sum(&terms, 2, q), Method::ModeSumOracle))
}

/// Mode-sum pressure summed over both polarizations: `π²/(240q⁴)`.
pub fn mode_sum_oracle_4d(q: f64) -> Result<ForceResult> {
    let mut r = mode_sum_oracle_4d_polarization(q)?;
    r.value *= 2.0;
    Ok(r)
}

/// `U = (1/2π²) ∫₀^∞ dκ κ² ln(1 - r[iκ] e^{-2κq})`, both polarizations.
pub fn energy_4d(cfg: &CavityConfig, spec: &QuadratureSpec) -> Result<EnergyResult> {
    spec.validate()?;
    zero_temperature_only(cfg)?;
    let q = cfg.q;
    let singular = Cell::new(false);
    let f = |u: f64| {
        let x = cfg.loop_reflection_imag(u / (2.0 * q)) * (-u).exp();
        if x >= 1.0 {
            singular.set(true);
            return 0.0;
        }
        u * u * (-x).ln_1p()
    };
    let r = integrate_semi_infinite(f, 1.0, spec)?;
    if singular.get() {
        return Err(CasimirError::Singular(
            "r[i kappa] e^{-2 kappa q} reaches 1; the energy integrand is singular".into(),
        ));
    }
    let scale = 1.0 / (16.0 * PI * PI * q.powi(3));
    Ok(EnergyResult {
        value: r.value * scale,
        error_estimate: r.error_estimate * scale,
        method: Method::ImagAxis,
        kind: EnergyKind::CasimirEnergy,
        roundtrips_used: None,
        converged: r.converged,
    })
}

/// Large-distance energy `-ζ_{r₀}(4)/(8π²q³)`; `-π²/(720q³)` at `r₀ = 1`.
pub fn energy_4d_large_distance(r0: f64, q: f64) -> Result<EnergyResult> {
    check_inputs(r0, q)?;
    Ok(EnergyResult::exact(-li(r0, 4)? / (8.0 * PI * PI * q.powi(3)), Method::ClosedForm, EnergyKind::CasimirEnergy))
}

/// Integrated field energy between perfect mirrors, `U = -qF/3 = -π²/(720q³)`.
/// Holds in the perfect-reflection limit only.
pub fn integrated_field_energy_4d(q: f64) -> Result<EnergyResult> {
    let f = mode_sum_oracle_4d(q)?.value;
    Ok(EnergyResult::exact(-q * f / 3.0, Method::ClosedForm, EnergyKind::IntegratedFieldEnergy))
}
