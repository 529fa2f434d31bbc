//! Field fluctuation kernels.
//!
//! Frequency-domain correlations `c_T[ω] = |ω| n_T[ω]` and their time-domain
//! transforms, which enter the roundtrip series evaluated at delays `τ ≥ 2q`.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Above this value of `ατ` the thermal 2D kernel uses its exponential asymptote.
const ASYMPTOTIC_ARGUMENT: f64 = 20.0;

/// Thermal state of the field: temperature `T` and `α = πT`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralKernel {
    temperature: f64,
    alpha: f64,
}

fn check_time(tau: f64) -> Result<()> {
    if !(tau > 0.0) || !tau.is_finite() {
        return domain(format!("kernel time argument must be positive and finite, got {tau}"));
    }
    Ok(())
}

/// `csch²x` for `x > 0` without overflow.
fn csch2(x: f64) -> f64 {
    let e = (-2.0 * x).exp();
    let d = (-2.0 * x).exp_m1();
    4.0 * e / (d * d)
}

/// `coth x` for `x > 0` without overflow.
fn coth(x: f64) -> f64 {
    1.0 + 2.0 / (2.0 * x).exp_m1()
}

impl SpectralKernel {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature >= 0.0) || !temperature.is_finite() {
            return domain(format!("temperature must be >= 0, got {temperature}"));
        }
        Ok(Self { temperature, alpha: PI * temperature })
    }

    pub fn vacuum() -> Self {
        Self { temperature: 0.0, alpha: 0.0 }
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `c_T(τ) = -(α²/π) csch²(ατ)`; `-1/(πτ²)` at `T = 0`.
    pub fn time(&self, tau: f64) -> Result<f64> {
        check_time(tau)?;
        let a = self.alpha;
        if a == 0.0 {
            return Ok(-1.0 / (PI * tau * tau));
        }
        let x = a * tau;
        if x > ASYMPTOTIC_ARGUMENT {
            return Ok(-4.0 * PI * self.temperature * self.temperature * (-2.0 * x).exp());
        }
        Ok(-(a * a / PI) * csch2(x))
    }

    /// Antiderivative of [`Self::time`] vanishing at infinity:
    /// `K(τ) = (α/π)(coth(ατ) - 1)`, `1/(πτ)` at `T = 0`.
    pub fn time_antiderivative(&self, tau: f64) -> Result<f64> {
        check_time(tau)?;
        let a = self.alpha;
        if a == 0.0 {
            return Ok(1.0 / (PI * tau));
        }
        Ok(2.0 * a / (PI * (2.0 * a * tau).exp_m1()))
    }

    /// `n_T[ω] = coth(|ω|/2T)`.
    pub fn photon_number(&self, omega: f64) -> Result<f64> {
        if !omega.is_finite() {
            return domain("frequency must be finite");
        }
        if self.temperature == 0.0 {
            return Ok(1.0);
        }
        if omega == 0.0 {
            return domain("thermal photon number diverges at zero frequency");
        }
        Ok(coth(omega.abs() / (2.0 * self.temperature)))
    }

    /// `c_T[ω] = |ω| coth(|ω|/2T)`, continuous at `ω = 0` where it equals `2T`.
    pub fn spectrum(&self, omega: f64) -> f64 {
        let w = omega.abs();
        if self.temperature == 0.0 {
            return w;
        }
        let x = w / (2.0 * self.temperature);
        if x < 1e-8 {
            return 2.0 * self.temperature * (1.0 + x * x / 3.0);
        }
        w * coth(x)
    }

    /// 4D large-distance kernel `C(τ) = (1/π²) ∂²_τ [α coth(ατ)/τ]`, both
    /// polarizations included. Equals `6/(π²τ⁴)` at `T = 0`.
    pub fn kernel_4d(&self, tau: f64) -> Result<f64> {
        check_time(tau)?;
        if self.alpha == 0.0 {
            return Ok(kernel_4d_vacuum_unchecked(tau));
        }
        let (u, du, d2u) = self.coth_terms(tau);
        Ok((d2u / tau - 2.0 * du / (tau * tau) + 2.0 * u / tau.powi(3)) / (PI * PI))
    }

    /// `C(τ) - 2T/(πτ³)`: the part of the 4D kernel that decays exponentially
    /// at large `Tτ`.
    pub fn kernel_4d_remainder(&self, tau: f64) -> Result<f64> {
        check_time(tau)?;
        if self.alpha == 0.0 {
            return Ok(kernel_4d_vacuum_unchecked(tau));
        }
        let a = self.alpha;
        let (_, du, d2u) = self.coth_terms(tau);
        // α(coth(ατ) - 1)
        let v = 2.0 * a / (2.0 * a * tau).exp_m1();
        Ok((d2u / tau - 2.0 * du / (tau * tau) + 2.0 * v / tau.powi(3)) / (PI * PI))
    }

    /// `u = α coth(ατ)` and its first two derivatives in `τ`.
    fn coth_terms(&self, tau: f64) -> (f64, f64, f64) {
        let a = self.alpha;
        let x = a * tau;
        let (c, s2) = (coth(x), csch2(x));
        (a * c, -a * a * s2, 2.0 * a.powi(3) * c * s2)
    }
}

fn kernel_4d_vacuum_unchecked(tau: f64) -> f64 {
    6.0 / (PI * PI * tau.powi(4))
}

/// Vacuum 2D correlation at time `τ > 0`: `-1/(πτ²)`.
pub fn vacuum_kernel_time(tau: f64) -> Result<f64> {
    SpectralKernel::vacuum().time(tau)
}

/// Thermal 2D correlation `c_T(τ)`.
pub fn thermal_kernel_time(tau: f64, temperature: f64) -> Result<f64> {
    SpectralKernel::new(temperature)?.time(tau)
}

pub fn photon_number(omega: f64, temperature: f64) -> Result<f64> {
    SpectralKernel::new(temperature)?.photon_number(omega)
}

pub fn thermal_spectrum(omega: f64, temperature: f64) -> Result<f64> {
    Ok(SpectralKernel::new(temperature)?.spectrum(omega))
}

/// `C(τ) = 6/(π²τ⁴)`
pub fn kernel_4d_vacuum(tau: f64) -> Result<f64> {
    check_time(tau)?;
    Ok(kernel_4d_vacuum_unchecked(tau))
}

pub fn kernel_4d_thermal(tau: f64, temperature: f64) -> Result<f64> {
    SpectralKernel::new(temperature)?.kernel_4d(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadratureSpec};
    use approx::assert_relative_eq;

    #[test]
    fn vacuum_kernel_values() {
        assert_relative_eq!(vacuum_kernel_time(1.0).unwrap(), -1.0 / PI);
        assert_relative_eq!(vacuum_kernel_time(2.0).unwrap(), -1.0 / (4.0 * PI));
        assert!(vacuum_kernel_time(0.0).is_err());
        assert!(kernel_4d_vacuum(-1.0).is_err());
        assert_relative_eq!(kernel_4d_vacuum(2.0).unwrap(), 3.0 / (8.0 * PI * PI), max_relative = 1e-15);
        assert_relative_eq!(
            kernel_4d_vacuum(3.0).unwrap(),
            kernel_4d_vacuum(1.0).unwrap() / 81.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn thermal_kernel_values() {
        let t = 1.0 / PI;
        // -(1/π) csch²(1)
        assert_relative_eq!(thermal_kernel_time(1.0, t).unwrap(), -0.2304759848922327, max_relative = 1e-14);
        // low-temperature limit: relative correction is -(ατ)²/3
        let c = thermal_kernel_time(1e-5, t).unwrap();
        assert_relative_eq!(c, vacuum_kernel_time(1e-5).unwrap(), max_relative = 1e-10);
        // asymptotic branch joins the exact form
        let tau = 25.0 / (PI * t);
        let exact = -(1.0 / PI) * csch2(25.0);
        assert_relative_eq!(thermal_kernel_time(tau, t).unwrap(), exact, max_relative = 1e-10);
        assert_eq!(thermal_kernel_time(1.0, 0.0).unwrap(), vacuum_kernel_time(1.0).unwrap());
    }

    #[test]
    fn thermal_kernel_is_negative_and_increasing() {
        let k = SpectralKernel::new(0.7).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 1..400 {
            let v = k.time(0.05 * i as f64).unwrap();
            assert!(v < 0.0 || v == 0.0 && i > 300);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn antiderivative_matches_kernel() {
        for t in [0.0, 0.1, 1.0] {
            let k = SpectralKernel::new(t).unwrap();
            for tau in [0.3, 1.0, 2.5] {
                let h = 1e-5 * tau;
                let fd =
                    (k.time_antiderivative(tau + h).unwrap() - k.time_antiderivative(tau - h).unwrap()) / (2.0 * h);
                assert_relative_eq!(fd, k.time(tau).unwrap(), max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn photon_number_values() {
        assert_eq!(photon_number(3.0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(photon_number(2.0, 1.0).unwrap(), 1.3130352854993312, max_relative = 1e-14);
        assert_relative_eq!(photon_number(1e-4, 1.0).unwrap(), 2.0 / 1e-4, max_relative = 1e-8);
        assert!(photon_number(0.0, 1.0).is_err());
        assert_relative_eq!(thermal_spectrum(0.0, 0.5).unwrap(), 1.0);
        assert_relative_eq!(thermal_spectrum(2.0, 1.0).unwrap(), 2.0 * 1.3130352854993312, max_relative = 1e-14);
    }

    #[test]
    fn kernel_4d_limits() {
        let t = 1.0;
        let a = PI * t;
        // low temperature
        let tau = 1e-3 / a;
        assert_relative_eq!(
            kernel_4d_thermal(tau, t).unwrap() / kernel_4d_vacuum(tau).unwrap(),
            1.0,
            max_relative = 1e-8
        );
        // classical regime
        let tau = 30.0 / a;
        assert_relative_eq!(kernel_4d_thermal(tau, t).unwrap(), 2.0 * t / (PI * tau.powi(3)), max_relative = 1e-10);
        assert_eq!(kernel_4d_thermal(2.0, 0.0).unwrap(), kernel_4d_vacuum(2.0).unwrap());
    }

    #[test]
    fn kernel_4d_matches_finite_difference() {
        let t = 1.0 / PI;
        let f = |tau: f64| coth(tau) / tau / (PI * PI);
        for tau in [0.5, 1.0, 2.0] {
            let h = 1e-4;
            let fd = (f(tau + h) - 2.0 * f(tau) + f(tau - h)) / (h * h);
            assert_relative_eq!(kernel_4d_thermal(tau, t).unwrap(), fd, max_relative = 1e-6);
        }
    }

    #[test]
    fn kernel_4d_remainder_splits_off_classical_part() {
        let k = SpectralKernel::new(0.3).unwrap();
        for tau in [0.2, 1.0, 5.0] {
            let full = k.kernel_4d(tau).unwrap();
            let rem = k.kernel_4d_remainder(tau).unwrap();
            assert_relative_eq!(full, rem + 2.0 * 0.3 / (PI * tau.powi(3)), max_relative = 1e-12);
            assert!(rem > 0.0);
        }
    }

    #[test]
    fn frequency_and_time_domains_agree() {
        // ∫₀^W (dω/π) ω cos(ωτ) e^{-ηω} → -1/(πτ²); W must make e^{-ηW} negligible
        let (eta, tau) = (1e-3, 1.0);
        let period = 2.0 * PI / tau;
        let spec = QuadratureSpec::default();
        let mut sum = 0.0;
        for k in 0..(40.0 / eta / period) as usize {
            let (a, b) = (k as f64 * period, (k + 1) as f64 * period);
            sum += integrate(|x: f64| x * (x * tau).cos() * (-eta * x).exp() / PI, a, b, &spec).value;
        }
        assert_relative_eq!(sum, vacuum_kernel_time(tau).unwrap(), max_relative = 1e-3);
    }
}
