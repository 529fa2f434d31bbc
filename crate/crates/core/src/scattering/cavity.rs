use num_complex::Complex64;

use super::model::{MirrorModel, DERIVATIVE_STEP};
use crate::error::{domain, CasimirError, Result};

/// Below this modulus the cavity denominator `1 - r e^{2iωq}` is treated as singular.
const SINGULAR_DENOMINATOR: f64 = 1e-14;
/// Loop moduli below this use the roundtrip series for the phase shift.
const PHASE_SERIES_LIMIT: f64 = 0.999;

/// Two mirrors at separation `q` and temperature `T` (`k_B = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct CavityConfig {
    pub mirror1: MirrorModel,
    pub mirror2: MirrorModel,
    pub q: f64,
    pub temperature: f64,
}

impl CavityConfig {
    pub fn new(mirror1: MirrorModel, mirror2: MirrorModel, q: f64, temperature: f64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return domain(format!("separation must be positive, got {q}"));
        }
        if !(temperature >= 0.0) || !temperature.is_finite() {
            return domain(format!("temperature must be >= 0, got {temperature}"));
        }
        let mirror1 = mirror1.bind(q);
        let mirror2 = mirror2.bind(q);
        // |r₁ r₂| ≤ 1 holds whenever each factor is bounded; check the product at zero frequency
        let r0 = mirror1.zero_frequency_reflection() * mirror2.zero_frequency_reflection();
        if r0.abs() > 1.0 {
            return domain(format!("loop reflectivity |r0| = {} exceeds 1", r0.abs()));
        }
        Ok(Self { mirror1, mirror2, q, temperature })
    }

    /// Same mirrors with a different separation.
    pub fn with_separation(&self, q: f64) -> Result<Self> {
        Self::new(self.mirror1.clone(), self.mirror2.clone(), q, self.temperature)
    }

    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        Self::new(self.mirror1.clone(), self.mirror2.clone(), self.q, temperature)
    }

    /// `r[ω] = r₁[ω] r₂[ω]`
    pub fn loop_reflection(&self, omega: f64) -> Result<Complex64> {
        Ok(self.mirror1.reflection(omega)? * self.mirror2.reflection(omega)?)
    }

    pub fn loop_reflection_derivative(&self, omega: f64) -> Result<Complex64> {
        let (r1, r2) = (self.mirror1.reflection(omega)?, self.mirror2.reflection(omega)?);
        let (d1, d2) = (self.mirror1.reflection_derivative(omega)?, self.mirror2.reflection_derivative(omega)?);
        Ok(d1 * r2 + r1 * d2)
    }

    /// `r[iξ] = r₁[iξ] r₂[iξ]`, real.
    pub fn loop_reflection_imag(&self, xi: f64) -> f64 {
        self.mirror1.reflection_imag(xi) * self.mirror2.reflection_imag(xi)
    }

    /// `r₀ = r₁[0] r₂[0]`
    pub fn r0(&self) -> f64 {
        self.loop_reflection_imag(0.0)
    }

    /// `e^{2iωq}`
    fn roundtrip_phase(&self, omega: f64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * omega * self.q)
    }
}

/// Global scattering matrix `S`, resonance matrix `R` and denominator `d`
/// at one real frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityMatrices {
    pub s: [[Complex64; 2]; 2],
    pub r: [[Complex64; 2]; 2],
    pub d: Complex64,
}

impl CavityMatrices {
    pub fn det_s(&self) -> Complex64 {
        self.s[0][0] * self.s[1][1] - self.s[0][1] * self.s[1][0]
    }

    /// `max |(S S†)_{ij} - δ_{ij}|`
    pub fn unitarity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += self.s[i][k] * self.s[j][k].conj();
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }

    /// Half the summed squared moduli of the resonance matrix entries.
    pub fn resonance_quadratic_form(&self) -> f64 {
        0.5 * self.r.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>()
    }
}

fn denominator(cfg: &CavityConfig, omega: f64) -> Result<(Complex64, Complex64)> {
    let r = cfg.loop_reflection(omega)?;
    let d = Complex64::new(1.0, 0.0) - r * cfg.roundtrip_phase(omega);
    if d.norm() < SINGULAR_DENOMINATOR {
        return Err(CasimirError::Singular(format!("cavity resonance pole at omega = {omega}")));
    }
    Ok((r, d))
}

pub fn cavity_matrices(cfg: &CavityConfig, omega: f64) -> Result<CavityMatrices> {
    let (r1, s1) = (cfg.mirror1.reflection(omega)?, cfg.mirror1.transmission(omega)?);
    let (r2, s2) = (cfg.mirror2.reflection(omega)?, cfg.mirror2.transmission(omega)?);
    let (_, d) = denominator(cfg, omega)?;
    let wq = omega * cfg.q;
    let e_minus = Complex64::from_polar(1.0, -wq);
    let e_plus = Complex64::from_polar(1.0, wq);
    let s11 = s1 * s2 / d;
    let s12 = r2 * e_minus + s2 * s2 * r1 * e_plus / d;
    let s21 = r1 * e_minus + s1 * s1 * r2 * e_plus / d;
    // q₁ = 0, q₂ = q
    let r11 = s1 / d;
    let r12 = s2 * r1 / d;
    let r21 = s1 * r2 * cfg.roundtrip_phase(omega) / d;
    let r22 = s2 / d;
    Ok(CavityMatrices { s: [[s11, s12], [s21, s11]], r: [[r11, r12], [r21, r22]], d })
}

/// `g[ω] = (1 - |r|²) / |1 - r e^{2iωq}|²`
pub fn airy_factor(cfg: &CavityConfig, omega: f64) -> Result<f64> {
    let (_, d) = denominator(cfg, omega)?;
    // 1 - |r₁r₂|² = |s₁|² + |r₁|²|s₂|² by unitarity, without cancellation near |r| = 1
    let (r1, s1, s2) =
        (cfg.mirror1.reflection(omega)?, cfg.mirror1.transmission(omega)?, cfg.mirror2.transmission(omega)?);
    Ok((s1.norm_sqr() + r1.norm_sqr() * s2.norm_sqr()) / d.norm_sqr())
}

/// `Δ[ω] = i Log[(1 - r e^{2iωq}) / (1 - r* e^{-2iωq})] = -2 arg(1 - r e^{2iωq})`.
///
/// For `|r| < 1` the real part of `1 - r e^{2iωq}` is positive, so the principal
/// branch is continuous and satisfies `Δ[0] = 0`. Below `|r| = 0.999` the
/// roundtrip series `Σ (2/ℓ) Im[(r e^{2iωq})^ℓ]` is used.
pub fn phase_shift(cfg: &CavityConfig, omega: f64) -> Result<f64> {
    let (r, d) = denominator(cfg, omega)?;
    let z = r * cfg.roundtrip_phase(omega);
    let rho = z.norm();
    if rho >= 1.0 {
        return Err(CasimirError::Singular(format!("|r e^(2i omega q)| = {rho} >= 1")));
    }
    if rho < PHASE_SERIES_LIMIT {
        let mut sum = 0.0;
        let mut zl = z;
        let mut ell = 1.0;
        while zl.norm() / ell > 1e-18 {
            sum += zl.im / ell;
            zl *= z;
            ell += 1.0;
        }
        Ok(2.0 * sum)
    } else {
        Ok(-2.0 * d.arg())
    }
}

/// Split of `∂_ω Δ` into an Airy part, a reflection-delay part and a modulus part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShiftDerivative {
    /// `-(1 - g) 2q`
    pub airy: f64,
    /// `-(1 - g) ∂_ω δ`
    pub delay: f64,
    /// `-g sin(2ωq + δ) ∂_ω Log(1 - ρ²) / ρ`
    pub modulus: f64,
}

impl PhaseShiftDerivative {
    pub fn total(&self) -> f64 {
        self.airy + self.delay + self.modulus
    }
}

/// Decomposition of `∂_ω Δ[ω]` with `r = ρ e^{iδ}`.
pub fn phase_shift_derivative_decomposition(cfg: &CavityConfig, omega: f64) -> Result<PhaseShiftDerivative> {
    let (r, d) = denominator(cfg, omega)?;
    let rho = r.norm();
    if rho >= 1.0 {
        return Err(CasimirError::Singular(format!("|r| = {rho} >= 1")));
    }
    if rho == 0.0 {
        return Ok(PhaseShiftDerivative { airy: 0.0, delay: 0.0, modulus: 0.0 });
    }
    let dr = cfg.loop_reflection_derivative(omega)?;
    let log_deriv = dr / r;
    let d_delta = log_deriv.im;
    let d_rho = rho * log_deriv.re;
    let g = (1.0 - rho * rho) / d.norm_sqr();
    let theta = 2.0 * omega * cfg.q + r.arg();
    Ok(PhaseShiftDerivative {
        airy: -(1.0 - g) * 2.0 * cfg.q,
        delay: -(1.0 - g) * d_delta,
        // -g sinθ ∂Log(1-ρ²)/ρ written without the 1/ρ
        modulus: g * theta.sin() * 2.0 * d_rho / (1.0 - rho * rho),
    })
}

/// Centered finite difference of [`phase_shift`] with step `DERIVATIVE_STEP · scale`.
pub fn phase_shift_fd(cfg: &CavityConfig, omega: f64, scale: f64) -> Result<f64> {
    let h = DERIVATIVE_STEP * scale;
    Ok((phase_shift(cfg, omega + h)? - phase_shift(cfg, omega - h)?) / (2.0 * h))
}
