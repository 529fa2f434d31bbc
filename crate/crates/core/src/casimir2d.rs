//! Scalar field in two dimensions: force, energy and free energy between two
//! pointlike mirrors.
//!
//! `F > 0` means attraction. `F = ∂_q U`, so the energy decreases as the
//! mirrors approach.

use std::cell::Cell;
use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{domain, CasimirError, Result};
use crate::quadrature::{integrate, integrate_semi_infinite, sum_series, IntegrationResult, QuadratureSpec};
use crate::results::{EnergyKind, EnergyResult, ForceResult, Method};
use crate::scattering::{CavityConfig, TimeKernel};
use crate::special::{bernoulli, polylog, PolylogArg};
use crate::spectral::SpectralKernel;

/// Relative step for finite differences in `T` and `q`.
pub const FD_STEP: f64 = 1e-4;

fn check_separation(q: f64) -> Result<()> {
    if !(q > 0.0) || !q.is_finite() {
        return domain(format!("separation must be positive, got {q}"));
    }
    Ok(())
}

fn check_r0(r0: f64) -> Result<()> {
    if !(r0.abs() <= 1.0) {
        return domain(format!("|r0| must not exceed 1, got {r0}"));
    }
    Ok(())
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return domain(format!("temperature must be >= 0, got {t}"));
    }
    Ok(())
}

fn zero_temperature_only(cfg: &CavityConfig, what: &str) -> Result<()> {
    if cfg.temperature != 0.0 {
        return domain(format!("{what} is a zero-temperature form; got T = {}", cfg.temperature));
    }
    Ok(())
}

fn li(x: f64, p: u32) -> Result<f64> {
    polylog(PolylogArg::new(x, p)?, 1e-15)
}

/// Geometric ratio bounding successive thermal roundtrip terms.
pub(crate) fn thermal_ratio(r0: f64, q: f64, temperature: f64) -> f64 {
    r0.abs() * (-4.0 * PI * temperature * q).exp()
}

/// `F = (1/4πq²) ∫₀^∞ du u r[iu/2q] / (e^u - r[iu/2q])`, zero temperature.
pub fn force_imag_axis(cfg: &CavityConfig, spec: &QuadratureSpec) -> Result<ForceResult> {
    spec.validate()?;
    zero_temperature_only(cfg, "the imaginary-axis force")?;
    let q = cfg.q;
    let f = |u: f64| {
        let r = cfg.loop_reflection_imag(u / (2.0 * q));
        u * r / (u.exp_m1() + (1.0 - r))
    };
    let r = integrate_semi_infinite(f, 1.0, spec)?;
    Ok(ForceResult::from_integral(r, 1.0 / (4.0 * PI * q * q), Method::ImagAxis))
}

/// `U = (1/4πq) ∫₀^∞ du ln(1 - r[iu/2q] e^{-u})`, zero temperature.
pub fn casimir_energy(cfg: &CavityConfig, spec: &QuadratureSpec) -> Result<EnergyResult> {
    spec.validate()?;
    zero_temperature_only(cfg, "the Casimir energy")?;
    let q = cfg.q;
    let singular = Cell::new(false);
    let f = |u: f64| {
        let x = cfg.loop_reflection_imag(u / (2.0 * q)) * (-u).exp();
        if x >= 1.0 {
            singular.set(true);
            return 0.0;
        }
        (-x).ln_1p()
    };
    let r = integrate_semi_infinite(f, 1.0, spec)?;
    if singular.get() {
        return Err(CasimirError::Singular("r[i xi] e^{-2 xi q} reaches 1; the energy integrand is singular".into()));
    }
    let scale = 1.0 / (4.0 * PI * q);
    Ok(EnergyResult {
        value: r.value * scale,
        error_estimate: r.error_estimate * scale,
        method: Method::ImagAxis,
        kind: EnergyKind::CasimirEnergy,
        roundtrips_used: None,
        converged: r.converged,
    })
}

/// Large-distance force from the zero-frequency loop reflectivity `r₀`.
///
/// `T = 0`: `ζ_{r₀}(2)/(4πq²)`. `T > 0`: `-Σ_ℓ r₀^ℓ c_T(2ℓq)`.
pub fn force_large_distance(r0: f64, q: f64, temperature: f64, spec: &QuadratureSpec) -> Result<ForceResult> {
    spec.validate()?;
    check_r0(r0)?;
    check_separation(q)?;
    check_temperature(temperature)?;
    if temperature == 0.0 {
        return Ok(ForceResult::exact(li(r0, 2)? / (4.0 * PI * q * q), Method::ClosedForm));
    }
    let k = SpectralKernel::new(temperature)?;
    let res = sum_series(
        |ell| -r0.powi(ell as i32) * k.time(2.0 * ell as f64 * q).unwrap_or(f64::NAN),
        thermal_ratio(r0, q, temperature),
        spec,
    );
    Ok(ForceResult::from_series(res, Method::LargeDistance))
}

/// Large-distance free energy `-Σ_ℓ r₀^ℓ K(2ℓq)/(2ℓ)`, normalized to vanish as
/// `q → ∞`. `K` is the antiderivative of `c_T`; at `T = 0` this is
/// `-ζ_{r₀}(2)/(4πq)`.
pub fn free_energy_large_distance(r0: f64, q: f64, temperature: f64, spec: &QuadratureSpec) -> Result<EnergyResult> {
    spec.validate()?;
    check_r0(r0)?;
    check_separation(q)?;
    check_temperature(temperature)?;
    if temperature == 0.0 {
        return Ok(EnergyResult::exact(-li(r0, 2)? / (4.0 * PI * q), Method::ClosedForm, EnergyKind::FreeEnergy));
    }
    let k = SpectralKernel::new(temperature)?;
    let res = sum_series(
        |ell| {
            let l = ell as f64;
            -r0.powi(ell as i32) * k.time_antiderivative(2.0 * l * q).unwrap_or(f64::NAN) / (2.0 * l)
        },
        thermal_ratio(r0, q, temperature),
        spec,
    );
    Ok(energy_from_series(res, Method::LargeDistance, EnergyKind::FreeEnergy))
}

fn energy_from_series(r: IntegrationResult, method: Method, kind: EnergyKind) -> EnergyResult {
    EnergyResult {
        value: r.value,
        error_estimate: r.error_estimate,
        method,
        kind,
        roundtrips_used: Some(r.evaluations),
        converged: r.converged,
    }
}

/// Distribution of the total delay accumulated over `ℓ` roundtrips.
#[derive(Debug, Clone, Copy, PartialEq)]
enum DelayLaw {
    /// Both mirrors reflect instantaneously.
    None,
    /// Sum of `shape` exponential delays of one rate.
    Erlang { shape: u32, rate: f64 },
    /// Sum of `ℓ` delays of each of two distinct rates.
    TwoErlang { shape: u32, rate1: f64, rate2: f64 },
}

#[derive(Debug, Clone, Copy)]
struct DelayModel {
    rates: (Option<f64>, Option<f64>),
}

impl DelayModel {
    fn new(cfg: &CavityConfig) -> Result<Self> {
        let rate = |m: &crate::scattering::MirrorModel| match m.time_kernel() {
            Some(TimeKernel::Delta) => Ok(None),
            Some(TimeKernel::Exponential { rate }) => Ok(Some(rate)),
            None => Err(CasimirError::Capability(format!(
                "{} mirror has no time-domain reflection kernel; use the imaginary-axis form",
                m.name()
            ))),
        };
        Ok(Self { rates: (rate(&cfg.mirror1)?, rate(&cfg.mirror2)?) })
    }

    fn instantaneous(&self) -> bool {
        self.rates == (None, None)
    }

    fn law(&self, ell: usize) -> DelayLaw {
        let l = ell as u32;
        match self.rates {
            (None, None) => DelayLaw::None,
            (Some(rate), None) | (None, Some(rate)) => DelayLaw::Erlang { shape: l, rate },
            (Some(a), Some(b)) if (a - b).abs() <= 1e-12 * a.max(b) => DelayLaw::Erlang { shape: 2 * l, rate: a },
            (Some(rate1), Some(rate2)) => DelayLaw::TwoErlang { shape: l, rate1, rate2 },
        }
    }
}

/// Tolerances for the delay integrals inside a roundtrip term: tighter than
/// the series tolerance so that extrapolated partial sums stay smooth in `ℓ`.
fn inner_spec(spec: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec { rel_tol: (spec.rel_tol * 1e-2).max(1e-13), abs_tol: 1e-300, ..*spec }
}

/// `E[g(S)]` for `S ~ Erlang(shape, rate)`, using the self-normalized weight
/// `(s/m)^{k-1} e^{-λ(s-m)}` on `[max(0, m - 12σ), m + 12σ + 30/λ]`.
fn erlang_expectation(g: &dyn Fn(f64) -> f64, shape: u32, rate: f64, spec: &QuadratureSpec) -> IntegrationResult {
    let k = shape as f64;
    let m = k / rate;
    let sigma = k.sqrt() / rate;
    let (a, b) = ((m - 12.0 * sigma).max(0.0), m + 12.0 * sigma + 30.0 / rate);
    let w = |s: f64| {
        let ln = if shape == 1 { 0.0 } else { (k - 1.0) * (s / m).ln() };
        (ln - rate * (s - m)).exp()
    };
    let parts = |h: &dyn Fn(f64) -> f64| {
        let lo = integrate(h, a, m, spec);
        let hi = integrate(h, m, b, spec);
        IntegrationResult {
            value: lo.value + hi.value,
            error_estimate: lo.error_estimate + hi.error_estimate,
            evaluations: lo.evaluations + hi.evaluations,
            converged: lo.converged && hi.converged,
        }
    };
    let num = parts(&|s| g(s) * w(s));
    let den = parts(&w);
    let value = num.value / den.value;
    IntegrationResult {
        value,
        error_estimate: (num.error_estimate + value.abs() * den.error_estimate) / den.value,
        evaluations: num.evaluations + den.evaluations,
        converged: num.converged && den.converged,
    }
}

fn delay_expectation(g: &dyn Fn(f64) -> f64, law: DelayLaw, spec: &QuadratureSpec) -> IntegrationResult {
    match law {
        DelayLaw::None => IntegrationResult { value: g(0.0), error_estimate: 0.0, evaluations: 1, converged: true },
        DelayLaw::Erlang { shape, rate } => erlang_expectation(g, shape, rate, spec),
        DelayLaw::TwoErlang { shape, rate1, rate2 } => {
            // nested: E_X[E_Y[g(X + Y)]]
            let ok = Cell::new(true);
            let inner = |x: f64| {
                let r = erlang_expectation(&|y| g(x + y), shape, rate2, spec);
                if !r.converged {
                    ok.set(false);
                }
                r.value
            };
            let mut r = erlang_expectation(&inner, shape, rate1, spec);
            r.converged &= ok.get();
            r
        }
    }
}

/// Sums `Σ_ℓ weight(ℓ) r₀^ℓ E[kernel(2ℓq + S_ℓ)]` over roundtrips.
fn roundtrip_series(
    cfg: &CavityConfig,
    delays: DelayModel,
    spec: &QuadratureSpec,
    kernel: &dyn Fn(f64) -> f64,
    weight: &dyn Fn(usize) -> f64,
) -> IntegrationResult {
    let r0 = cfg.r0();
    let q = cfg.q;
    let inner = inner_spec(spec);
    let ok = Cell::new(true);
    let mut res = sum_series(
        |ell| {
            let tau0 = 2.0 * ell as f64 * q;
            let e = delay_expectation(&|s| kernel(tau0 + s), delays.law(ell), &inner);
            if !e.converged {
                ok.set(false);
            }
            weight(ell) * r0.powi(ell as i32) * e.value
        },
        thermal_ratio(r0, q, cfg.temperature),
        spec,
    );
    res.converged &= ok.get();
    res
}

/// Time-domain roundtrip series `F = -Σ_ℓ E[r-loop^ℓ c_T(2ℓq + S_ℓ)]`, where
/// `S_ℓ` is the total reflection delay over `ℓ` roundtrips. Valid at any `T`.
pub fn force_roundtrip_time(cfg: &CavityConfig, spec: &QuadratureSpec) -> Result<ForceResult> {
    spec.validate()?;
    let delays = DelayModel::new(cfg)?;
    if delays.instantaneous() {
        let mut r = force_large_distance(cfg.r0(), cfg.q, cfg.temperature, spec)?;
        r.method = Method::RoundtripTime;
        return Ok(r);
    }
    let k = SpectralKernel::new(cfg.temperature)?;
    let res = roundtrip_series(cfg, delays, spec, &|tau| k.time(tau).unwrap_or(f64::NAN), &|_| -1.0);
    Ok(ForceResult::from_series(res, Method::RoundtripTime))
}

/// Free energy `𝓕 = -Σ_ℓ E[r-loop^ℓ K(2ℓq + S_ℓ)]/(2ℓ)` with `K' = c_T`,
/// normalized to vanish as `q → ∞`. At `T = 0` it equals the Casimir energy.
pub fn free_energy(cfg: &CavityConfig, spec: &QuadratureSpec) -> Result<EnergyResult> {
    spec.validate()?;
    let delays = DelayModel::new(cfg)?;
    if delays.instantaneous() {
        let mut r = free_energy_large_distance(cfg.r0(), cfg.q, cfg.temperature, spec)?;
        r.method = Method::RoundtripTime;
        return Ok(r);
    }
    let k = SpectralKernel::new(cfg.temperature)?;
    let res = roundtrip_series(cfg, delays, spec, &|tau| k.time_antiderivative(tau).unwrap_or(f64::NAN), &|ell| {
        -0.5 / ell as f64
    });
    Ok(energy_from_series(res, Method::RoundtripTime, EnergyKind::FreeEnergy))
}

/// Thermal internal energy `U = 𝓕 - T ∂_T 𝓕`, the entropy term taken by a
/// centered difference with relative step [`FD_STEP`].
pub fn internal_energy_thermal(cfg: &CavityConfig, spec: &QuadratureSpec) -> Result<EnergyResult> {
    spec.validate()?;
    let t = cfg.temperature;
    if !(t > 0.0) {
        return domain("internal_energy_thermal needs T > 0; use casimir_energy at T = 0");
    }
    let fine = spec.tightened(1e-3);
    let h = FD_STEP * t;
    let f0 = free_energy(cfg, &fine)?;
    let fp = free_energy(&cfg.with_temperature(t + h)?, &fine)?;
    let fm = free_energy(&cfg.with_temperature(t - h)?, &fine)?;
    let entropy = -(fp.value - fm.value) / (2.0 * h);
    let noise = (fp.error_estimate + fm.error_estimate) / (2.0 * h);
    Ok(EnergyResult {
        value: f0.value + t * entropy,
        error_estimate: f0.error_estimate + t * noise,
        method: f0.method,
        kind: EnergyKind::CasimirEnergy,
        roundtrips_used: f0.roundtrips_used,
        converged: f0.converged && fp.converged && fm.converged,
    })
}

/// Coefficients of `f(x) = Σ_m (a_m + b_m K) x^m` with a symbolic cutoff `K`.
pub(crate) type SymbolicPolynomial = Vec<(BigRational, BigRational)>;

/// Euler–Maclaurin mode sum `Σ_k B_{2k}/(2k)! (π/q)^{2k} f^{(2k-1)}(0)` for
/// `f = π^{-pi_power} × poly`.
///
/// Returns `(2k, coefficient)` pairs: the sum is `Σ c_k π^{2k - pi_power} q^{-2k}`.
/// Fails if any cutoff-dependent coefficient survives.
pub(crate) fn euler_maclaurin_mode_sum(poly: &SymbolicPolynomial) -> Result<Vec<(u32, BigRational)>> {
    let mut out = Vec::new();
    for m in (1..poly.len()).step_by(2) {
        // f^{(m)}(0) = m! c_m and B_{m+1}/(m+1)! · m! = B_{m+1}/(m+1)
        let b = bernoulli(m + 1)?;
        let scale = b / BigRational::from_integer((m as i64 + 1).into());
        let (c, k) = &poly[m];
        if !(k * &scale).is_zero() {
            return Err(CasimirError::Singular("cutoff-dependent term survives the mode sum".into()));
        }
        let term = c * &scale;
        if !term.is_zero() {
            out.push((m as u32 + 1, term));
        }
    }
    Ok(out)
}

pub(crate) fn evaluate_mode_sum(terms: &[(u32, BigRational)], pi_power: i32, q: f64) -> f64 {
    terms
        .iter()
        .map(|(n, c)| {
            let mag = c.abs().to_f64().unwrap_or(f64::NAN);
            let sign = if c.is_negative() { -1.0 } else { 1.0 };
            sign * mag * PI.powi(*n as i32 - pi_power) / q.powi(*n as i32)
        })
        .sum()
}

/// Perfect-mirror force by Euler–Maclaurin summation of the cavity modes.
/// Only the `B₂` term acts on `f(ω) = ω/2π`, giving `π/(24q²)`.
pub fn mode_sum_oracle_2d(q: f64) -> Result<ForceResult> {
    check_separation(q)?;
    let one = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let poly = vec![(one(0, 1), one(0, 1)), (one(1, 2), one(0, 1))];
    let terms = euler_maclaurin_mode_sum(&poly)?;
    Ok(ForceResult::exact(evaluate_mode_sum(&terms, 1, q), Method::ModeSumOracle))
}
