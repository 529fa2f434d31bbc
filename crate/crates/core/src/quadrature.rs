//! Numerical integration and series summation.
//!
//! Every integral handled here is smooth and non-oscillatory: real-frequency
//! forms are always rotated to the imaginary axis or mapped to the time domain
//! before they reach this module.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Result};

/// Tolerances and limits governing every numerical evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub series_tail_tol: f64,
    pub max_roundtrips: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-9, abs_tol: 1e-14, max_subdivisions: 2000, series_tail_tol: 1e-10, max_roundtrips: 10_000 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.rel_tol) || !positive(self.abs_tol) || !positive(self.series_tail_tol) {
            return domain("tolerances must be positive and finite");
        }
        if self.max_subdivisions < 1 || self.max_roundtrips < 1 {
            return domain("max_subdivisions and max_roundtrips must be >= 1");
        }
        Ok(())
    }

    /// Same spec with all relative tolerances scaled by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self { rel_tol: self.rel_tol * factor, series_tail_tol: self.series_tail_tol * factor, ..*self }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl IntegrationResult {
    fn zero() -> Self {
        Self { value: 0.0, error_estimate: 0.0, evaluations: 0, converged: true }
    }
}

// Gauss–Kronrod 7/15 abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One Gauss–Kronrod 7/15 evaluation, with the QUADPACK error rescaling.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() {
        err = f64::INFINITY;
    }
    Panel { a, b, value, error: err }
}

const EVALS_PER_PANEL: usize = 15;

/// Globally adaptive Gauss–Kronrod integration on a finite interval.
///
/// Stops when the summed error estimate is below `max(abs_tol, rel_tol |I|)`
/// or after `max_subdivisions` bisections (then `converged` is false).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> IntegrationResult {
    integrate_with_floor(&f, a, b, spec, 0.0)
}

fn integrate_with_floor<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    abs_floor: f64,
) -> IntegrationResult {
    if a == b {
        return IntegrationResult::zero();
    }
    let first = gk15(f, a, b);
    let mut value = first.value;
    let mut error = first.error;
    let mut evaluations = EVALS_PER_PANEL;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 0;
    let target = |v: f64| spec.target(v).max(abs_floor);
    while error > target(value) {
        if subdivisions >= spec.max_subdivisions {
            break;
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine precision
            heap.push(worst);
            break;
        }
        let left = gk15(f, worst.a, mid);
        let right = gk15(f, mid, worst.b);
        evaluations += 2 * EVALS_PER_PANEL;
        subdivisions += 1;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if subdivisions % 64 == 0 {
            // resum to limit drift from incremental updates
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
        }
    }
    value = heap.iter().map(|p| p.value).sum();
    error = heap.iter().map(|p| p.error).sum();
    IntegrationResult {
        value,
        error_estimate: error,
        evaluations,
        converged: error <= target(value) && value.is_finite(),
    }
}

const MAX_PANELS: usize = 80;
const MIN_REACH: f64 = 16.0;

/// `∫_0^∞ f(u) du` for integrands decaying at least like `exp(-u / decay_scale)`.
///
/// The half-line is cut into panels `[0, w], [w, 3w], [3w, 7w], ...` with
/// `w = decay_scale`; integration stops once the last panel lies beyond
/// `16 · decay_scale` and contributes less than a tenth of the tolerance.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    decay_scale: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    integrate_from(f, 0.0, decay_scale, spec)
}

/// `∫_start^∞ f(u) du`, same panel scheme as [`integrate_semi_infinite`].
pub fn integrate_from<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    decay_scale: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult> {
    if !(decay_scale > 0.0) || !decay_scale.is_finite() {
        return domain(format!("decay scale must be positive, got {decay_scale}"));
    }
    let mut total = IntegrationResult::zero();
    let mut a = start;
    let mut width = decay_scale;
    for _ in 0..MAX_PANELS {
        let b = a + width;
        let floor = 0.1 * spec.target(total.value);
        let panel = integrate_with_floor(&f, a, b, spec, floor);
        total.value += panel.value;
        total.error_estimate += panel.error_estimate;
        total.evaluations += panel.evaluations;
        total.converged &= panel.converged;
        let negligible = panel.value.abs() + panel.error_estimate <= 0.1 * spec.target(total.value);
        if negligible && b - start >= MIN_REACH * decay_scale {
            total.converged &= total.error_estimate <= spec.target(total.value);
            return Ok(total);
        }
        a = b;
        width *= 2.0;
    }
    total.converged = false;
    Ok(total)
}

/// Sums `Σ_{ℓ≥1} term(ℓ)` for terms bounded by `A · ratio_bound^ℓ`.
///
/// After each term the geometric tail `|term(L)| ratio / (1 - ratio)` is
/// compared with `series_tail_tol · |partial sum|`. `evaluations` reports the
/// number of roundtrips summed.
pub fn sum_roundtrip_series<F: FnMut(usize) -> f64>(
    mut term: F,
    ratio_bound: f64,
    spec: &QuadratureSpec,
) -> IntegrationResult {
    let mut sum = 0.0;
    let mut comp = 0.0;
    if !(0.0..1.0).contains(&ratio_bound) {
        let t = term(1);
        return IntegrationResult { value: t, error_estimate: f64::INFINITY, evaluations: 1, converged: false };
    }
    let mut tail = f64::INFINITY;
    for ell in 1..=spec.max_roundtrips {
        let t = term(ell);
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        tail = t.abs() * ratio_bound / (1.0 - ratio_bound);
        if tail <= spec.series_tail_tol * sum.abs() || (t == 0.0 && sum == 0.0) {
            return IntegrationResult { value: sum, error_estimate: tail, evaluations: ell, converged: true };
        }
    }
    IntegrationResult { value: sum, error_estimate: tail, evaluations: spec.max_roundtrips, converged: false }
}

const RICHARDSON_FIRST: usize = 32;

/// Sums a series whose terms have an asymptotic expansion in inverse powers of `ℓ`
/// (e.g. `ℓ^{-2}`-decaying roundtrip terms when the loop reflectivity tends to 1
/// at zero frequency).
///
/// Partial sums `S_L` are taken at `L = 32, 64, 128, ...` and extrapolated with a
/// Richardson table assuming `S_L = S - c_1/L - c_2/L² - ...`. The error
/// estimate is the change between successive diagonal entries.
pub fn sum_power_law_series<F: FnMut(usize) -> f64>(mut term: F, spec: &QuadratureSpec) -> IntegrationResult {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut ell = 0usize;
    let mut checkpoint = RICHARDSON_FIRST;
    let mut best = (f64::NAN, f64::INFINITY);
    while checkpoint <= spec.max_roundtrips.max(RICHARDSON_FIRST) {
        while ell < checkpoint {
            ell += 1;
            let t = term(ell);
            let y = t - comp;
            let s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        }
        let mut row = vec![sum];
        if let Some(prev) = rows.last() {
            for j in 1..=prev.len() {
                let f = 2f64.powi(j as i32);
                let v = (f * row[j - 1] - prev[j - 1]) / (f - 1.0);
                row.push(v);
            }
            let diag = *row.last().unwrap();
            let prev_diag = *prev.last().unwrap();
            let err = (diag - prev_diag).abs();
            if err < best.1 {
                best = (diag, err);
            }
            if err <= spec.series_tail_tol * diag.abs() || (diag == 0.0 && prev_diag == 0.0) {
                return IntegrationResult { value: diag, error_estimate: err, evaluations: ell, converged: true };
            }
        }
        rows.push(row);
        checkpoint *= 2;
    }
    if best.0.is_nan() {
        return IntegrationResult { value: sum, error_estimate: f64::INFINITY, evaluations: ell, converged: false };
    }
    IntegrationResult { value: best.0, error_estimate: best.1, evaluations: ell, converged: false }
}

/// Threshold on `|r₀|` above which a roundtrip series is treated as power-law.
pub const UNIT_REFLECTIVITY_MARGIN: f64 = 1e-6;

/// Dispatches between geometric tail bounding and power-law extrapolation.
pub fn sum_series<F: FnMut(usize) -> f64>(term: F, ratio_bound: f64, spec: &QuadratureSpec) -> IntegrationResult {
    if ratio_bound <= 1.0 - UNIT_REFLECTIVITY_MARGIN {
        sum_roundtrip_series(term, ratio_bound, spec)
    } else {
        sum_power_law_series(term, spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn tight() -> QuadratureSpec {
        QuadratureSpec { rel_tol: 1e-12, ..Default::default() }
    }

    #[test]
    fn kronrod_rule_is_exact_for_low_degree_polynomials() {
        // K15 integrates x^k exactly for k <= 22 on [-1, 1], G7 for k <= 13
        for k in 0..=22 {
            let p = gk15(&|x: f64| x.powi(k), -1.0, 1.0);
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((p.value - exact).abs() < 1e-14, "k={k}");
        }
        let wsum: f64 = WGK[7] + 2.0 * WGK[..7].iter().sum::<f64>();
        assert!((wsum - 2.0).abs() < 1e-15);
        let gsum: f64 = WG[3] + 2.0 * WG[..3].iter().sum::<f64>();
        assert!((gsum - 2.0).abs() < 1e-15);
    }

    #[test]
    fn finite_interval() {
        let r = integrate(|x: f64| x.sin(), 0.0, PI, &tight());
        assert!(r.converged);
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-13);
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, &tight());
        assert!(r.converged);
        assert_relative_eq!(r.value, -1.0, max_relative = 1e-11);
    }

    #[test]
    fn semi_infinite_examples() {
        let spec = tight();
        let r = integrate_semi_infinite(|u: f64| u * (-u).exp(), 1.0, &spec).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-12);

        // Γ(4)ζ(4), oracle: 6 Σ ℓ^{-4} by partial summation
        let oracle: f64 = 6.0 * (1..200_000u64).rev().map(|l| (l as f64).powi(-4)).sum::<f64>();
        let r = integrate_semi_infinite(|u: f64| u.powi(3) / u.exp_m1(), 1.0, &spec).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value, oracle, max_relative = 1e-12);
        assert_relative_eq!(r.value, PI.powi(4) / 15.0, max_relative = 1e-12);

        let r = integrate_semi_infinite(|u: f64| u / u.exp_m1(), 1.0, &spec).unwrap();
        assert_relative_eq!(r.value, PI * PI / 6.0, max_relative = 1e-12);
    }

    #[test]
    fn semi_infinite_rejects_bad_scale() {
        assert!(integrate_semi_infinite(|u: f64| (-u).exp(), 0.0, &tight()).is_err());
        assert!(integrate_semi_infinite(|u: f64| (-u).exp(), -1.0, &tight()).is_err());
    }

    #[test]
    fn subdivision_cap_reports_non_convergence() {
        let spec = QuadratureSpec { rel_tol: 1e-14, max_subdivisions: 1, ..Default::default() };
        let r = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &spec);
        assert!(!r.converged);
    }

    #[test]
    fn gamma_family_is_exact_and_halving_tolerance_helps() {
        let mut fact = 1.0;
        for n in 0..8 {
            if n > 0 {
                fact *= n as f64;
            }
            let mut prev = f64::INFINITY;
            for rel in [1e-6, 1e-8, 1e-10, 1e-12] {
                let spec = QuadratureSpec { rel_tol: rel, ..Default::default() };
                let r = integrate_semi_infinite(|u: f64| u.powi(n) * (-u).exp(), 1.0, &spec).unwrap();
                let err = (r.value / fact - 1.0).abs();
                assert!(err <= rel, "n={n} rel={rel} err={err}");
                assert!(err <= prev.max(1e-15));
                prev = err;
            }
        }
    }

    #[test]
    fn series_examples() {
        let spec = QuadratureSpec::default();
        let r = sum_roundtrip_series(|l| 0.5f64.powi(l as i32), 0.5, &spec);
        assert!(r.converged);
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-10);

        let r = sum_roundtrip_series(|l| 0.5f64.powi(l as i32) / (l * l) as f64, 0.5, &spec);
        assert_relative_eq!(r.value, 0.5822405264650125, max_relative = 1e-10);

        let r = sum_roundtrip_series(|_| 0.0, 0.5, &spec);
        assert!(r.converged);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.evaluations, 1);
    }

    #[test]
    fn series_flags_bad_ratio_and_cap() {
        let spec = QuadratureSpec { max_roundtrips: 5, ..Default::default() };
        assert!(!sum_roundtrip_series(|l| 1.0 / l as f64, 1.0, &spec).converged);
        assert!(!sum_roundtrip_series(|l| 0.99f64.powi(l as i32), 0.99, &spec).converged);
    }

    #[test]
    fn power_law_series_reaches_zeta() {
        let spec = QuadratureSpec { series_tail_tol: 1e-13, ..Default::default() };
        let r = sum_power_law_series(|l| 1.0 / (l * l) as f64, &spec);
        assert!(r.converged, "{r:?}");
        assert_relative_eq!(r.value, PI * PI / 6.0, max_relative = 1e-12);
        let r = sum_power_law_series(
            |l| {
                let x = l as f64;
                1.0 / (x * x) + 0.3 / (x * x * x)
            },
            &spec,
        );
        assert_relative_eq!(r.value, PI * PI / 6.0 + 0.3 * 1.2020569031595942, max_relative = 1e-12);
    }

    #[test]
    fn series_idempotent_under_cap_increase() {
        let base = QuadratureSpec::default();
        let a = sum_roundtrip_series(|l| 0.7f64.powi(l as i32) / l as f64, 0.7, &base);
        let bigger = QuadratureSpec { max_roundtrips: 100_000, ..base };
        let b = sum_roundtrip_series(|l| 0.7f64.powi(l as i32) / l as f64, 0.7, &bigger);
        assert!(a.converged && b.converged);
        assert_eq!(a.value, b.value);
        assert_eq!(a.evaluations, b.evaluations);
    }
}
