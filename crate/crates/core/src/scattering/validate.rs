use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::model::{MirrorKind, MirrorModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    /// Holds only weakly (e.g. `ω|r[ω]|` tends to a nonzero constant).
    Marginal,
    Fail,
    NotApplicable,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Marginal => "marginal",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub worst_residual: f64,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    pub unitarity_tol: f64,
    pub reality_tol: f64,
    /// `|r[ω_max]|` must fall below this for the transparency check.
    pub transparency_threshold: f64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self { unitarity_tol: 1e-12, reality_tol: 1e-12, transparency_threshold: 1e-2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub model: &'static str,
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Reality, unitarity and the imaginary-axis bound all hold.
    /// Transparency is reported but does not gate this.
    pub fn admissible(&self) -> bool {
        ["grid", "reality", "unitarity", "bound", "imag-axis-real"]
            .iter()
            .filter_map(|n| self.check(n))
            .all(|c| c.status != CheckStatus::Fail)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| matches!(c.status, CheckStatus::Marginal | CheckStatus::Fail))
    }
}

fn outcome(name: &'static str, ok: bool, worst: f64, note: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name,
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        worst_residual: worst,
        note: note.into(),
    }
}

fn not_applicable(name: &'static str, note: &str) -> CheckOutcome {
    CheckOutcome { name, status: CheckStatus::NotApplicable, worst_residual: 0.0, note: note.into() }
}

/// Checks reality, unitarity, the bound `|r[iξ]| ≤ 1`, reality of `r[iξ]` and
/// high-frequency transparency on a grid of positive frequencies.
///
/// The same grid is used for `ω` on the real axis and `ξ` on the imaginary axis.
pub fn validate_model(model: &MirrorModel, grid: &[f64], opts: &ValidationOptions) -> ValidationReport {
    let mut checks = Vec::new();
    let grid: Vec<f64> = grid.iter().copied().filter(|w| *w > 0.0 && w.is_finite()).collect();
    let name = model.name();
    if grid.is_empty() {
        checks.push(outcome("grid", false, f64::NAN, "no positive frequencies in grid"));
        return ValidationReport { model: name, checks };
    }

    if model.has_real_axis() {
        let mut reality: f64 = 0.0;
        let mut unit: f64 = 0.0;
        for &w in &grid {
            let (r, s) = (model.reflection(w).unwrap(), model.transmission(w).unwrap());
            let (rm, sm) = (model.reflection(-w).unwrap(), model.transmission(-w).unwrap());
            reality = reality.max((rm - r.conj()).norm()).max((sm - s.conj()).norm());
            let u1 = (r.norm_sqr() + s.norm_sqr() - 1.0).abs();
            let u2 = (s * r.conj() + r * s.conj()).norm();
            unit = unit.max(u1).max(u2);
        }
        checks.push(outcome("reality", reality <= opts.reality_tol, reality, "r[-w] = conj(r[w]), same for s"));
        checks.push(outcome("unitarity", unit <= opts.unitarity_tol, unit, "|s|^2 + |r|^2 = 1, s r* + r s* = 0"));
    } else {
        checks.push(not_applicable("reality", "imaginary-axis samples only"));
        checks.push(not_applicable("unitarity", "imaginary-axis samples only"));
    }

    let mut bound: f64 = 0.0;
    let mut samples: Vec<f64> = grid.clone();
    if let MirrorKind::Tabulated(t) = model.kind() {
        samples.extend(t.samples().map(|(x, _)| x));
    }
    for &xi in &samples {
        bound = bound.max(model.reflection_imag(xi).abs());
    }
    checks.push(outcome("bound", bound <= 1.0, bound, "|r[i xi]| <= 1"));

    if model.has_real_axis() {
        let mut imag: f64 = 0.0;
        for &xi in &grid {
            let z = model.reflection_complex(Complex64::new(0.0, xi)).unwrap();
            imag = imag.max(z.im.abs()).max((z.re - model.reflection_imag(xi)).abs());
        }
        checks.push(outcome(
            "imag-axis-real",
            imag <= opts.reality_tol,
            imag,
            "r[i xi] real and equal to the continuation",
        ));
    } else {
        checks.push(not_applicable("imag-axis-real", "samples are real by construction"));
    }

    checks.push(transparency(model, &grid, opts));
    ValidationReport { model: name, checks }
}

fn transparency(model: &MirrorModel, grid: &[f64], opts: &ValidationOptions) -> CheckOutcome {
    const NAME: &str = "transparency";
    if !model.has_real_axis() {
        return not_applicable(NAME, "real-axis amplitudes unavailable");
    }
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    let w_max = *sorted.last().unwrap();
    let r_max = model.reflection(w_max).unwrap().norm();
    if r_max > opts.transparency_threshold {
        return outcome(NAME, false, r_max, format!("|r| = {r_max:.3e} at w = {w_max:.3e}: mirror not transparent"));
    }
    // ω|r[ω]| → 0 is required; a plateau means the condition holds only weakly
    if sorted.len() >= 2 {
        let w_prev = sorted[sorted.len() - 2];
        let a = w_prev * model.reflection(w_prev).unwrap().norm();
        let b = w_max * r_max;
        if b >= 0.99 * a && b > 0.0 {
            return CheckOutcome {
                name: NAME,
                status: CheckStatus::Marginal,
                worst_residual: b,
                note: format!("w|r[w]| -> {b:.6e} does not vanish; only imaginary-axis or time-domain forms are used"),
            };
        }
    }
    outcome(NAME, true, r_max, "s -> 1, w|r| -> 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::{ReflectivityTable, TableUnits};

    fn log_grid(n: usize) -> Vec<f64> {
        (0..n).map(|k| 10f64.powf(-3.0 + 7.0 * k as f64 / (n - 1) as f64)).collect()
    }

    #[test]
    fn lorentzian_is_admissible_with_marginal_transparency() {
        let rep = validate_model(&MirrorModel::lorentzian(1.0).unwrap(), &log_grid(100), &ValidationOptions::default());
        assert!(rep.admissible());
        assert_eq!(rep.check("transparency").unwrap().status, CheckStatus::Marginal);
        assert!(rep.check("unitarity").unwrap().worst_residual < 1e-12);
    }

    #[test]
    fn perfect_mirror_fails_transparency_only() {
        let rep = validate_model(&MirrorModel::perfect(), &log_grid(20), &ValidationOptions::default());
        assert!(rep.admissible());
        assert_eq!(rep.check("transparency").unwrap().status, CheckStatus::Fail);
        assert_eq!(rep.check("unitarity").unwrap().status, CheckStatus::Pass);
    }

    #[test]
    fn tabulated_checks_bound_only() {
        let t = ReflectivityTable::new(vec![0.0, 1.0], vec![-1.0, -0.5], TableUnits::Absolute).unwrap();
        let rep = validate_model(&MirrorModel::tabulated(t), &[1.0, 2.0], &ValidationOptions::default());
        assert!(rep.admissible());
        assert_eq!(rep.check("reality").unwrap().status, CheckStatus::NotApplicable);
        assert_eq!(rep.check("bound").unwrap().status, CheckStatus::Pass);
    }

    #[test]
    fn empty_grid_is_reported() {
        let rep = validate_model(&MirrorModel::perfect(), &[-1.0, 0.0], &ValidationOptions::default());
        assert_eq!(rep.checks[0].status, CheckStatus::Fail);
    }
}
