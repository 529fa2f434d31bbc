//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

// NaN must count as a failure, hence `!(x > y)`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use casimir_core::casimir2d::{casimir_energy, force_imag_axis, force_large_distance, force_roundtrip_time};
use casimir_core::casimir4d::{
    energy_4d, mode_sum_oracle_4d, pressure_high_temperature, pressure_imag_axis, pressure_large_distance,
    pressure_roundtrip, pressure_thermal_large_distance,
};
use casimir_core::scattering::{
    airy_factor, cavity_matrices, phase_shift, phase_shift_derivative_decomposition, phase_shift_fd,
};
use casimir_core::{CavityConfig, MirrorModel, QuadratureSpec};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Builder = Box<dyn Fn(f64) -> CavityConfig>;

fn tight() -> QuadratureSpec {
    QuadratureSpec { rel_tol: 1e-12, ..Default::default() }
}

fn perfect(q: f64) -> CavityConfig {
    CavityConfig::new(MirrorModel::perfect(), MirrorModel::perfect(), q, 0.0).unwrap()
}

fn perfect_at(q: f64, t: f64) -> CavityConfig {
    CavityConfig::new(MirrorModel::perfect(), MirrorModel::perfect(), q, t).unwrap()
}

fn lorentz(w1: f64, w2: f64, q: f64) -> CavityConfig {
    CavityConfig::new(MirrorModel::lorentzian(w1).unwrap(), MirrorModel::lorentzian(w2).unwrap(), q, 0.0).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn check(label: &str, err: f64, tol: f64) -> Result<f64, String> {
    if err <= tol {
        Ok(err)
    } else {
        Err(format!("{label}: error {err:.3e} exceeds {tol:.0e}"))
    }
}

/// Five-point centered derivative.
fn derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

fn perfect_force_2d() -> Outcome {
    let s = tight();
    let f1 = force_imag_axis(&perfect(1.0), &s).map_err(|e| e.to_string())?.value;
    let e1 = check("q = 1", rel(f1, PI / 24.0), 1e-8)?;
    let mut worst: f64 = 0.0;
    for q in [0.5, 2.0] {
        let f = force_imag_axis(&perfect(q), &s).map_err(|e| e.to_string())?.value;
        worst = worst.max(check(&format!("q = {q} scaling"), rel(f * q * q, f1), 1e-10)?);
    }
    Ok(format!("F(1) rel err {e1:.1e}, scaling err {worst:.1e}"))
}

fn perfect_pressure_4d() -> Outcome {
    let exact = PI * PI / 240.0;
    let p = pressure_imag_axis(&perfect(1.0), &tight()).map_err(|e| e.to_string())?.value;
    let e = check("imag-axis", rel(p, exact), 1e-8)?;
    let m = mode_sum_oracle_4d(1.0).map_err(|e| e.to_string())?.value;
    check("mode sum", rel(m, exact), 0.0)?;
    Ok(format!("imag-axis rel err {e:.1e}, mode sum exact"))
}

fn polylog_limits() -> Outcome {
    let s = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for q in [0.5, 1.0, 3.0] {
        let f = force_large_distance(1.0, q, 0.0, &s).map_err(|e| e.to_string())?.value;
        worst = worst.max(check("2D", rel(f, (PI * PI / 6.0) / (4.0 * PI * q * q)), 1e-10)?);
        let p = pressure_large_distance(1.0, q, &s).map_err(|e| e.to_string())?.value;
        let expect = 3.0 * (PI.powi(4) / 90.0) / (8.0 * PI * PI * q.powi(4));
        worst = worst.max(check("4D", rel(p, expect), 1e-10)?);
    }
    Ok(format!("worst rel err {worst:.1e}"))
}

fn representation_cross_check() -> Outcome {
    let s = tight();
    let (mut w2, mut w4): (f64, f64) = (0.0, 0.0);
    for wq in [0.1, 1.0, 10.0] {
        let cfg = lorentz(wq, wq, 1.0);
        let a = force_imag_axis(&cfg, &s).map_err(|e| e.to_string())?.value;
        let b = force_roundtrip_time(&cfg, &s).map_err(|e| e.to_string())?.value;
        w2 = w2.max(check(&format!("2D at Ωq = {wq}"), rel(b, a), 1e-6)?);
        let a = pressure_imag_axis(&cfg, &s).map_err(|e| e.to_string())?.value;
        let b = pressure_roundtrip(&cfg, &s).map_err(|e| e.to_string())?.value;
        w4 = w4.max(check(&format!("4D at Ωq = {wq}"), rel(b, a), 1e-8)?);
    }
    Ok(format!("2D worst {w2:.1e}, 4D worst {w4:.1e}"))
}

fn energy_force_consistency() -> Outcome {
    let s = tight();
    let h = 1e-3;
    let mut worst: f64 = 0.0;
    let models: [(&str, Builder); 2] =
        [("perfect", Box::new(perfect)), ("lorentzian", Box::new(|q| lorentz(1.0, 1.0, q)))];
    for (name, make) in models.iter() {
        let u2 = |q: f64| casimir_energy(&make(q), &s).unwrap().value;
        let f2 = force_imag_axis(&make(1.0), &s).map_err(|e| e.to_string())?.value;
        worst = worst.max(check(&format!("2D {name}"), rel(derivative(u2, 1.0, h), f2), 1e-6)?);
        let u4 = |q: f64| energy_4d(&make(q), &s).unwrap().value;
        let f4 = pressure_imag_axis(&make(1.0), &s).map_err(|e| e.to_string())?.value;
        worst = worst.max(check(&format!("4D {name}"), rel(derivative(u4, 1.0, h), f4), 1e-6)?);
    }
    Ok(format!("worst rel err {worst:.1e}"))
}

fn perfect_energy_4d() -> Outcome {
    let s = tight();
    let u = energy_4d(&perfect(1.0), &s).map_err(|e| e.to_string())?.value;
    let e = check("U", rel(u, -PI * PI / 720.0), 1e-8)?;
    let f = pressure_imag_axis(&perfect(1.0), &s).map_err(|e| e.to_string())?.value;
    let e3 = check("U = -qF/3", rel(u, -f / 3.0), 1e-8)?;
    Ok(format!("rel err {e:.1e}, -qF/3 rel err {e3:.1e}"))
}

fn high_temperature_4d() -> Outcome {
    let zeta3 = 1.2020569031595942;
    let p = pressure_high_temperature(1.0, 1.0, 1.0).map_err(|e| e.to_string())?.value;
    let e = check("closed form", rel(p, zeta3 / (4.0 * PI)), 1e-10)?;
    let t = 10.0;
    let full = pressure_thermal_large_distance(1.0, 1.0, t, &tight()).map_err(|e| e.to_string())?.value;
    let classical = pressure_high_temperature(1.0, 1.0, t).map_err(|e| e.to_string())?.value;
    let e10 = check("Tq = 10", rel(full, classical), 1e-6)?;
    Ok(format!("closed form rel err {e:.1e}, Tq = 10 residual {e10:.1e}"))
}

fn thermal_crossover_2d() -> Outcome {
    let (q, t) = (1.0, 5.0);
    let s = tight();
    let hot = force_roundtrip_time(&perfect_at(q, t), &s).map_err(|e| e.to_string())?.value;
    let cold = force_imag_axis(&perfect(q), &s).map_err(|e| e.to_string())?.value;
    let predicted = 4.0 * PI * t * t * (-4.0 * PI * t * q).exp() / cold;
    let measured = hot / cold;
    let ratio = measured / predicted;
    if (0.5..=2.0).contains(&ratio) {
        Ok(format!("suppression {measured:.3e}, predicted {predicted:.3e}, ratio {ratio:.4}"))
    } else {
        Err(format!("suppression {measured:.3e} vs predicted {predicted:.3e}"))
    }
}

fn scattering_identities() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut wu, mut wa, mut wd, mut wp): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..10 {
        let w1 = 10f64.powf(rng.gen_range(-1.0..1.0));
        let w2 = 10f64.powf(rng.gen_range(-1.0..1.0));
        let q = rng.gen_range(0.2..3.0);
        let cfg = lorentz(w1, w2, q);
        for k in 0..100 {
            let w = 10f64.powf(-2.0 + 4.0 * k as f64 / 99.0);
            let m = cavity_matrices(&cfg, w).map_err(|e| e.to_string())?;
            wu = wu.max(check("unitarity", m.unitarity_defect(), 1e-10)?);
            let g = airy_factor(&cfg, w).map_err(|e| e.to_string())?;
            wa = wa.max(check("airy", rel(m.resonance_quadratic_form(), g), 1e-12)?);
            let det = |mirror: &MirrorModel| -> Complex64 {
                let (r, s) = (mirror.reflection(w).unwrap(), mirror.transmission(w).unwrap());
                s * s - r * r
            };
            let delta = phase_shift(&cfg, w).map_err(|e| e.to_string())?;
            let rhs = det(&cfg.mirror1) * det(&cfg.mirror2) * Complex64::from_polar(1.0, delta);
            wd = wd.max(check("det S", (m.det_s() - rhs).norm(), 1e-10)?);
            let dec = phase_shift_derivative_decomposition(&cfg, w).map_err(|e| e.to_string())?;
            let fd = phase_shift_fd(&cfg, w, 1.0).map_err(|e| e.to_string())?;
            wp = wp.max(check(&format!("dΔ/dω at ω = {w:.3}, q = {q:.3}"), rel(dec.total(), fd), 1e-6)?);
        }
    }
    Ok(format!("unitarity {wu:.1e}, airy {wa:.1e}, det {wd:.1e}, dΔ/dω {wp:.1e}"))
}

fn properties() -> Outcome {
    let s = QuadratureSpec::default();
    // sign law
    for w in [0.1, 1.0, 10.0] {
        let f = force_imag_axis(&lorentz(w, w, 1.0), &s).map_err(|e| e.to_string())?.value;
        if !(f > 0.0) {
            return Err(format!("lorentzian force {f} not attractive at Ωq = {w}"));
        }
    }
    for r0 in [-0.9, -0.5, -0.1] {
        let f = force_large_distance(r0, 1.0, 0.0, &s).map_err(|e| e.to_string())?.value;
        let p = pressure_large_distance(r0, 1.0, &s).map_err(|e| e.to_string())?.value;
        if !(f < 0.0 && p < 0.0) {
            return Err(format!("r0 = {r0}: force {f}, pressure {p} not repulsive"));
        }
    }
    // q-scaling: q²F depends only on Ωq
    let mut scale_err: f64 = 0.0;
    for lambda in [0.5, 3.0] {
        let base = force_imag_axis(&lorentz(1.3, 0.7, 1.0), &tight()).map_err(|e| e.to_string())?.value;
        let scaled =
            force_imag_axis(&lorentz(1.3 / lambda, 0.7 / lambda, lambda), &tight()).map_err(|e| e.to_string())?.value;
        scale_err = scale_err.max(check("q scaling", rel(scaled * lambda * lambda, base), 1e-10)?);
    }
    // monotone saturation toward π/24
    let mut prev = 0.0;
    let mut last = 0.0;
    for k in 0..=20 {
        let wq = 10f64.powf(-1.0 + 4.0 * k as f64 / 20.0);
        let f = force_imag_axis(&lorentz(wq, wq, 1.0), &s).map_err(|e| e.to_string())?.value;
        if !(f > prev) || f > PI / 24.0 {
            return Err(format!("saturation not monotone at Ωq = {wq}"));
        }
        prev = f;
        last = f;
    }
    let deficit = 1.0 - last / (PI / 24.0);
    check("deficit at Ωq = 1e3", deficit, 1e-2)?;
    Ok(format!("scaling err {scale_err:.1e}, deficit at Ωq = 1e3 {deficit:.2e}"))
}

fn main() -> ExitCode {
    #[allow(clippy::type_complexity)]
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("2D perfect-mirror force", perfect_force_2d),
        ("4D perfect-mirror pressure", perfect_pressure_4d),
        ("polylog limits", polylog_limits),
        ("representation cross-validation", representation_cross_check),
        ("energy-force consistency", energy_force_consistency),
        ("perfect-mirror 4D energy", perfect_energy_4d),
        ("high-temperature 4D", high_temperature_4d),
        ("thermal 2D crossover", thermal_crossover_2d),
        ("scattering identities", scattering_identities),
        ("property suite", properties),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
