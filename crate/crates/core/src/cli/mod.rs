//! Command-line front end for the `casimir` binary.

mod args;
mod config;
mod records;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::Parser;
use rayon::prelude::*;

pub use args::{
    Cli, Command, MethodArg, ModelArg, ModelArgs, OracleArgs, OutputFormat, PointArgs, Spacing, SweepArgs,
    SweepCommand, SweepParam, ValidateArgs,
};
pub use config::{expand_args, parse_config};
pub use records::{emit, Record, CSV_HEADER};

use crate::casimir2d::{self, FD_STEP};
use crate::casimir4d;
use crate::error::{CasimirError, Result};
use crate::quadrature::QuadratureSpec;
use crate::results::{EnergyResult, ForceResult, Method};
use crate::scattering::{validate_model, CavityConfig, MirrorModel, ReflectivityTable, ValidationOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;
pub const EXIT_NONCONVERGENCE: i32 = 4;
pub const EXIT_IO: i32 = 5;

/// Exit status for an engine error.
pub fn exit_code(err: &CasimirError) -> i32 {
    match err {
        CasimirError::Domain(_) | CasimirError::Parse { .. } | CasimirError::Singular(_) => EXIT_USAGE,
        CasimirError::Capability(_) => EXIT_CAPABILITY,
        CasimirError::NonConvergence(_) => EXIT_NONCONVERGENCE,
        CasimirError::Io(_) => EXIT_IO,
    }
}

/// Loads the mirror pair described by `m`.
pub fn build_mirrors(m: &ModelArgs) -> Result<(MirrorModel, MirrorModel)> {
    match m.model {
        ModelArg::Perfect => Ok((MirrorModel::perfect(), MirrorModel::perfect())),
        ModelArg::Lorentzian => {
            Ok((MirrorModel::lorentzian(m.omega1)?, MirrorModel::lorentzian(m.omega2.unwrap_or(m.omega1))?))
        }
        ModelArg::Tabulated => {
            let Some(path) = &m.table else {
                return Err(CasimirError::Domain("--model tabulated needs --table FILE".into()));
            };
            let t1 = ReflectivityTable::load(path)?;
            let t2 = match &m.table2 {
                Some(p) => ReflectivityTable::load(p)?,
                None => t1.clone(),
            };
            Ok((MirrorModel::tabulated(t1), MirrorModel::tabulated(t2)))
        }
    }
}

fn quadrature_spec(p: &PointArgs) -> Result<QuadratureSpec> {
    let spec = QuadratureSpec {
        rel_tol: p.rel_tol,
        abs_tol: p.abs_tol,
        max_subdivisions: p.max_subdivisions,
        series_tail_tol: p.tail_tol,
        max_roundtrips: p.max_roundtrips,
    };
    spec.validate()?;
    Ok(spec)
}

enum Outcome {
    Force(ForceResult),
    Energy(EnergyResult),
}

impl Outcome {
    fn into_record(self, param: String, q: f64, t: f64) -> Record {
        let (value, error, method, converged, roundtrips) = match self {
            Outcome::Force(r) => (r.value, r.error_estimate, r.method, r.converged, r.roundtrips_used),
            Outcome::Energy(r) => (r.value, r.error_estimate, r.method, r.converged, r.roundtrips_used),
        };
        Record { param, q, temperature: t, value, error, method: method.as_str().into(), converged, roundtrips }
    }
}

fn unsupported(what: &str, method: MethodArg) -> CasimirError {
    CasimirError::Capability(format!("{what} has no {method:?} form"))
}

/// Resolves `--method auto` to a concrete method: closed form for perfect
/// mirrors, then the imaginary axis at `T = 0`, then the roundtrip series,
/// then the large-distance form.
fn resolve(p: &PointArgs, dim4: bool) -> MethodArg {
    if p.method != MethodArg::Auto {
        return p.method;
    }
    let hot = p.temperature > 0.0;
    match p.model.model {
        ModelArg::Perfect => MethodArg::LargeDistance,
        _ if !hot => MethodArg::ImagAxis,
        ModelArg::Lorentzian if !dim4 => MethodArg::Roundtrip,
        _ => MethodArg::LargeDistance,
    }
}

/// `U = 𝓕 - T ∂_T 𝓕` for a free energy given as a function of temperature.
fn internal_energy(t: f64, f: impl Fn(f64) -> Result<EnergyResult>) -> Result<EnergyResult> {
    let h = FD_STEP * t;
    let (f0, fp, fm) = (f(t)?, f(t + h)?, f(t - h)?);
    Ok(EnergyResult {
        value: f0.value - t * (fp.value - fm.value) / (2.0 * h),
        error_estimate: f0.error_estimate + t * (fp.error_estimate + fm.error_estimate) / (2.0 * h),
        kind: crate::results::EnergyKind::CasimirEnergy,
        converged: f0.converged && fp.converged && fm.converged,
        ..f0
    })
}

fn evaluate(command: SweepCommand, p: &PointArgs, mirrors: &(MirrorModel, MirrorModel)) -> Result<Outcome> {
    let spec = quadrature_spec(p)?;
    let cfg = CavityConfig::new(mirrors.0.clone(), mirrors.1.clone(), p.q, p.temperature)?;
    let (q, t) = (p.q, p.temperature);
    let r0 = p.r0.unwrap_or_else(|| cfg.r0());
    let method = resolve(p, matches!(command, SweepCommand::Force4d | SweepCommand::Energy4d));
    let out = match command {
        SweepCommand::Force2d => Outcome::Force(match method {
            MethodArg::ImagAxis => casimir2d::force_imag_axis(&cfg, &spec)?,
            MethodArg::Roundtrip => casimir2d::force_roundtrip_time(&cfg, &spec)?,
            MethodArg::LargeDistance => casimir2d::force_large_distance(r0, q, t, &spec)?,
            m => return Err(unsupported("the 2D force", m)),
        }),
        SweepCommand::Force4d => Outcome::Force(match method {
            MethodArg::ImagAxis => casimir4d::pressure_imag_axis(&cfg, &spec)?,
            MethodArg::Roundtrip => casimir4d::pressure_roundtrip(&cfg, &spec)?,
            MethodArg::LargeDistance => casimir4d::pressure_thermal_large_distance(r0, q, t, &spec)?,
            MethodArg::HighT => casimir4d::pressure_high_temperature(r0, q, t)?,
            MethodArg::Auto => unreachable!("resolved above"),
        }),
        SweepCommand::Energy2d => Outcome::Energy(match method {
            MethodArg::ImagAxis => casimir2d::casimir_energy(&cfg, &spec)?,
            MethodArg::Roundtrip if t > 0.0 => casimir2d::internal_energy_thermal(&cfg, &spec)?,
            MethodArg::Roundtrip => casimir2d::free_energy(&cfg, &spec)?,
            MethodArg::LargeDistance if t > 0.0 => {
                let fine = spec.tightened(1e-3);
                internal_energy(t, |tt| casimir2d::free_energy_large_distance(r0, q, tt, &fine))?
            }
            MethodArg::LargeDistance => casimir2d::free_energy_large_distance(r0, q, 0.0, &spec)?,
            m => return Err(unsupported("the 2D energy", m)),
        }),
        SweepCommand::Energy4d => {
            if t > 0.0 {
                return Err(CasimirError::Capability("the 4D energy is available at T = 0 only".into()));
            }
            Outcome::Energy(match method {
                MethodArg::ImagAxis => casimir4d::energy_4d(&cfg, &spec)?,
                MethodArg::LargeDistance => casimir4d::energy_4d_large_distance(r0, q)?,
                m => return Err(unsupported("the 4D energy", m)),
            })
        }
        SweepCommand::FreeEnergy2d => {
            let method = if p.method == MethodArg::Auto && p.model.model == ModelArg::Lorentzian {
                MethodArg::Roundtrip
            } else {
                method
            };
            Outcome::Energy(match method {
                MethodArg::ImagAxis if t == 0.0 => casimir2d::casimir_energy(&cfg, &spec)?,
                MethodArg::Roundtrip => casimir2d::free_energy(&cfg, &spec)?,
                MethodArg::LargeDistance => casimir2d::free_energy_large_distance(r0, q, t, &spec)?,
                m => return Err(unsupported("the 2D free energy at this temperature", m)),
            })
        }
    };
    Ok(tag_closed_form(out, method))
}

/// Perfect-mirror and zero-temperature large-distance results are exact.
fn tag_closed_form(out: Outcome, method: MethodArg) -> Outcome {
    match out {
        Outcome::Force(mut r) if method == MethodArg::LargeDistance && r.roundtrips_used.is_none() => {
            r.method = Method::ClosedForm;
            Outcome::Force(r)
        }
        other => other,
    }
}

fn point(command: SweepCommand, p: &PointArgs, param: String) -> Result<Record> {
    let mirrors = build_mirrors(&p.model)?;
    let out = evaluate(command, p, &mirrors)?;
    Ok(out.into_record(param, p.q, p.temperature))
}

/// Grid of sweep values, ascending from `from` to `to` inclusive.
pub fn sweep_grid(s: &SweepArgs) -> Result<Vec<f64>> {
    let (a, b, n) = (s.from, s.to, s.points);
    if n < 1 || !a.is_finite() || !b.is_finite() || a > b {
        return Err(CasimirError::Domain("sweep range must satisfy from <= to with at least one point".into()));
    }
    if s.spacing == Spacing::Log && !(a > 0.0) {
        return Err(CasimirError::Domain("logarithmic sweeps need a positive range".into()));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let step = |k: usize| k as f64 / (n - 1) as f64;
    Ok((0..n)
        .map(|k| match (k, s.spacing) {
            (0, _) => a,
            (k, _) if k == n - 1 => b,
            (k, Spacing::Linear) => a + (b - a) * step(k),
            (k, Spacing::Log) => (a.ln() + (b.ln() - a.ln()) * step(k)).exp(),
        })
        .collect())
}

fn with_param(p: &PointArgs, param: SweepParam, v: f64) -> PointArgs {
    let mut p = p.clone();
    match param {
        SweepParam::Q => p.q = v,
        SweepParam::T => p.temperature = v,
        SweepParam::Omega1 => p.model.omega1 = v,
        SweepParam::Omega2 => p.model.omega2 = Some(v),
        SweepParam::R0 => p.r0 = Some(v),
    }
    p
}

fn sweep(s: &SweepArgs) -> Result<Vec<Record>> {
    let grid = sweep_grid(s)?;
    let mirrors = build_mirrors(&s.point.model)?;
    let run = || -> Result<Vec<Record>> {
        grid.par_iter()
            .map(|&v| {
                let p = with_param(&s.point, s.param, v);
                let m = match s.param {
                    SweepParam::Omega1 | SweepParam::Omega2 => build_mirrors(&p.model)?,
                    _ => mirrors.clone(),
                };
                let param = format!("{}={}", s.param.name(), v);
                Ok(evaluate(s.command, &p, &m)?.into_record(param, p.q, p.temperature))
            })
            .collect()
    };
    match s.jobs {
        Some(0) => Err(CasimirError::Domain("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CasimirError::Domain(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn oracle(o: &OracleArgs) -> Result<Record> {
    let r = match o.dimension {
        2 => casimir2d::mode_sum_oracle_2d(o.q)?,
        4 => casimir4d::mode_sum_oracle_4d(o.q)?,
        d => return Err(CasimirError::Domain(format!("dimension must be 2 or 4, got {d}"))),
    };
    Ok(Outcome::Force(r).into_record(String::new(), o.q, 0.0))
}

fn validate(v: &ValidateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (m, _) = build_mirrors(&v.model)?;
    if !(v.grid_min > 0.0) || !(v.grid_max > v.grid_min) || v.grid_points < 2 {
        return Err(CasimirError::Domain("grid needs 0 < grid-min < grid-max and at least two points".into()));
    }
    if !(v.q > 0.0) {
        return Err(CasimirError::Domain(format!("separation must be positive, got {}", v.q)));
    }
    let m = CavityConfig::new(m.clone(), m, v.q, 0.0)?.mirror1;
    let (lo, hi) = (v.grid_min.ln(), v.grid_max.ln());
    let n = v.grid_points;
    let grid: Vec<f64> = (0..n).map(|k| (lo + (hi - lo) * k as f64 / (n - 1) as f64).exp()).collect();
    let report = validate_model(&m, &grid, &ValidationOptions::default());
    match v.output {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::other)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "check,status,worst_residual,note")?;
            for c in &report.checks {
                writeln!(out, "{},{},{},\"{}\"", c.name, c.status, c.worst_residual, c.note.replace('"', "\"\""))?;
            }
        }
        OutputFormat::Plain => {
            writeln!(out, "model: {}", report.model)?;
            for c in &report.checks {
                writeln!(out, "{:<16} {:<9} {:>12.3e}  {}", c.name, c.status.to_string(), c.worst_residual, c.note)?;
            }
        }
    }
    for w in report.warnings() {
        writeln!(err, "warning: {} check is {}: {}", w.name, w.status, w.note)?;
    }
    Ok(if report.admissible() { EXIT_OK } else { EXIT_CAPABILITY })
}

fn emit_records(records: &[Record], format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    emit(records, format, out)?;
    Ok(if records.iter().all(|r| r.converged) { EXIT_OK } else { EXIT_NONCONVERGENCE })
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let single = |c: SweepCommand, p: &PointArgs, out: &mut dyn Write| {
        emit_records(&[point(c, p, String::new())?], p.output, out)
    };
    match &cli.command {
        Command::Force2d(p) => single(SweepCommand::Force2d, p, out),
        Command::Force4d(p) => single(SweepCommand::Force4d, p, out),
        Command::Energy2d(p) => single(SweepCommand::Energy2d, p, out),
        Command::Energy4d(p) => single(SweepCommand::Energy4d, p, out),
        Command::FreeEnergy2d(p) => single(SweepCommand::FreeEnergy2d, p, out),
        Command::Sweep(s) => emit_records(&sweep(s)?, s.point.output, out),
        Command::Oracle(o) => emit_records(&[oracle(o)?], o.output, out),
        Command::ValidateModel(v) => validate(v, out, err),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_args(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: config: {e}");
            return exit_code(&e);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => {
            if code == EXIT_NONCONVERGENCE {
                let _ = writeln!(err, "warning: some evaluations did not reach the requested tolerance");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweep_args(from: f64, to: f64, points: usize, spacing: Spacing) -> SweepArgs {
        let cli = Cli::try_parse_from([
            "casimir",
            "sweep",
            "--command",
            "force2d",
            "--param",
            "q",
            "--from",
            "1",
            "--to",
            "2",
        ])
        .unwrap();
        let Command::Sweep(mut s) = cli.command else { unreachable!() };
        s.from = from;
        s.to = to;
        s.points = points;
        s.spacing = spacing;
        s
    }

    #[test]
    fn grids_hit_endpoints() {
        let g = sweep_grid(&sweep_args(0.1, 10.0, 25, Spacing::Log)).unwrap();
        assert_eq!((g[0], g[24], g.len()), (0.1, 10.0, 25));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let g = sweep_grid(&sweep_args(0.0, 1.0, 3, Spacing::Linear)).unwrap();
        assert_eq!(g, vec![0.0, 0.5, 1.0]);
        assert!(sweep_grid(&sweep_args(0.0, 1.0, 3, Spacing::Log)).is_err());
        assert!(sweep_grid(&sweep_args(2.0, 1.0, 3, Spacing::Linear)).is_err());
    }

    #[test]
    fn auto_method_resolution() {
        let parse = |extra: &[&str]| {
            let mut v = vec!["casimir", "force2d"];
            v.extend_from_slice(extra);
            let Command::Force2d(p) = Cli::try_parse_from(v).unwrap().command else { unreachable!() };
            p
        };
        assert_eq!(resolve(&parse(&[]), false), MethodArg::LargeDistance);
        assert_eq!(resolve(&parse(&["--model", "lorentzian"]), false), MethodArg::ImagAxis);
        assert_eq!(resolve(&parse(&["--model", "lorentzian", "-T", "0.1"]), false), MethodArg::Roundtrip);
        assert_eq!(resolve(&parse(&["--model", "lorentzian", "-T", "0.1"]), true), MethodArg::LargeDistance);
        assert_eq!(resolve(&parse(&["--method", "high-T"]), true), MethodArg::HighT);
    }
}
