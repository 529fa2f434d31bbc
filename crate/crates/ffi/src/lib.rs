//! C ABI for `casimir-core`.
//!
//! Mirrors and cavities are opaque handles created and freed through this
//! interface. Every function returns a `CasimirStatus`; on failure a message is
//! available from `casimir_last_error_message` on the same thread. Results that
//! did not reach the requested tolerance are returned with `CASIMIR_OK` and
//! `converged = 0`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use casimir_core::casimir2d;
use casimir_core::casimir4d;
use casimir_core::quadrature::QuadratureSpec;
use casimir_core::scattering::{self, CavityConfig, MirrorModel, ReflectivityTable, TableUnits};
use casimir_core::special::{polylog, PolylogArg};
use casimir_core::{CasimirError, EnergyResult, ForceResult, Method};

pub type CasimirStatus = i32;

pub const CASIMIR_OK: CasimirStatus = 0;
pub const CASIMIR_ERR_NULL: CasimirStatus = 1;
pub const CASIMIR_ERR_DOMAIN: CasimirStatus = 2;
pub const CASIMIR_ERR_CAPABILITY: CasimirStatus = 3;
pub const CASIMIR_ERR_NONCONVERGENCE: CasimirStatus = 4;
pub const CASIMIR_ERR_IO: CasimirStatus = 5;
pub const CASIMIR_ERR_SINGULAR: CasimirStatus = 6;
pub const CASIMIR_ERR_PARSE: CasimirStatus = 7;
pub const CASIMIR_ERR_PANIC: CasimirStatus = 8;

pub type CasimirMethod = i32;

pub const CASIMIR_METHOD_AUTO: CasimirMethod = 0;
pub const CASIMIR_METHOD_IMAG_AXIS: CasimirMethod = 1;
pub const CASIMIR_METHOD_ROUNDTRIP_TIME: CasimirMethod = 2;
pub const CASIMIR_METHOD_LARGE_DISTANCE: CasimirMethod = 3;
pub const CASIMIR_METHOD_HIGH_TEMPERATURE: CasimirMethod = 4;
pub const CASIMIR_METHOD_MODE_SUM_ORACLE: CasimirMethod = 5;
pub const CASIMIR_METHOD_CLOSED_FORM: CasimirMethod = 6;

/// Opaque mirror model.
pub struct CasimirMirror {
    inner: MirrorModel,
}

/// Opaque two-mirror configuration.
pub struct CasimirCavity {
    inner: CavityConfig,
}

/// Tolerances and limits; obtain defaults from `casimir_quadrature_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CasimirQuadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub series_tail_tol: f64,
    pub max_roundtrips: usize,
}

/// A force, pressure or energy. `roundtrips` is -1 when no series was summed.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CasimirResult {
    pub value: f64,
    pub error_estimate: f64,
    pub method: CasimirMethod,
    pub converged: i32,
    pub roundtrips: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(CasimirStatus, String);

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &CasimirError) -> CasimirStatus {
    match err {
        CasimirError::Domain(_) => CASIMIR_ERR_DOMAIN,
        CasimirError::Capability(_) => CASIMIR_ERR_CAPABILITY,
        CasimirError::Singular(_) => CASIMIR_ERR_SINGULAR,
        CasimirError::NonConvergence(_) => CASIMIR_ERR_NONCONVERGENCE,
        CasimirError::Parse { .. } => CASIMIR_ERR_PARSE,
        CasimirError::Io(_) => CASIMIR_ERR_IO,
    }
}

impl From<CasimirError> for Failure {
    fn from(e: CasimirError) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CASIMIR_ERR_NULL, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CasimirStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            CASIMIR_OK
        }
        Ok(Err(Failure(code, msg))) => {
            set_last_error(&msg);
            code
        }
        Err(_) => {
            set_last_error("internal panic");
            CASIMIR_ERR_PANIC
        }
    }
}

fn method_code(m: Method) -> CasimirMethod {
    match m {
        Method::ImagAxis => CASIMIR_METHOD_IMAG_AXIS,
        Method::RoundtripTime => CASIMIR_METHOD_ROUNDTRIP_TIME,
        Method::LargeDistance => CASIMIR_METHOD_LARGE_DISTANCE,
        Method::HighTemperature => CASIMIR_METHOD_HIGH_TEMPERATURE,
        Method::ModeSumOracle => CASIMIR_METHOD_MODE_SUM_ORACLE,
        Method::ClosedForm => CASIMIR_METHOD_CLOSED_FORM,
    }
}

impl From<ForceResult> for CasimirResult {
    fn from(r: ForceResult) -> Self {
        Self {
            value: r.value,
            error_estimate: r.error_estimate,
            method: method_code(r.method),
            converged: r.converged as i32,
            roundtrips: r.roundtrips_used.map_or(-1, |n| n as i64),
        }
    }
}

impl From<EnergyResult> for CasimirResult {
    fn from(r: EnergyResult) -> Self {
        Self {
            value: r.value,
            error_estimate: r.error_estimate,
            method: method_code(r.method),
            converged: r.converged as i32,
            roundtrips: r.roundtrips_used.map_or(-1, |n| n as i64),
        }
    }
}

fn spec_from(quad: *const CasimirQuadrature) -> QuadratureSpec {
    // SAFETY: the caller passes null or a valid pointer
    match unsafe { quad.as_ref() } {
        None => QuadratureSpec::default(),
        Some(q) => QuadratureSpec {
            rel_tol: q.rel_tol,
            abs_tol: q.abs_tol,
            max_subdivisions: q.max_subdivisions,
            series_tail_tol: q.series_tail_tol,
            max_roundtrips: q.max_roundtrips,
        },
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn cavity_ref<'a>(c: *const CasimirCavity) -> Result<&'a CavityConfig, Failure> {
    c.as_ref().map(|c| &c.inner).ok_or_else(|| null("cavity"))
}

unsafe fn mirror_out(out: *mut *mut CasimirMirror, m: MirrorModel) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(CasimirMirror { inner: m })))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn casimir_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message describing the last failure on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn casimir_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn casimir_quadrature_default() -> CasimirQuadrature {
    let s = QuadratureSpec::default();
    CasimirQuadrature {
        rel_tol: s.rel_tol,
        abs_tol: s.abs_tol,
        max_subdivisions: s.max_subdivisions,
        series_tail_tol: s.series_tail_tol,
        max_roundtrips: s.max_roundtrips,
    }
}

/// Perfect mirror, `r = -1` at all frequencies.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_mirror_perfect(out: *mut *mut CasimirMirror) -> CasimirStatus {
    guard(|| mirror_out(out, MirrorModel::perfect()))
}

/// Single-pole mirror `r[ω] = -Ω/(Ω - iω)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_mirror_lorentzian(cutoff: f64, out: *mut *mut CasimirMirror) -> CasimirStatus {
    guard(|| mirror_out(out, MirrorModel::lorentzian(cutoff)?))
}

/// Mirror from `n` imaginary-axis samples `(xi[k], r[k])`. With `q_relative`
/// nonzero, abscissae are in units of `1/q` of the cavity the mirror is used in.
///
/// # Safety
/// `xi` and `r` must point to `n` readable doubles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_mirror_tabulated(
    xi: *const f64,
    r: *const f64,
    n: usize,
    q_relative: i32,
    out: *mut *mut CasimirMirror,
) -> CasimirStatus {
    guard(|| {
        if xi.is_null() || r.is_null() {
            return Err(null("sample array"));
        }
        let xs = std::slice::from_raw_parts(xi, n).to_vec();
        let rs = std::slice::from_raw_parts(r, n).to_vec();
        let units = if q_relative != 0 { TableUnits::QRelative } else { TableUnits::Absolute };
        mirror_out(out, MirrorModel::tabulated(ReflectivityTable::new(xs, rs, units)?))
    })
}

/// Mirror from a reflectivity table file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_mirror_load_table(path: *const c_char, out: *mut *mut CasimirMirror) -> CasimirStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let p =
            CStr::from_ptr(path).to_str().map_err(|_| Failure(CASIMIR_ERR_DOMAIN, "path is not UTF-8".to_string()))?;
        mirror_out(out, MirrorModel::tabulated(ReflectivityTable::load(p)?))
    })
}

/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn casimir_mirror_free(m: *mut CasimirMirror) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Two mirrors at separation `q` and temperature `temperature`. The mirrors
/// are copied; the handles stay owned by the caller.
///
/// # Safety
/// `m1`, `m2` must be valid mirror handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_cavity_new(
    m1: *const CasimirMirror,
    m2: *const CasimirMirror,
    q: f64,
    temperature: f64,
    out: *mut *mut CasimirCavity,
) -> CasimirStatus {
    guard(|| {
        let (Some(a), Some(b)) = (m1.as_ref(), m2.as_ref()) else {
            return Err(null("mirror"));
        };
        let cfg = CavityConfig::new(a.inner.clone(), b.inner.clone(), q, temperature)?;
        write_out(out, Box::into_raw(Box::new(CasimirCavity { inner: cfg })))
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn casimir_cavity_free(c: *mut CasimirCavity) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

fn bad_method(m: CasimirMethod) -> Failure {
    Failure(CASIMIR_ERR_DOMAIN, format!("method {m} is not available for this quantity"))
}

/// 2D force. `CASIMIR_METHOD_AUTO` uses the imaginary axis at `T = 0` and the
/// roundtrip series otherwise. `quad` may be null for defaults.
///
/// # Safety
/// `cavity` must be a valid handle, `quad` null or valid, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_force2d(
    cavity: *const CasimirCavity,
    method: CasimirMethod,
    quad: *const CasimirQuadrature,
    out: *mut CasimirResult,
) -> CasimirStatus {
    guard(|| {
        let cfg = cavity_ref(cavity)?;
        let spec = spec_from(quad);
        let r = match method {
            CASIMIR_METHOD_AUTO if cfg.temperature == 0.0 => casimir2d::force_imag_axis(cfg, &spec)?,
            CASIMIR_METHOD_AUTO | CASIMIR_METHOD_ROUNDTRIP_TIME => casimir2d::force_roundtrip_time(cfg, &spec)?,
            CASIMIR_METHOD_IMAG_AXIS => casimir2d::force_imag_axis(cfg, &spec)?,
            CASIMIR_METHOD_LARGE_DISTANCE => casimir2d::force_large_distance(cfg.r0(), cfg.q, cfg.temperature, &spec)?,
            CASIMIR_METHOD_MODE_SUM_ORACLE => casimir2d::mode_sum_oracle_2d(cfg.q)?,
            m => return Err(bad_method(m)),
        };
        write_out(out, r.into())
    })
}

/// 4D pressure, both polarizations. `CASIMIR_METHOD_AUTO` uses the imaginary
/// axis at `T = 0` and the large-distance thermal kernel otherwise.
///
/// # Safety
/// As for `casimir_force2d`.
#[no_mangle]
pub unsafe extern "C" fn casimir_force4d(
    cavity: *const CasimirCavity,
    method: CasimirMethod,
    quad: *const CasimirQuadrature,
    out: *mut CasimirResult,
) -> CasimirStatus {
    guard(|| {
        let cfg = cavity_ref(cavity)?;
        let spec = spec_from(quad);
        let (r0, q, t) = (cfg.r0(), cfg.q, cfg.temperature);
        let r = match method {
            CASIMIR_METHOD_AUTO if t == 0.0 => casimir4d::pressure_imag_axis(cfg, &spec)?,
            CASIMIR_METHOD_AUTO | CASIMIR_METHOD_LARGE_DISTANCE => {
                casimir4d::pressure_thermal_large_distance(r0, q, t, &spec)?
            }
            CASIMIR_METHOD_IMAG_AXIS => casimir4d::pressure_imag_axis(cfg, &spec)?,
            CASIMIR_METHOD_ROUNDTRIP_TIME => casimir4d::pressure_roundtrip(cfg, &spec)?,
            CASIMIR_METHOD_HIGH_TEMPERATURE => casimir4d::pressure_high_temperature(r0, q, t)?,
            CASIMIR_METHOD_MODE_SUM_ORACLE => casimir4d::mode_sum_oracle_4d(q)?,
            m => return Err(bad_method(m)),
        };
        write_out(out, r.into())
    })
}

/// 2D Casimir energy at `T = 0`, internal energy `𝓕 - T∂_T𝓕` at `T > 0`.
///
/// # Safety
/// As for `casimir_force2d`.
#[no_mangle]
pub unsafe extern "C" fn casimir_energy2d(
    cavity: *const CasimirCavity,
    quad: *const CasimirQuadrature,
    out: *mut CasimirResult,
) -> CasimirStatus {
    guard(|| {
        let cfg = cavity_ref(cavity)?;
        let spec = spec_from(quad);
        let r = if cfg.temperature == 0.0 {
            casimir2d::casimir_energy(cfg, &spec)?
        } else {
            casimir2d::internal_energy_thermal(cfg, &spec)?
        };
        write_out(out, r.into())
    })
}

/// 4D energy per unit area at `T = 0`.
///
/// # Safety
/// As for `casimir_force2d`.
#[no_mangle]
pub unsafe extern "C" fn casimir_energy4d(
    cavity: *const CasimirCavity,
    quad: *const CasimirQuadrature,
    out: *mut CasimirResult,
) -> CasimirStatus {
    guard(|| {
        let cfg = cavity_ref(cavity)?;
        write_out(out, casimir4d::energy_4d(cfg, &spec_from(quad))?.into())
    })
}

/// 2D free energy from the roundtrip series.
///
/// # Safety
/// As for `casimir_force2d`.
#[no_mangle]
pub unsafe extern "C" fn casimir_free_energy2d(
    cavity: *const CasimirCavity,
    quad: *const CasimirQuadrature,
    out: *mut CasimirResult,
) -> CasimirStatus {
    guard(|| {
        let cfg = cavity_ref(cavity)?;
        write_out(out, casimir2d::free_energy(cfg, &spec_from(quad))?.into())
    })
}

/// 2D large-distance force for loop reflectivity `r0`.
///
/// # Safety
/// `quad` null or valid, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_force2d_large_distance(
    r0: f64,
    q: f64,
    temperature: f64,
    quad: *const CasimirQuadrature,
    out: *mut CasimirResult,
) -> CasimirStatus {
    guard(|| write_out(out, casimir2d::force_large_distance(r0, q, temperature, &spec_from(quad))?.into()))
}

/// 4D large-distance pressure with the thermal kernel (`T = 0` allowed).
///
/// # Safety
/// `quad` null or valid, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_pressure4d_large_distance(
    r0: f64,
    q: f64,
    temperature: f64,
    quad: *const CasimirQuadrature,
    out: *mut CasimirResult,
) -> CasimirStatus {
    guard(|| write_out(out, casimir4d::pressure_thermal_large_distance(r0, q, temperature, &spec_from(quad))?.into()))
}

/// Classical 4D pressure `T ζ_{r0}(3)/(4πq³)`.
///
/// # Safety
/// `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_pressure4d_high_temperature(
    r0: f64,
    q: f64,
    temperature: f64,
    out: *mut CasimirResult,
) -> CasimirStatus {
    guard(|| write_out(out, casimir4d::pressure_high_temperature(r0, q, temperature)?.into()))
}

/// `Li_p(x)` for `|x| ≤ 1`, `p ≥ 1` (`x < 1` when `p = 1`).
///
/// # Safety
/// `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_polylog(x: f64, p: u32, out: *mut f64) -> CasimirStatus {
    guard(|| write_out(out, polylog(PolylogArg::new(x, p)?, 1e-15)?))
}

/// Airy factor `g[ω]` of the cavity; needs real-frequency amplitudes.
///
/// # Safety
/// `cavity` valid handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_airy_factor(cavity: *const CasimirCavity, omega: f64, out: *mut f64) -> CasimirStatus {
    guard(|| {
        let cfg = cavity_ref(cavity)?;
        write_out(out, scattering::airy_factor(cfg, omega)?)
    })
}

/// Cavity phase shift `Δ[ω]`; needs real-frequency amplitudes.
///
/// # Safety
/// `cavity` valid handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_phase_shift(cavity: *const CasimirCavity, omega: f64, out: *mut f64) -> CasimirStatus {
    guard(|| {
        let cfg = cavity_ref(cavity)?;
        write_out(out, scattering::phase_shift(cfg, omega)?)
    })
}
