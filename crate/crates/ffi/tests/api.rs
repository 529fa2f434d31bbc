use std::f64::consts::PI;
use std::ffi::{CStr, CString};
use std::ptr;

use casimir_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(casimir_last_error_message()) }.to_string_lossy().into_owned()
}

fn empty_result() -> CasimirResult {
    CasimirResult { value: f64::NAN, error_estimate: f64::NAN, method: -1, converged: -1, roundtrips: -2 }
}

struct Cavity(*mut CasimirCavity);

impl Drop for Cavity {
    fn drop(&mut self) {
        unsafe { casimir_cavity_free(self.0) }
    }
}

fn cavity(m1: *mut CasimirMirror, m2: *mut CasimirMirror, q: f64, t: f64) -> Cavity {
    let mut c = ptr::null_mut();
    let status = unsafe { casimir_cavity_new(m1, m2, q, t, &mut c) };
    assert_eq!(status, CASIMIR_OK, "{}", last_error());
    unsafe {
        casimir_mirror_free(m1);
        casimir_mirror_free(m2);
    }
    Cavity(c)
}

fn perfect_mirror() -> *mut CasimirMirror {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { casimir_mirror_perfect(&mut m) }, CASIMIR_OK);
    assert!(!m.is_null());
    m
}

fn lorentzian_mirror(w: f64) -> *mut CasimirMirror {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { casimir_mirror_lorentzian(w, &mut m) }, CASIMIR_OK);
    m
}

#[test]
fn perfect_cavity_values() {
    let c = cavity(perfect_mirror(), perfect_mirror(), 1.0, 0.0);
    let mut r = empty_result();
    unsafe {
        assert_eq!(casimir_force2d(c.0, CASIMIR_METHOD_IMAG_AXIS, ptr::null(), &mut r), CASIMIR_OK);
        assert!((r.value / (PI / 24.0) - 1.0).abs() < 1e-9);
        assert_eq!(r.method, CASIMIR_METHOD_IMAG_AXIS);
        assert_eq!(r.converged, 1);
        assert_eq!(r.roundtrips, -1);

        assert_eq!(casimir_force4d(c.0, CASIMIR_METHOD_AUTO, ptr::null(), &mut r), CASIMIR_OK);
        assert!((r.value / (PI * PI / 240.0) - 1.0).abs() < 1e-9);

        assert_eq!(casimir_force4d(c.0, CASIMIR_METHOD_MODE_SUM_ORACLE, ptr::null(), &mut r), CASIMIR_OK);
        assert_eq!(r.value, PI * PI / 240.0);

        assert_eq!(casimir_energy4d(c.0, ptr::null(), &mut r), CASIMIR_OK);
        assert!((r.value / (-PI * PI / 720.0) - 1.0).abs() < 1e-8);

        assert_eq!(casimir_energy2d(c.0, ptr::null(), &mut r), CASIMIR_OK);
        assert!((r.value / (-PI / 24.0) - 1.0).abs() < 1e-8);
    }
}

#[test]
fn lorentzian_representations_agree() {
    let c = cavity(lorentzian_mirror(1.0), lorentzian_mirror(1.0), 1.0, 0.0);
    let quad = CasimirQuadrature { rel_tol: 1e-11, ..casimir_quadrature_default() };
    let (mut a, mut b) = (empty_result(), empty_result());
    unsafe {
        assert_eq!(casimir_force2d(c.0, CASIMIR_METHOD_IMAG_AXIS, &quad, &mut a), CASIMIR_OK);
        assert_eq!(casimir_force2d(c.0, CASIMIR_METHOD_ROUNDTRIP_TIME, &quad, &mut b), CASIMIR_OK);
    }
    assert!((a.value / b.value - 1.0).abs() < 1e-8);
    assert!(b.roundtrips > 0);
    assert_eq!(b.method, CASIMIR_METHOD_ROUNDTRIP_TIME);
}

#[test]
fn thermal_cavity_and_closed_forms() {
    let c = cavity(lorentzian_mirror(1.0), lorentzian_mirror(3.0), 1.0, 0.2);
    let mut r = empty_result();
    unsafe {
        assert_eq!(casimir_force2d(c.0, CASIMIR_METHOD_AUTO, ptr::null(), &mut r), CASIMIR_OK);
        assert!(r.value > 0.0 && r.converged == 1);
        assert_eq!(casimir_free_energy2d(c.0, ptr::null(), &mut r), CASIMIR_OK);
        assert!(r.value < 0.0);
        // 4D imaginary-axis forms are zero-temperature only
        assert_eq!(casimir_force4d(c.0, CASIMIR_METHOD_IMAG_AXIS, ptr::null(), &mut r), CASIMIR_ERR_DOMAIN);
        assert!(!last_error().is_empty());

        assert_eq!(casimir_pressure4d_high_temperature(1.0, 1.0, 1.0, &mut r), CASIMIR_OK);
        assert!((r.value - 1.2020569031595942 / (4.0 * PI)).abs() < 1e-12);
        assert_eq!(r.method, CASIMIR_METHOD_HIGH_TEMPERATURE);
        assert_eq!(casimir_force2d_large_distance(1.0, 2.0, 0.0, ptr::null(), &mut r), CASIMIR_OK);
        assert!((r.value - PI / 96.0).abs() < 1e-15);
        assert_eq!(casimir_pressure4d_large_distance(1.0, 1.0, 0.0, ptr::null(), &mut r), CASIMIR_OK);
        assert!((r.value - PI * PI / 240.0).abs() < 1e-15);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut m = ptr::null_mut();
    let mut r = empty_result();
    unsafe {
        assert_eq!(casimir_mirror_lorentzian(-1.0, &mut m), CASIMIR_ERR_DOMAIN);
        assert!(m.is_null());
        assert!(last_error().contains("cutoff"));
        assert_eq!(casimir_mirror_perfect(ptr::null_mut()), CASIMIR_ERR_NULL);
        assert_eq!(casimir_force2d(ptr::null(), CASIMIR_METHOD_AUTO, ptr::null(), &mut r), CASIMIR_ERR_NULL);

        let path = CString::new("/nonexistent/table.txt").unwrap();
        assert_eq!(casimir_mirror_load_table(path.as_ptr(), &mut m), CASIMIR_ERR_IO);

        let xi = [1.0, 0.0];
        let rr = [-1.0, -0.5];
        assert_eq!(casimir_mirror_tabulated(xi.as_ptr(), rr.as_ptr(), 2, 0, &mut m), CASIMIR_ERR_DOMAIN);

        assert_eq!(casimir_force2d_large_distance(1.5, 1.0, 0.0, ptr::null(), &mut r), CASIMIR_ERR_DOMAIN);

        let mut x = 0.0;
        assert_eq!(casimir_polylog(0.5, 2, &mut x), CASIMIR_OK);
        assert!(last_error().is_empty());
    }
    let c = cavity(perfect_mirror(), perfect_mirror(), 1.0, 0.0);
    let mut x = 0.0;
    unsafe {
        assert_eq!(casimir_airy_factor(c.0, PI, &mut x), CASIMIR_ERR_SINGULAR);
        assert_eq!(casimir_force2d(c.0, 99, ptr::null(), &mut r), CASIMIR_ERR_DOMAIN);
    }
}

#[test]
fn tabulated_mirror_has_no_time_kernel() {
    let xi = [0.0, 1.0, 2.0, 5.0];
    let rr = [-1.0, -0.5, -0.2, -0.05];
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { casimir_mirror_tabulated(xi.as_ptr(), rr.as_ptr(), 4, 0, &mut m) }, CASIMIR_OK);
    let c = cavity(m, perfect_mirror(), 1.0, 0.0);
    let mut r = empty_result();
    unsafe {
        assert_eq!(casimir_force2d(c.0, CASIMIR_METHOD_IMAG_AXIS, ptr::null(), &mut r), CASIMIR_OK);
        assert!(r.value > 0.0 && r.value < PI / 24.0);
        assert_eq!(casimir_force2d(c.0, CASIMIR_METHOD_ROUNDTRIP_TIME, ptr::null(), &mut r), CASIMIR_ERR_CAPABILITY);
    }
}

#[test]
fn table_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    std::fs::write(&path, "units: q-relative\n0 -1\n1 -0.5\n2 -0.2\n").unwrap();
    let cpath = CString::new(path.to_str().unwrap()).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { casimir_mirror_load_table(cpath.as_ptr(), &mut m) }, CASIMIR_OK, "{}", last_error());
    let c = cavity(m, perfect_mirror(), 2.0, 0.0);
    let mut r = empty_result();
    assert_eq!(unsafe { casimir_force2d(c.0, CASIMIR_METHOD_AUTO, ptr::null(), &mut r) }, CASIMIR_OK);
    assert!(r.value > 0.0);
}

#[test]
fn phase_shift_through_handle() {
    let c = cavity(lorentzian_mirror(1.0), lorentzian_mirror(2.0), 1.5, 0.0);
    let (mut delta, mut g) = (0.0, 0.0);
    unsafe {
        assert_eq!(casimir_phase_shift(c.0, 0.7, &mut delta), CASIMIR_OK);
        assert_eq!(casimir_airy_factor(c.0, 0.7, &mut g), CASIMIR_OK);
    }
    assert!(delta.is_finite() && g > 0.0);
}
