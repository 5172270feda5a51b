use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qnd_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qnd_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qnd_last_error()) }.to_str().unwrap().to_owned()
}

fn op(f: impl FnOnce(*mut *mut QndOperator) -> QndStatus) -> *mut QndOperator {
    let mut out = ptr::null_mut();
    assert_eq!(f(&mut out), QndStatus::Ok, "{}", last_error());
    out
}

#[test]
fn ccr_through_handles() {
    unsafe {
        for mu in 1..=4 {
            for lam in 1..=4 {
                let p = op(|o| qnd_operator_translation(mu, o));
                let x = op(|o| qnd_operator_coordinate(lam, o));
                let c = op(|o| qnd_operator_commutator(p, x, o));
                let delta = op(|o| qnd_operator_scalar((mu == lam) as i64, 1, o));
                let mut eq = false;
                assert_eq!(qnd_operator_equal(c, delta, &mut eq), QndStatus::Ok);
                assert!(eq, "[p{mu}, x{lam}]");
                for h in [p, x, c, delta] {
                    qnd_operator_free(h);
                }
            }
        }
    }
}

#[test]
fn compose_add_and_print() {
    unsafe {
        let p = op(|o| qnd_operator_translation(1, o));
        let x = op(|o| qnd_operator_coordinate(1, o));
        let px = op(|o| qnd_operator_compose(p, x, o));
        let xp = op(|o| qnd_operator_compose(x, p, o));
        let one = op(|o| qnd_operator_scalar(1, 1, o));
        let xp1 = op(|o| qnd_operator_add(xp, one, o));
        let mut eq = false;
        assert_eq!(qnd_operator_equal(px, xp1, &mut eq), QndStatus::Ok);
        assert!(eq);
        let mut s = ptr::null_mut();
        assert_eq!(qnd_operator_to_string(p, &mut s), QndStatus::Ok);
        assert!(!take_string(s).is_empty());
        for h in [p, x, px, xp, one, xp1] {
            qnd_operator_free(h);
        }
        qnd_operator_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(qnd_operator_translation(5, &mut out), QndStatus::InvalidArgument);
        assert!(out.is_null());
        assert!(last_error().contains("axis 5"));
        assert_eq!(qnd_operator_lorentz(2, 2, &mut out), QndStatus::InvalidArgument);
        assert_eq!(qnd_operator_scalar(1, 0, &mut out), QndStatus::InvalidArgument);
        assert_eq!(qnd_operator_translation(1, ptr::null_mut()), QndStatus::NullPointer);
        let mut eq = false;
        assert_eq!(
            qnd_operator_equal(ptr::null(), ptr::null(), &mut eq),
            QndStatus::NullPointer
        );
        let mut json = ptr::null_mut();
        let mut passed = false;
        let bogus = CString::new("bogus").unwrap();
        assert_eq!(
            qnd_run_suite(bogus.as_ptr(), 1, &mut json, &mut passed),
            QndStatus::InvalidArgument
        );
        assert_eq!(
            qnd_run_suite(ptr::null(), 1, &mut json, &mut passed),
            QndStatus::NullPointer
        );
        let bad = [1u8, 1, 2, 3];
        let mut class = QndLorentzClass::default();
        assert_eq!(qnd_s4_classify(bad.as_ptr(), &mut class), QndStatus::InvalidArgument);
        let net = CString::new(r#"{"num_nodes": 2, "arrows": [[0, 9]]}"#).unwrap();
        assert_eq!(
            qnd_net_invariants(net.as_ptr(), 1, &mut json, &mut passed),
            QndStatus::InvalidArgument
        );
    }
}

#[test]
fn suite_json() {
    unsafe {
        let name = CString::new("ccr").unwrap();
        let mut json = ptr::null_mut();
        let mut passed = false;
        assert_eq!(qnd_run_suite(name.as_ptr(), 7, &mut json, &mut passed), QndStatus::Ok);
        assert!(passed);
        let text = take_string(json);
        assert!(text.contains("\"suite\": \"ccr\""));
    }
}

#[test]
fn net_invariants_json() {
    unsafe {
        let net = CString::new(r#"{"num_nodes": 3, "arrows": [[0, 1], [1, 2]]}"#).unwrap();
        let mut json = ptr::null_mut();
        let mut passed = false;
        assert_eq!(
            qnd_net_invariants(net.as_ptr(), 2, &mut json, &mut passed),
            QndStatus::Ok
        );
        assert!(passed);
        assert!(take_string(json).contains("N(2)-matches-oracle"));
    }
}

#[test]
fn s4_split() {
    let mut proper = 0;
    let mut total = 0;
    for a in 1..=4u8 {
        for b in 1..=4u8 {
            for c in 1..=4u8 {
                for d in 1..=4u8 {
                    let images = [a, b, c, d];
                    let mut class = QndLorentzClass::default();
                    let s = unsafe { qnd_s4_classify(images.as_ptr(), &mut class) };
                    if s == QndStatus::Ok {
                        total += 1;
                        proper += class.proper as usize;
                        assert!(class.metric_error < 1e-10);
                        assert!((class.determinant.abs() - 1.0).abs() < 1e-10);
                    }
                }
            }
        }
    }
    assert_eq!((total, proper), (24, 12));
}

#[test]
fn toy_amplitudes_agree() {
    let pot = CString::new("harmonic").unwrap();
    let mut remote = QndComplex::default();
    let mut local = QndComplex::default();
    let s = unsafe { qnd_toy_amplitudes(8, 4, pot.as_ptr(), 1.0, 5, &mut remote, &mut local) };
    assert_eq!(s, QndStatus::Ok, "{}", last_error());
    assert!((remote.re - local.re).abs() < 1e-10 && (remote.im - local.im).abs() < 1e-10);
    assert!(remote.re != 0.0 || remote.im != 0.0);
    let bad = CString::new("quartic").unwrap();
    let s = unsafe { qnd_toy_amplitudes(8, 4, bad.as_ptr(), 1.0, 5, &mut remote, &mut local) };
    assert_eq!(s, QndStatus::InvalidArgument);
    let s = unsafe { qnd_toy_amplitudes(8, 4, pot.as_ptr(), -1.0, 5, &mut remote, &mut local) };
    assert_eq!(s, QndStatus::InvalidArgument);
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(qnd_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
