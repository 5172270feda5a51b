//! C ABI over `qnd-core`.
//!
//! Every fallible call returns a [`QndStatus`] and writes results through out
//! pointers. Objects are opaque handles released with their `_free`
//! function; strings returned by the library are released with
//! [`qnd_string_free`]. The message of the most recent failure on the
//! calling thread is available from [`qnd_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qnd_core::lattice::{
    coordinate_operator, lorentz_generator, operators_equal, translation_generator, AntiEuclideanMetric, Axis,
    ShiftPolyOperator,
};
use qnd_core::network::{net_invariants, FiniteNet};
use qnd_core::scalar::Rational;
use qnd_core::symmetry::{classify_lorentz, Handedness, NullTetrad, Permutation};
use qnd_core::toy::{self, Potential, ToyConfig};
use qnd_core::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QndStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Singular = 3,
    NotWellPosed = 4,
    Utf8 = 5,
    Panic = 6,
}

/// A lattice operator. Opaque.
pub struct QndOperator(ShiftPolyOperator);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QndComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QndLorentzClass {
    /// Positive determinant.
    pub proper: bool,
    pub determinant: f64,
    pub metric_error: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> QndStatus {
    match err {
        Error::Singular => QndStatus::Singular,
        Error::Contraction(_) => QndStatus::NotWellPosed,
        _ => QndStatus::InvalidArgument,
    }
}

fn fail(status: QndStatus, msg: impl Into<String>) -> QndStatus {
    set_error(msg);
    status
}

fn from_core(err: Error) -> QndStatus {
    fail(status_of(&err), err.to_string())
}

/// Runs `f`, turning panics into [`QndStatus::Panic`].
fn guard(f: impl FnOnce() -> QndStatus) -> QndStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(QndStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, QndStatus> {
    if s.is_null() {
        return Err(fail(QndStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(QndStatus::Utf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> QndStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            QndStatus::Ok
        }
        Err(e) => fail(QndStatus::Utf8, e.to_string()),
    }
}

unsafe fn write_operator(out: *mut *mut QndOperator, op: ShiftPolyOperator) -> QndStatus {
    if out.is_null() {
        return fail(QndStatus::NullPointer, "null out pointer");
    }
    *out = Box::into_raw(Box::new(QndOperator(op)));
    QndStatus::Ok
}

fn axis(mu: u32) -> Result<Axis, QndStatus> {
    Axis::new(mu as usize).map_err(from_core)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qnd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qnd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qnd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Translation generator `p̃_μ`, `mu` in 1..=4.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_operator_translation(mu: u32, out: *mut *mut QndOperator) -> QndStatus {
    guard(|| match axis(mu) {
        Ok(a) => write_operator(out, translation_generator(a)),
        Err(s) => s,
    })
}

/// Coordinate operator `x^μ`, `mu` in 1..=4.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_operator_coordinate(mu: u32, out: *mut *mut QndOperator) -> QndStatus {
    guard(|| match axis(mu) {
        Ok(a) => write_operator(out, coordinate_operator(a)),
        Err(s) => s,
    })
}

/// Lorentz generator `l̃_{μλ}`, `mu != lam`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_operator_lorentz(mu: u32, lam: u32, out: *mut *mut QndOperator) -> QndStatus {
    guard(|| {
        let (a, b) = match (axis(mu), axis(lam)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match lorentz_generator(a, b, &AntiEuclideanMetric::new()) {
            Ok(op) => write_operator(out, op),
            Err(e) => from_core(e),
        }
    })
}

/// Scalar multiple of the identity, `num / den`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_operator_scalar(num: i64, den: i64, out: *mut *mut QndOperator) -> QndStatus {
    guard(|| {
        if den == 0 {
            return fail(QndStatus::InvalidArgument, "zero denominator");
        }
        write_operator(out, ShiftPolyOperator::scalar(Rational::new(num.into(), den.into())))
    })
}

unsafe fn binary(
    a: *const QndOperator,
    b: *const QndOperator,
    out: *mut *mut QndOperator,
    f: fn(&ShiftPolyOperator, &ShiftPolyOperator) -> ShiftPolyOperator,
) -> QndStatus {
    guard(|| {
        if a.is_null() || b.is_null() {
            return fail(QndStatus::NullPointer, "null operator");
        }
        write_operator(out, f(&(*a).0, &(*b).0))
    })
}

/// `[a, b] = ab − ba` as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_operator_commutator(
    a: *const QndOperator,
    b: *const QndOperator,
    out: *mut *mut QndOperator,
) -> QndStatus {
    binary(a, b, out, |x, y| x.commutator(y))
}

/// Composition `ab` as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_operator_compose(
    a: *const QndOperator,
    b: *const QndOperator,
    out: *mut *mut QndOperator,
) -> QndStatus {
    binary(a, b, out, |x, y| x.compose(y))
}

/// Sum `a + b` as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_operator_add(
    a: *const QndOperator,
    b: *const QndOperator,
    out: *mut *mut QndOperator,
) -> QndStatus {
    binary(a, b, out, |x, y| x.clone() + y.clone())
}

/// Exact operator equality on all of ℕ⁴.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_operator_equal(a: *const QndOperator, b: *const QndOperator, out: *mut bool) -> QndStatus {
    guard(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            return fail(QndStatus::NullPointer, "null argument");
        }
        *out = operators_equal(&(*a).0, &(*b).0);
        QndStatus::Ok
    })
}

/// Human-readable form; free with [`qnd_string_free`].
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_operator_to_string(a: *const QndOperator, out: *mut *mut c_char) -> QndStatus {
    guard(|| {
        if a.is_null() || out.is_null() {
            return fail(QndStatus::NullPointer, "null argument");
        }
        write_string(out, (*a).0.to_string())
    })
}

/// # Safety
/// `a` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn qnd_operator_free(a: *mut QndOperator) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Runs a named suite (`ccr`, `vacuum`, `dipole`, `quadrupole`,
/// `invariants`, `exchange`, `toy`, `s4`, `all`) and writes its JSON report.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out_json` and `out_passed` must
/// be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_run_suite(
    name: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
    out_passed: *mut bool,
) -> QndStatus {
    guard(|| {
        if out_json.is_null() || out_passed.is_null() {
            return fail(QndStatus::NullPointer, "null out pointer");
        }
        let name = match read_str(name) {
            Ok(n) => n,
            Err(s) => return s,
        };
        match qnd_core::suites::run_suite(name, seed) {
            Ok(r) => {
                *out_passed = r.passed();
                write_string(out_json, r.to_json())
            }
            Err(e) => from_core(e),
        }
    })
}

/// Evaluates the path invariant `N(n)` on a net given as JSON
/// `{"num_nodes": k, "arrows": [[tail, head], ...]}` and writes the report.
///
/// # Safety
/// `net_json` must be a NUL-terminated string; `out_json` and `out_passed`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_net_invariants(
    net_json: *const c_char,
    n: u32,
    out_json: *mut *mut c_char,
    out_passed: *mut bool,
) -> QndStatus {
    guard(|| {
        if out_json.is_null() || out_passed.is_null() {
            return fail(QndStatus::NullPointer, "null out pointer");
        }
        if n == 0 {
            return fail(QndStatus::InvalidArgument, "n must be at least 1");
        }
        let net = match read_str(net_json).map(FiniteNet::from_json) {
            Ok(Ok(net)) => net,
            Ok(Err(e)) => return from_core(e),
            Err(s) => return s,
        };
        let r = net_invariants(&net, n as usize);
        *out_passed = r.passed();
        write_string(out_json, r.to_json())
    })
}

/// Lorentz class of the S(4) permutation with 1-based `images[0..4]`.
///
/// # Safety
/// `images` must point to 4 readable bytes; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_s4_classify(images: *const u8, out: *mut QndLorentzClass) -> QndStatus {
    guard(|| {
        if images.is_null() || out.is_null() {
            return fail(QndStatus::NullPointer, "null argument");
        }
        let mut buf = [0u8; 4];
        ptr::copy_nonoverlapping(images, buf.as_mut_ptr(), 4);
        let class = Permutation::new(buf).and_then(|g| classify_lorentz(g, &NullTetrad::tetrahedral()));
        match class {
            Ok(c) => {
                *out = QndLorentzClass {
                    proper: c.handedness == Handedness::Proper,
                    determinant: c.determinant,
                    metric_error: c.metric_error,
                };
                QndStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Remote (propagator chain) and local (network contraction) amplitudes of
/// the toy model. `potential` is `free` or `harmonic`; the source and sink
/// are drawn from `seed` exactly as the `qnd toy` command does.
///
/// # Safety
/// `potential` must be a NUL-terminated string; `out_remote` and
/// `out_local` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qnd_toy_amplitudes(
    dim: u32,
    steps: u32,
    potential: *const c_char,
    tav: f64,
    seed: u64,
    out_remote: *mut QndComplex,
    out_local: *mut QndComplex,
) -> QndStatus {
    guard(|| {
        if out_remote.is_null() || out_local.is_null() {
            return fail(QndStatus::NullPointer, "null out pointer");
        }
        if steps == 0 {
            return fail(QndStatus::InvalidArgument, "steps must be at least 1");
        }
        let potential = match read_str(potential).map(Potential::parse) {
            Ok(Ok(p)) => p,
            Ok(Err(e)) => return from_core(e),
            Err(s) => return s,
        };
        let cfg = match ToyConfig::from_seed(dim as usize, steps as usize, potential, tav, 1.0, seed) {
            Ok(c) => c,
            Err(e) => return from_core(e),
        };
        let remote = toy::remote_amplitude(&cfg);
        let (e, d) = toy::build_experiment_and_dynamics(&cfg);
        match toy::local_amplitude(&e, &d) {
            Ok(local) => {
                *out_remote = QndComplex {
                    re: remote.re,
                    im: remote.im,
                };
                *out_local = QndComplex {
                    re: local.re,
                    im: local.im,
                };
                QndStatus::Ok
            }
            Err(err) => from_core(err),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::Singular), QndStatus::Singular);
        assert_eq!(status_of(&Error::Contraction("x".into())), QndStatus::NotWellPosed);
        assert_eq!(status_of(&Error::Axis(7)), QndStatus::InvalidArgument);
    }

    #[test]
    fn panics_become_status() {
        assert_eq!(guard(|| panic!("boom")), QndStatus::Panic);
        let msg = unsafe { CStr::from_ptr(qnd_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "boom");
    }
}
