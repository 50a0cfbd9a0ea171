//! C interface. Every fallible function returns a [`ZrStatus`]; on failure
//! the message is available from [`zr_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zeta_resonance::engine::sigma1_ratio;
use zeta_resonance::gcd::{gcd_sum, strip_gcd_lower_bound};
use zeta_resonance::resonator::{
    build_critical_resonator, build_sigma1_resonator, build_strip_resonator, CriticalSeed, Resonator,
};
use zeta_resonance::zeta::{truncated_euler_product, zeta, EvalPoint};
use zeta_resonance::ZrError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZrStatus {
    Ok = 0,
    Pole = 1,
    PrecisionUnreachable = 2,
    Range = 3,
    Capacity = 4,
    Beta = 5,
    Kind = 6,
    Shape = 7,
    Validation = 8,
    Io = 9,
    Json = 10,
    NullPointer = 11,
    InvalidUtf8 = 12,
    Panic = 13,
}

/// Opaque resonator handle. Release with [`zr_resonator_free`].
pub struct ZrResonator(Resonator);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &ZrError) -> ZrStatus {
    match e {
        ZrError::Pole => ZrStatus::Pole,
        ZrError::PrecisionUnreachable { .. } => ZrStatus::PrecisionUnreachable,
        ZrError::Range(_) => ZrStatus::Range,
        ZrError::Capacity { .. } => ZrStatus::Capacity,
        ZrError::Beta { .. } => ZrStatus::Beta,
        ZrError::Kind(_) => ZrStatus::Kind,
        ZrError::Shape(_) => ZrStatus::Shape,
        ZrError::Sample { source, .. } => status_of(source),
        ZrError::Io { .. } => ZrStatus::Io,
        ZrError::Json(_) => ZrStatus::Json,
        _ => ZrStatus::Validation,
    }
}

enum Failure {
    Lib(ZrError),
    Null(&'static str),
    Utf8,
}

impl From<ZrError> for Failure {
    fn from(e: ZrError) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ZrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZrStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer passed for {what}"));
            ZrStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_error("input is not valid UTF-8".into());
            ZrStatus::InvalidUtf8
        }
        Err(_) => {
            set_error("internal panic".into());
            ZrStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn handle<'a>(p: *const ZrResonator) -> Result<&'a Resonator, Failure> {
    p.as_ref().map(|h| &h.0).ok_or(Failure::Null("resonator"))
}

unsafe fn put_resonator(dst: *mut *mut ZrResonator, r: Resonator) -> Result<(), Failure> {
    *out(dst, "out")? = Box::into_raw(Box::new(ZrResonator(r)));
    Ok(())
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn zr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// ζ(σ + it) to absolute precision `precision`.
///
/// # Safety
/// `re` and `im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_zeta(sigma: f64, t: f64, precision: f64, re: *mut f64, im: *mut f64) -> ZrStatus {
    guard(|| {
        let v = zeta(EvalPoint::new(sigma, t)?, precision)?;
        *out(re, "re")? = v.re;
        *out(im, "im")? = v.im;
        Ok(())
    })
}

/// ∏_{p ≤ y} (1 − p^{−1−it})^{−1}.
///
/// # Safety
/// `re` and `im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_truncated_euler_product(t: f64, y: f64, re: *mut f64, im: *mut f64) -> ZrStatus {
    guard(|| {
        let v = truncated_euler_product(t, y)?;
        *out(re, "re")? = v.re;
        *out(im, "im")? = v.im;
        Ok(())
    })
}

/// # Safety
/// `dst` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_resonator_strip(x: f64, ell: u32, dst: *mut *mut ZrResonator) -> ZrStatus {
    guard(|| put_resonator(dst, build_strip_resonator(x, ell)?))
}

/// # Safety
/// `dst` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_resonator_sigma1(x: f64, dst: *mut *mut ZrResonator) -> ZrStatus {
    guard(|| put_resonator(dst, build_sigma1_resonator(x)?))
}

/// # Safety
/// `dst` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_resonator_critical(
    t: u64,
    kappa: f64,
    gamma: f64,
    classes: u32,
    dst: *mut *mut ZrResonator,
) -> ZrStatus {
    guard(|| put_resonator(dst, build_critical_resonator(t, kappa, CriticalSeed { gamma, classes })?))
}

/// # Safety
/// `r` must come from a `zr_resonator_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zr_resonator_free(r: *mut ZrResonator) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// R(t).
///
/// # Safety
/// `r` must be a live handle; `re` and `im` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_resonator_eval(r: *const ZrResonator, t: f64, re: *mut f64, im: *mut f64) -> ZrStatus {
    guard(|| {
        let v = handle(r)?.eval(t);
        *out(re, "re")? = v.re;
        *out(im, "im")? = v.im;
        Ok(())
    })
}

/// Support size (number of primes for sigma1).
///
/// # Safety
/// `r` must be a live handle; `card` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_resonator_card(r: *const ZrResonator, card: *mut usize) -> ZrStatus {
    guard(|| {
        *out(card, "card")? = handle(r)?.card();
        Ok(())
    })
}

/// ‖R‖² = Σ r(n)².
///
/// # Safety
/// `r` must be a live handle; `norm2` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_resonator_norm2(r: *const ZrResonator, norm2: *mut f64) -> ZrStatus {
    guard(|| {
        *out(norm2, "norm2")? = handle(r)?.norm2();
        Ok(())
    })
}

/// Serialize to JSON. Free the string with [`zr_string_free`].
///
/// # Safety
/// `r` must be a live handle; `json` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_resonator_to_json(r: *const ZrResonator, json: *mut *mut c_char) -> ZrStatus {
    guard(|| {
        let s = handle(r)?.to_json()?;
        *out(json, "json")? = CString::new(s).map_err(|_| Failure::Utf8)?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `dst` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_resonator_from_json(json: *const c_char, dst: *mut *mut ZrResonator) -> ZrStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        let s = CStr::from_ptr(json).to_str().map_err(|_| Failure::Utf8)?;
        put_resonator(dst, Resonator::from_json(s)?)
    })
}

/// # Safety
/// `s` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn zr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Σ_{mk=n} r(m)r(n)k^{−σ} over the support.
///
/// # Safety
/// `r` must be a live handle; `value` and `triples` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_gcd_sum(r: *const ZrResonator, sigma: f64, value: *mut f64, triples: *mut u64) -> ZrStatus {
    guard(|| {
        let g = gcd_sum(handle(r)?, sigma)?;
        *out(value, "value")? = g.value;
        *out(triples, "triples")? = g.triple_count;
        Ok(())
    })
}

/// ℓ^{π(x)} ∏_{p ≤ x} (1 + p^{−σ})^{1 − 1/ℓ}.
#[no_mangle]
pub extern "C" fn zr_strip_gcd_lower_bound(x: f64, ell: u32, sigma: f64) -> f64 {
    strip_gcd_lower_bound(x, ell, sigma)
}

/// Series, enumerated tail and Euler-product closed form of the σ = 1 ratio.
///
/// # Safety
/// The three output pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn zr_sigma1_ratio(
    x: f64,
    k_cutoff: u64,
    series: *mut f64,
    tail: *mut f64,
    closed_form: *mut f64,
) -> ZrStatus {
    guard(|| {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(ZrError::Range(format!("x = {x} must be non-negative")).into());
        }
        let r = sigma1_ratio(x, k_cutoff);
        *out(series, "series")? = r.series;
        *out(tail, "tail")? = r.tail;
        *out(closed_form, "closed_form")? = r.closed_form;
        Ok(())
    })
}
