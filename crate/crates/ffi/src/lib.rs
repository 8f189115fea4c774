//! C interface to hk-forge.
//!
//! Elements of Γ live behind the opaque `HkElement` handle. Every fallible call
//! returns an `HkStatus`; on failure `hk_last_error()` describes the most
//! recent error on the calling thread. Strings handed out by the library are
//! NUL-terminated and must be released with `hk_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hk_forge::hk::{ehk, Singularity, Variant};
use hk_forge::oracle::{direct_hk, parse_poly};
use hk_forge::{Basis, Error, GammaElement, Prime};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    NotPrime = 3,
    InvalidInput = 4,
    Syntax = 5,
    CharacteristicMismatch = 6,
    SizeLimit = 7,
    NoPeriodFound = 8,
    Computation = 9,
    Panic = 10,
}

/// Coefficient basis for rendering.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkBasis {
    Delta = 0,
    Lambda = 1,
}

/// Quadric family.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkVariant {
    A1 = 0,
    A2 = 1,
}

/// Opaque element of the representation ring.
pub struct HkElement {
    inner: GammaElement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> HkStatus {
    match e {
        Error::NotPrime(_) => HkStatus::NotPrime,
        Error::Syntax { .. } | Error::UnknownVariable(_) => HkStatus::Syntax,
        Error::CharacteristicMismatch { .. } => HkStatus::CharacteristicMismatch,
        Error::SizeLimit { .. } => HkStatus::SizeLimit,
        Error::NoPeriodFound(_) => HkStatus::NoPeriodFound,
        Error::InvalidInput(_) | Error::NotPowerOfTwo(_) | Error::LevelMismatch(..) => HkStatus::InvalidInput,
        _ => HkStatus::Computation,
    }
}

struct Fail(HkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> HkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HkStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HkStatus::Panic
        }
    }
}

unsafe fn utf8<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(HkStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(HkStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn element<'a>(e: *const HkElement) -> Result<&'a GammaElement, Fail> {
    e.as_ref().map(|h| &h.inner).ok_or_else(|| Fail(HkStatus::NullPointer, "null element".into()))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(HkStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn prime(p: u32) -> Result<Prime, Fail> {
    Ok(Prime::new(p)?)
}

unsafe fn give_element(out: *mut *mut HkElement, inner: GammaElement) {
    *out = Box::into_raw(Box::new(HkElement { inner }));
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(HkStatus::Computation, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn hk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `text` (e.g. `"2*d3 + 1/2*d4"` or `"l0 - l1"`) in characteristic `p`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_element_parse(p: u32, text: *const c_char, out: *mut *mut HkElement) -> HkStatus {
    guard(|| {
        out_ptr(out)?;
        let e = GammaElement::parse(utf8(text)?, prime(p)?)?;
        give_element(out, e);
        Ok(())
    })
}

/// `δ_i` (basis Delta) or `λ_i` (basis Lambda).
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_element_basis(p: u32, basis: HkBasis, i: u32, out: *mut *mut HkElement) -> HkStatus {
    guard(|| {
        out_ptr(out)?;
        let p = prime(p)?;
        let e = match basis {
            HkBasis::Delta => GammaElement::delta(p, i),
            HkBasis::Lambda => GammaElement::lambda(p, i),
        };
        give_element(out, e);
        Ok(())
    })
}

/// Release an element. NULL is ignored.
///
/// # Safety
/// `e` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hk_element_free(e: *mut HkElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// `*out = a + b`.
///
/// # Safety
/// `a` and `b` must be live elements and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_element_add(
    a: *const HkElement,
    b: *const HkElement,
    out: *mut *mut HkElement,
) -> HkStatus {
    guard(|| {
        out_ptr(out)?;
        let sum = element(a)?.add(element(b)?)?;
        give_element(out, sum);
        Ok(())
    })
}

/// `*out = a·b`.
///
/// # Safety
/// `a` and `b` must be live elements and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_element_mul(
    a: *const HkElement,
    b: *const HkElement,
    out: *mut *mut HkElement,
) -> HkStatus {
    guard(|| {
        out_ptr(out)?;
        let prod = element(a)?.mul(element(b)?)?;
        give_element(out, prod);
        Ok(())
    })
}

/// `α(e)` as a reduced fraction `"num/den"` (or `"num"` when integral).
///
/// # Safety
/// `e` must be a live element and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_element_alpha(e: *const HkElement, out: *mut *mut c_char) -> HkStatus {
    guard(|| {
        out_ptr(out)?;
        let a = element(e)?.alpha();
        give_string(out, a.to_string())
    })
}

/// Render `e` in the requested basis.
///
/// # Safety
/// `e` must be a live element and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_element_render(e: *const HkElement, basis: HkBasis, out: *mut *mut c_char) -> HkStatus {
    guard(|| {
        out_ptr(out)?;
        let target = match basis {
            HkBasis::Delta => Basis::Delta,
            HkBasis::Lambda => Basis::Lambda,
        };
        give_string(out, element(e)?.to_basis(target).render())
    })
}

unsafe fn give_report(spec: Singularity, p: u32, out: *mut *mut c_char) -> Result<(), Fail> {
    let report = ehk(&spec, prime(p)?)?;
    let json = serde_json::to_string(&report).map_err(|e| Fail(HkStatus::Computation, e.to_string()))?;
    give_string(out, json)
}

/// Hilbert–Kunz multiplicity of the quadric `variant` of dimension `d`, as a
/// JSON report with `ehk` encoded as `{"num": "...", "den": "..."}`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_ehk_quadric(p: u32, variant: HkVariant, d: u32, out: *mut *mut c_char) -> HkStatus {
    guard(|| {
        out_ptr(out)?;
        let variant = match variant {
            HkVariant::A1 => Variant::A1,
            HkVariant::A2 => Variant::A2,
        };
        give_report(Singularity::Quadric { variant, d }, p, out)
    })
}

/// Hilbert–Kunz multiplicity of `x_0^{e_0} + ... + x_{n-1}^{e_{n-1}}`, as a JSON report.
///
/// # Safety
/// `exponents` must point to `n` readable values and `out` be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_ehk_diagonal(p: u32, exponents: *const u32, n: usize, out: *mut *mut c_char) -> HkStatus {
    guard(|| {
        out_ptr(out)?;
        if exponents.is_null() {
            return Err(Fail(HkStatus::NullPointer, "null exponents".into()));
        }
        let exps = std::slice::from_raw_parts(exponents, n).to_vec();
        give_report(Singularity::Diagonal(exps), p, out)
    })
}

/// `HK_e` of `poly` in `nvars` variables over F_p, by direct linear algebra.
///
/// # Safety
/// `poly` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_direct_hk(p: u32, nvars: usize, poly: *const c_char, e: u32, out: *mut u64) -> HkStatus {
    guard(|| {
        out_ptr(out)?;
        let f = parse_poly(utf8(poly)?, prime(p)?, nvars)?;
        *out = direct_hk(&f, e)?;
        Ok(())
    })
}
