//! C ABI over `kmp-core`.
//!
//! Matrices and rational functions are opaque handles owned by the caller
//! and released with the matching `_free` function. Strings returned through
//! `char **` out-parameters are heap-allocated, NUL-terminated UTF-8 and must
//! be released with `kmp_string_free`. Every fallible call returns a
//! `KmpStatus`; on failure `kmp_last_error` describes the problem for the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use kmp_core::invariants::{clr_check, homotopy_indices, kac_check};
use kmp_core::poincare::PoincareEngine;
use kmp_core::{classify, parse, report, weyl, CartanMatrix, Error, RatFunc};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KmpStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidMatrix = 3,
    RankLimit = 4,
    Precondition = 5,
    Arithmetic = 6,
    TheoremViolation = 7,
    Io = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// Opaque generalized Cartan matrix.
pub struct KmpCartan {
    inner: CartanMatrix,
}

/// Opaque rational function in `t`.
pub struct KmpRatFunc {
    inner: RatFunc,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn engine() -> &'static PoincareEngine {
    static ENGINE: OnceLock<PoincareEngine> = OnceLock::new();
    ENGINE.get_or_init(PoincareEngine::new)
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> KmpStatus {
    match e {
        Error::Parse(_) => KmpStatus::Parse,
        Error::InvalidMatrix(_) => KmpStatus::InvalidMatrix,
        Error::RankLimit { .. } => KmpStatus::RankLimit,
        Error::Precondition(_) => KmpStatus::Precondition,
        Error::ZeroDivision | Error::PoleAtOrigin | Error::Pole(_) | Error::NotInvertible => KmpStatus::Arithmetic,
        Error::TheoremViolation(_) => KmpStatus::TheoremViolation,
        Error::Io(_) => KmpStatus::Io,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (KmpStatus, String)>) -> KmpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            KmpStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            KmpStatus::Panic
        }
    }
}

fn fail(e: Error) -> (KmpStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (KmpStatus, String) {
    (KmpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (KmpStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (KmpStatus::Parse, format!("{what} is not valid UTF-8")))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (KmpStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (KmpStatus::Parse, "string contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), (KmpStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn cartan_ref<'a>(a: *const KmpCartan) -> Result<&'a CartanMatrix, (KmpStatus, String)> {
    a.as_ref().map(|h| &h.inner).ok_or_else(|| null("matrix handle"))
}

unsafe fn ratfunc_ref<'a>(f: *const KmpRatFunc) -> Result<&'a RatFunc, (KmpStatus, String)> {
    f.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| null("rational function handle"))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn kmp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kmp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"cartan": [[...]]}` or `{"coxeter_graph": {...}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_cartan_from_json(json: *const c_char, out: *mut *mut KmpCartan) -> KmpStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let a = parse(text).map_err(fail)?.into_cartan();
        put(out, KmpCartan { inner: a })
    })
}

/// Builds a matrix from `n * n` row-major entries.
///
/// # Safety
/// `entries` must point to `n * n` readable integers.
#[no_mangle]
pub unsafe extern "C" fn kmp_cartan_from_entries(n: usize, entries: *const i64, out: *mut *mut KmpCartan) -> KmpStatus {
    guard(|| {
        if entries.is_null() && n > 0 {
            return Err(null("entries"));
        }
        let len = n
            .checked_mul(n)
            .ok_or((KmpStatus::InvalidMatrix, "rank too large".into()))?;
        let data = if n == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(entries, len).to_vec()
        };
        let a = CartanMatrix::from_flat(n, data).map_err(fail)?;
        put(out, KmpCartan { inner: a })
    })
}

/// # Safety
/// `a` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kmp_cartan_free(a: *mut KmpCartan) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Rank of the matrix, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kmp_cartan_rank(a: *const KmpCartan) -> usize {
    a.as_ref().map_or(0, |h| h.inner.rank())
}

/// Poincaré series of the Weyl group.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_poincare(a: *const KmpCartan, out: *mut *mut KmpRatFunc) -> KmpStatus {
    guard(|| {
        let a = cartan_ref(a)?;
        let p = engine().series(a).map_err(fail)?;
        put(out, KmpRatFunc { inner: p })
    })
}

/// Parses `{"num": [...], "den": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_ratfunc_from_json(json: *const c_char, out: *mut *mut KmpRatFunc) -> KmpStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let f: RatFunc = serde_json::from_str(text).map_err(|e| (KmpStatus::Parse, e.to_string()))?;
        put(out, KmpRatFunc { inner: f })
    })
}

/// # Safety
/// `f` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kmp_ratfunc_free(f: *mut KmpRatFunc) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Canonical JSON form with coefficients as decimal strings.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_ratfunc_to_json(f: *const KmpRatFunc, out: *mut *mut c_char) -> KmpStatus {
    guard(|| {
        let f = ratfunc_ref(f)?;
        put_string(out, report::ratfunc_json(f).to_string())
    })
}

/// `deg num - deg den`. `*is_zero` is set for the zero function, whose
/// degree is left untouched.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kmp_ratfunc_degree(f: *const KmpRatFunc, degree: *mut i64, is_zero: *mut bool) -> KmpStatus {
    guard(|| {
        let f = ratfunc_ref(f)?;
        if degree.is_null() || is_zero.is_null() {
            return Err(null("output pointer"));
        }
        match f.degree() {
            Some(d) => {
                *degree = d;
                *is_zero = false;
            }
            None => *is_zero = true,
        }
        Ok(())
    })
}

/// Taylor coefficients `0..=order` as a JSON array of decimal strings.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_ratfunc_series(f: *const KmpRatFunc, order: usize, out: *mut *mut c_char) -> KmpStatus {
    guard(|| {
        let f = ratfunc_ref(f)?;
        let s = f.series(order).map_err(fail)?;
        put_string(out, report::series_json(&s).to_string())
    })
}

/// Value at `t = num / den`, written as `"p"` or `"p/q"`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_ratfunc_eval(
    f: *const KmpRatFunc,
    num: i64,
    den: i64,
    out: *mut *mut c_char,
) -> KmpStatus {
    guard(|| {
        let f = ratfunc_ref(f)?;
        if den == 0 {
            return Err(fail(Error::ZeroDivision));
        }
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        let v = f.eval(&q).map_err(fail)?;
        let s = report::eval_report(&q, &v)["value"].as_str().unwrap().to_string();
        put_string(out, s)
    })
}

/// Brute-force length counts for lengths `0..=depth`. Writes at most
/// `capacity` counts and stores how many levels were produced in
/// `*written`; returns `KMP_STATUS_BUFFER_TOO_SMALL` if they did not fit.
///
/// # Safety
/// `counts` must have room for `capacity` values; other pointers valid.
#[no_mangle]
pub unsafe extern "C" fn kmp_weyl_counts(
    a: *const KmpCartan,
    depth: usize,
    cap: usize,
    counts: *mut u64,
    capacity: usize,
    written: *mut usize,
    truncated: *mut bool,
) -> KmpStatus {
    guard(|| {
        let a = cartan_ref(a)?;
        if written.is_null() || truncated.is_null() || (counts.is_null() && capacity > 0) {
            return Err(null("output pointer"));
        }
        let c = weyl::weyl_counts(a, depth, cap);
        *written = c.counts.len();
        *truncated = c.truncated;
        if c.counts.len() > capacity {
            return Err((
                KmpStatus::BufferTooSmall,
                format!("need room for {} counts", c.counts.len()),
            ));
        }
        std::ptr::copy_nonoverlapping(c.counts.as_ptr(), counts, c.counts.len());
        Ok(())
    })
}

/// Classification report as JSON.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_classify_json(a: *const KmpCartan, out: *mut *mut c_char) -> KmpStatus {
    guard(|| {
        let a = cartan_ref(a)?;
        let tc = classify(a).map_err(fail)?;
        put_string(out, report::classify_report(a, &tc).to_string())
    })
}

/// Full Poincaré report (series, type, lcm form) as JSON.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_poincare_json(a: *const KmpCartan, out: *mut *mut c_char) -> KmpStatus {
    guard(|| {
        let a = cartan_ref(a)?;
        let r = engine().poincare(a).map_err(fail)?;
        put_string(out, report::poincare_report(a, &r).to_string())
    })
}

/// `B(t)` coefficients and the first negative one, as JSON.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_kac_json(a: *const KmpCartan, order: usize, out: *mut *mut c_char) -> KmpStatus {
    guard(|| {
        let a = cartan_ref(a)?;
        let r = kac_check(engine(), a, order).map_err(fail)?;
        put_string(out, report::kac_report(&r).to_string())
    })
}

/// Degree of `P(A)` with `K0` and `K1`, as JSON.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_clr_json(a: *const KmpCartan, out: *mut *mut c_char) -> KmpStatus {
    guard(|| {
        let a = cartan_ref(a)?;
        let r = clr_check(engine(), a).map_err(fail)?;
        put_string(out, report::clr_report(&r).to_string())
    })
}

/// Nonzero homotopy indices up to `order`, as a JSON object `k -> i_k`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kmp_indices_json(a: *const KmpCartan, order: usize, out: *mut *mut c_char) -> KmpStatus {
    guard(|| {
        let a = cartan_ref(a)?;
        let h = homotopy_indices(engine(), &a.coxeter_graph(), order).map_err(fail)?;
        put_string(out, report::indices_report(&h).to_string())
    })
}
