//! C ABI over the `adhm` library.
//!
//! Data cross the boundary as opaque [`AdhmDatum`] handles built from the
//! JSON datum format.  Every fallible function returns an [`AdhmStatus`];
//! on failure the message is available from [`adhm_last_error`] until the
//! next call on the same thread.  Strings returned through `out` pointers
//! are owned by the caller and must be released with [`adhm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use adhm::adhm::AnyDatum;
use adhm::commands;
use adhm::counting;
use adhm::error::Error;

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdhmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    DimensionMismatch = 4,
    CommonEigenvalue = 5,
    NotSplitOverBase = 6,
    NotStable = 7,
    Unsupported = 8,
    SetMismatch = 9,
    /// Any other library error; see `adhm_last_error`.
    Failed = 10,
    Panic = 11,
}

/// Opaque datum handle.
pub struct AdhmDatum {
    inner: AnyDatum,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> AdhmStatus {
    match e {
        Error::Parse(_) => AdhmStatus::Parse,
        Error::DimensionMismatch(_) => AdhmStatus::DimensionMismatch,
        Error::CommonEigenvalue => AdhmStatus::CommonEigenvalue,
        Error::NotSplitOverBase => AdhmStatus::NotSplitOverBase,
        Error::NotStable(_) => AdhmStatus::NotStable,
        Error::Unsupported(_) => AdhmStatus::Unsupported,
        Error::SetMismatch(_) => AdhmStatus::SetMismatch,
        _ => AdhmStatus::Failed,
    }
}

/// Runs `f`, recording errors and catching panics.
fn guard(f: impl FnOnce() -> Result<(), (AdhmStatus, String)>) -> AdhmStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AdhmStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            AdhmStatus::Panic
        }
    }
}

fn lib(e: Error) -> (AdhmStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (AdhmStatus, String) {
    (AdhmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (AdhmStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (AdhmStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (AdhmStatus, String)> {
    let c = CString::new(s).map_err(|e| (AdhmStatus::Failed, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Last error message on this thread; empty after a successful call.  The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn adhm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn adhm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adhm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a datum from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adhm_datum_from_json(json: *const c_char, out: *mut *mut AdhmDatum) -> AdhmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = read_str(json, "json")?;
        let inner = AnyDatum::from_json_str(s).map_err(lib)?;
        *out = Box::into_raw(Box::new(AdhmDatum { inner }));
        Ok(())
    })
}

/// # Safety
/// `d` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adhm_datum_free(d: *mut AdhmDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

unsafe fn handle<'a>(d: *const AdhmDatum) -> Result<&'a AdhmDatum, (AdhmStatus, String)> {
    d.as_ref().ok_or_else(|| null("datum"))
}

/// Serializes a datum to JSON.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adhm_datum_to_json(d: *const AdhmDatum, out: *mut *mut c_char) -> AdhmStatus {
    guard(|| {
        let d = handle(d)?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, serde_json::to_string(&d.inner.to_json()).map_err(|e| (AdhmStatus::Failed, e.to_string()))?)
    })
}

/// # Safety
/// `d` must be a live handle; `dim_v` and `dim_w` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adhm_datum_dims(d: *const AdhmDatum, dim_v: *mut usize, dim_w: *mut usize) -> AdhmStatus {
    guard(|| {
        let x = handle(d)?.inner.datum();
        if dim_v.is_null() || dim_w.is_null() {
            return Err(null("out"));
        }
        *dim_v = x.dim_v();
        *dim_w = x.dim_w();
        Ok(())
    })
}

/// Membership checks as a JSON report (see the `verify` command).
///
/// # Safety
/// `d` must be a live handle; `out` and `verified` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adhm_datum_verify(d: *const AdhmDatum, verified: *mut bool, out: *mut *mut c_char) -> AdhmStatus {
    guard(|| {
        let d = handle(d)?;
        if out.is_null() || verified.is_null() {
            return Err(null("out"));
        }
        let o = commands::verify_datum(&d.inner).map_err(lib)?;
        *verified = o.verified;
        write_string(out, o.payload.to_string())
    })
}

/// `true` when stable and costable.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adhm_datum_is_regular(d: *const AdhmDatum, out: *mut bool) -> AdhmStatus {
    guard(|| {
        let d = handle(d)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = d.inner.datum().is_regular();
        Ok(())
    })
}

/// Runs a product pipeline (`tensor` takes two inputs, the other verbs
/// one) and returns the output datum.  `verified` reports whether every
/// check on the output passed.
///
/// # Safety
/// `verb` must be a NUL-terminated string, `inputs` an array of `count`
/// live handles, and `out`, `verified` writable.
#[no_mangle]
pub unsafe extern "C" fn adhm_product(
    verb: *const c_char,
    inputs: *const *const AdhmDatum,
    count: usize,
    seed: u64,
    out: *mut *mut AdhmDatum,
    verified: *mut bool,
) -> AdhmStatus {
    guard(|| {
        let verb = read_str(verb, "verb")?;
        if inputs.is_null() || out.is_null() || verified.is_null() {
            return Err(null("argument"));
        }
        let data = std::slice::from_raw_parts(inputs, count)
            .iter()
            .map(|&p| handle(p).map(|h| h.inner.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let o = commands::product(verb, &data, seed).map_err(lib)?;
        let inner = AnyDatum::from_json_str(&o.payload["datum"].to_string()).map_err(lib)?;
        *verified = o.verified;
        *out = Box::into_raw(Box::new(AdhmDatum { inner }));
        Ok(())
    })
}

/// The invariant Hilbert series to order `trunc`, e.g. `1 + (t+1+t^-1) u^2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adhm_hilbert_series(trunc: usize, out: *mut *mut c_char) -> AdhmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = adhm::hilbert::hilbert_rho(trunc).map_err(lib)?;
        write_string(out, s.to_string())
    })
}

/// Point count of the SO(3) zero fibre for `dim V = k`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adhm_count_so3(k: usize, prime: u64, workers: usize, allow_long: bool, out: *mut u64) -> AdhmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = counting::count_so3_fiber(k, prime, workers, allow_long).map_err(lib)?.count;
        Ok(())
    })
}

/// Point count of the zero fibre on three copies of `V_d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adhm_count_homw(d: usize, prime: u64, workers: usize, out: *mut u64) -> AdhmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = counting::count_homw_fiber(d, prime, workers, false).map_err(lib)?.count;
        Ok(())
    })
}

/// Zeros of `μ_x` for `x = e1 z^n`; fails with `SetMismatch` when they do
/// not form the claimed subspace.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adhm_count_mux(d: usize, n: usize, prime: u64, workers: usize, out: *mut u64) -> AdhmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = counting::count_mux_fiber(d, n, prime, workers).map_err(lib)?.report.count;
        Ok(())
    })
}
