//! C ABI over `coxline`.
//!
//! Conventions:
//! - Every fallible call returns a [`CoxlineStatus`] and writes its result
//!   through an out-pointer. Out-pointers are left untouched on failure.
//! - A divisor class `dL - sum a_i E_i` is passed as `coeffs = [d, a_1, ..., a_n]`
//!   with `len = n + 1`.
//! - Point configurations are opaque [`CoxlineConfig`] handles, released with
//!   [`coxline_config_free`].
//! - Strings returned by the library are released with [`coxline_string_free`].
//! - After a failure, [`coxline_last_error_message`] describes it. The message
//!   is per thread and valid until the next call on that thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coxline::cli::{self, SweepOptions};
use coxline::oracle::parse_rational;
use coxline::{coxmono, oracle, picard, CoxError, DivisorClass, PointConfig};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxlineStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed input: bad point count, unparsable number, invalid configuration.
    InvalidArgument = 2,
    /// Input outside the domain of the operation, e.g. a non-nef class for the closed form.
    Domain = 3,
    /// The result does not fit the output type, or the input exceeds supported sizes.
    Overflow = 4,
    /// Internal failure; the call panicked.
    Internal = 5,
}

/// Opaque point configuration.
pub struct CoxlineConfig {
    inner: PointConfig,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(CoxlineStatus, String);

impl From<CoxError> for Failure {
    fn from(e: CoxError) -> Self {
        let status = match &e {
            CoxError::Domain(_) | CoxError::Degenerate(_) => CoxlineStatus::Domain,
            CoxError::TooLarge(_) => CoxlineStatus::Overflow,
            CoxError::UnsupportedPointCount(_)
            | CoxError::DimensionMismatch { .. }
            | CoxError::InvalidConfig(_)
            | CoxError::Parse(_) => CoxlineStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CoxlineStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, stores any error message and maps panics to `Internal`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CoxlineStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CoxlineStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            CoxlineStatus::Internal
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn config_ref<'a>(cfg: *const CoxlineConfig) -> Result<&'a PointConfig, Failure> {
    cfg.as_ref().map(|c| &c.inner).ok_or_else(|| null("config"))
}

unsafe fn read_class(coeffs: *const i64, len: usize) -> Result<DivisorClass, Failure> {
    if coeffs.is_null() {
        return Err(null("coeffs"));
    }
    if len < 3 {
        return Err(Failure(
            CoxlineStatus::InvalidArgument,
            format!("class needs d and at least two a_i, got {len} numbers"),
        ));
    }
    let v = std::slice::from_raw_parts(coeffs, len);
    Ok(DivisorClass::from_i64(v[0], &v[1..])?)
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(CoxlineStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn to_i64(v: &BigInt) -> Result<i64, Failure> {
    v.to_i64().ok_or_else(|| Failure(CoxlineStatus::Overflow, format!("{v} does not fit in int64_t")))
}

fn json_string<T: Serialize>(value: &T) -> Result<*mut c_char, Failure> {
    let text = serde_json::to_string(value).map_err(|e| Failure(CoxlineStatus::Internal, e.to_string()))?;
    CString::new(text).map(CString::into_raw).map_err(|e| Failure(CoxlineStatus::Internal, e.to_string()))
}

fn boxed(cfg: PointConfig) -> *mut CoxlineConfig {
    Box::into_raw(Box::new(CoxlineConfig { inner: cfg }))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn coxline_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null if it succeeded.
#[no_mangle]
pub extern "C" fn coxline_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn coxline_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Default configuration: `t_i = i - 1`, `q = (0 : 1 : 0)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_config_default(n: usize, out: *mut *mut CoxlineConfig) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = boxed(PointConfig::default_for(n)?);
        Ok(())
    })
}

/// Configuration with points `(t_i : 0 : 1)` and auxiliary point `q`.
/// Numbers are decimal integers or fractions `"p/q"`.
///
/// # Safety
/// `t` must point to `n` C strings, `q` to three, and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_config_new(
    t: *const *const c_char,
    n: usize,
    q: *const *const c_char,
    out: *mut *mut CoxlineConfig,
) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if t.is_null() {
            return Err(null("t"));
        }
        if q.is_null() {
            return Err(null("q"));
        }
        let t = std::slice::from_raw_parts(t, n)
            .iter()
            .map(|&s| Ok(parse_rational(read_str(s, "t_i")?)?))
            .collect::<Result<Vec<_>, Failure>>()?;
        let q = std::slice::from_raw_parts(q, 3);
        let q = [
            parse_rational(read_str(q[0], "q")?)?,
            parse_rational(read_str(q[1], "q")?)?,
            parse_rational(read_str(q[2], "q")?)?,
        ];
        *out = boxed(PointConfig::new(t, q)?);
        Ok(())
    })
}

/// Configuration from TOML text with keys `n`, `t`, `q`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_config_parse(text: *const c_char, out: *mut *mut CoxlineConfig) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = boxed(PointConfig::parse(read_str(text, "text")?)?);
        Ok(())
    })
}

/// Number of points of a configuration.
///
/// # Safety
/// `cfg` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_config_n(cfg: *const CoxlineConfig, out: *mut usize) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = config_ref(cfg)?.n();
        Ok(())
    })
}

/// Releases a configuration. Null is ignored.
///
/// # Safety
/// `cfg` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn coxline_config_free(cfg: *mut CoxlineConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Intersection number `D . D'` of two classes of equal length.
///
/// # Safety
/// Both coefficient arrays must hold `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_intersect(x: *const i64, y: *const i64, len: usize, out: *mut i64) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let v = picard::intersect(&read_class(x, len)?, &read_class(y, len)?)?;
        *out = to_i64(&v)?;
        Ok(())
    })
}

/// Euler characteristic `chi(D)`.
///
/// # Safety
/// `coeffs` must hold `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_chi(coeffs: *const i64, len: usize, out: *mut i64) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = to_i64(&picard::chi(&read_class(coeffs, len)?))?;
        Ok(())
    })
}

/// `h0(D)` from the lattice: zero off the effective cone, otherwise `chi` of
/// the nef part after removing fixed components.
///
/// # Safety
/// `coeffs` must hold `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_h0(coeffs: *const i64, len: usize, out: *mut i64) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = to_i64(&picard::h0(&read_class(coeffs, len)?))?;
        Ok(())
    })
}

/// Effective cone membership.
///
/// # Safety
/// `coeffs` must hold `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_is_effective(coeffs: *const i64, len: usize, out: *mut bool) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = picard::is_effective(&read_class(coeffs, len)?);
        Ok(())
    })
}

/// Nef cone membership.
///
/// # Safety
/// `coeffs` must hold `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_is_nef(coeffs: *const i64, len: usize, out: *mut bool) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = picard::is_nef(&read_class(coeffs, len)?);
        Ok(())
    })
}

/// `h0(D)` by exact interpolation at the configuration's points.
///
/// # Safety
/// `cfg` must be a live handle, `coeffs` must hold `len` values and `out` must
/// be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_h0_rank(
    cfg: *const CoxlineConfig,
    coeffs: *const i64,
    len: usize,
    out: *mut usize,
) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = oracle::h0_rank(config_ref(cfg)?, &read_class(coeffs, len)?)?;
        Ok(())
    })
}

/// Number of standard monomials of degree `D`, by enumeration.
///
/// # Safety
/// `coeffs` must hold `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_standard_monomial_count(
    coeffs: *const i64,
    len: usize,
    out: *mut usize,
) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = coxmono::enumerate_standard_monomials(&read_class(coeffs, len)?)?.len();
        Ok(())
    })
}

/// Number of standard monomials of a nef degree `D`, in closed form.
/// Non-nef classes give `Domain`.
///
/// # Safety
/// `coeffs` must hold `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_standard_monomial_count_closed_form(
    coeffs: *const i64,
    len: usize,
    out: *mut i64,
) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = to_i64(&coxmono::count_standard_monomials_closed_form(&read_class(coeffs, len)?)?)?;
        Ok(())
    })
}

/// Classification report as JSON: cone membership, coordinates, `chi`, `h0`
/// and the fixed-part decomposition. Free with [`coxline_string_free`].
///
/// # Safety
/// `coeffs` must hold `len` values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_classify_json(coeffs: *const i64, len: usize, out: *mut *mut c_char) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = json_string(&cli::cmd_classify(&read_class(coeffs, len)?))?;
        Ok(())
    })
}

/// Standard monomial basis of degree `D` with plane forms and the independence
/// check, as JSON. Free with [`coxline_string_free`].
///
/// # Safety
/// `cfg` must be a live handle, `coeffs` must hold `len` values and `out` must
/// be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_basis_json(
    cfg: *const CoxlineConfig,
    coeffs: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = json_string(&cli::cmd_basis(config_ref(cfg)?, &read_class(coeffs, len)?)?)?;
        Ok(())
    })
}

/// Relations of the configuration with their checks, as JSON. Free with
/// [`coxline_string_free`].
///
/// # Safety
/// `cfg` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_relations_json(cfg: *const CoxlineConfig, out: *mut *mut c_char) -> CoxlineStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = json_string(&cli::cmd_relations(config_ref(cfg)?)?)?;
        Ok(())
    })
}

/// Cross-checks every nef class of degree at most `d_max`. Writes whether all
/// checks passed to `passed` and the report JSON to `out`. Free with
/// [`coxline_string_free`].
///
/// # Safety
/// `cfg` must be a live handle; `passed` and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn coxline_verify_json(
    cfg: *const CoxlineConfig,
    d_max: u32,
    passed: *mut bool,
    out: *mut *mut c_char,
) -> CoxlineStatus {
    guard(|| {
        let passed = out_ref(passed, "passed")?;
        let out = out_ref(out, "out")?;
        let report = cli::cmd_verify(config_ref(cfg)?, &SweepOptions::new(d_max))?;
        *out = json_string(&report)?;
        *passed = report.passed();
        Ok(())
    })
}
