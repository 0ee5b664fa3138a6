//! C ABI for `englert-sums`.
//!
//! Every function returns an `int32_t` status: `ES_OK` on success, one of the
//! `ES_E_*` codes otherwise. The message for the most recent failure on the
//! calling thread is available from `es_last_error`. Handles are opaque and
//! must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;

use englert_sums::bernoulli::format_rational;
use englert_sums::{
    c_table, eval, eval_via_relation, li_on_circle, oracle_eval, Error, EvalPath, EvalResult,
    Rational, SumFamily, UnitCirclePoint,
};

pub const ES_OK: i32 = 0;
pub const ES_E_NULL: i32 = 1;
pub const ES_E_UTF8: i32 = 2;
pub const ES_E_BUFFER: i32 = 3;
pub const ES_E_PANIC: i32 = 4;
pub const ES_E_INDEX: i32 = 5;
pub const ES_E_DOMAIN: i32 = 10;
pub const ES_E_SINGULAR: i32 = 11;
pub const ES_E_UNSUPPORTED_ORDER: i32 = 12;
pub const ES_E_CAPACITY: i32 = 13;
pub const ES_E_TOLERANCE: i32 = 14;
pub const ES_E_INTERNAL: i32 = 15;
pub const ES_E_UNKNOWN_FAMILY: i32 = 16;

pub const ES_PATH_POLYNOMIAL: i32 = 0;
pub const ES_PATH_ELEMENTARY: i32 = 1;
pub const ES_PATH_POLYLOG: i32 = 2;
pub const ES_PATH_ORACLE: i32 = 3;

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(code: i32, msg: impl Into<String>) -> i32 {
    set_error(msg);
    code
}

fn lib_error(e: Error) -> i32 {
    fail(e.code(), e.to_string())
}

fn guard(f: impl FnOnce() -> i32) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => fail(ES_E_PANIC, "panic inside englert-sums"),
    }
}

/// A series family at a fixed order.
pub struct EsFamily {
    inner: SumFamily,
}

/// An exact row of cosine-polynomial coefficients.
pub struct EsCoeffTable {
    order: u32,
    row: Vec<Rational>,
}

/// Parses a family code such as `"tbCp"` at order `n`.
///
/// # Safety
/// `code` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_family_new(
    code: *const c_char,
    n: u32,
    out: *mut *mut EsFamily,
) -> i32 {
    guard(|| {
        if code.is_null() || out.is_null() {
            return fail(ES_E_NULL, "null pointer argument");
        }
        let Ok(code) = unsafe { CStr::from_ptr(code) }.to_str() else {
            return fail(ES_E_UTF8, "family code is not UTF-8");
        };
        match SumFamily::parse(code, n) {
            Ok(f) => {
                unsafe { *out = Box::into_raw(Box::new(EsFamily { inner: f })) };
                ES_OK
            }
            Err(e) => lib_error(e),
        }
    })
}

/// # Safety
/// `f` must come from `es_family_new` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn es_family_free(f: *mut EsFamily) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Denominator power of the family.
///
/// # Safety
/// `f` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_family_power(f: *const EsFamily, out: *mut u32) -> i32 {
    guard(|| {
        let (Some(f), false) = (unsafe { f.as_ref() }, out.is_null()) else {
            return fail(ES_E_NULL, "null pointer argument");
        };
        unsafe { *out = f.inner.power() };
        ES_OK
    })
}

fn path_code(p: EvalPath) -> i32 {
    match p {
        EvalPath::Polynomial => ES_PATH_POLYNOMIAL,
        EvalPath::Elementary => ES_PATH_ELEMENTARY,
        EvalPath::Polylog => ES_PATH_POLYLOG,
        EvalPath::Oracle => ES_PATH_ORACLE,
    }
}

unsafe fn write_eval(
    r: englert_sums::Result<EvalResult>,
    value: *mut f64,
    error_bound: *mut f64,
    path: *mut i32,
) -> i32 {
    match r {
        Ok(r) => {
            unsafe {
                *value = r.value;
                if !error_bound.is_null() {
                    *error_bound = r.error_bound;
                }
                if !path.is_null() {
                    *path = path_code(r.path);
                }
            }
            ES_OK
        }
        Err(e) => lib_error(e),
    }
}

/// Closed-form value at `z`. `error_bound` and `path` may be null.
///
/// # Safety
/// `f` must be a live handle; non-null out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_eval(
    f: *const EsFamily,
    z: f64,
    value: *mut f64,
    error_bound: *mut f64,
    path: *mut i32,
) -> i32 {
    guard(|| {
        let (Some(f), false) = (unsafe { f.as_ref() }, value.is_null()) else {
            return fail(ES_E_NULL, "null pointer argument");
        };
        unsafe { write_eval(eval(&f.inner, z), value, error_bound, path) }
    })
}

/// Value at `z` through the interrelation with another family.
///
/// # Safety
/// As for `es_eval`.
#[no_mangle]
pub unsafe extern "C" fn es_eval_via_relation(
    f: *const EsFamily,
    z: f64,
    value: *mut f64,
    error_bound: *mut f64,
    path: *mut i32,
) -> i32 {
    guard(|| {
        let (Some(f), false) = (unsafe { f.as_ref() }, value.is_null()) else {
            return fail(ES_E_NULL, "null pointer argument");
        };
        unsafe { write_eval(eval_via_relation(&f.inner, z), value, error_bound, path) }
    })
}

/// Direct summation of the series. `terms_used` and `tail_bound` may be null.
///
/// # Safety
/// `f` must be a live handle; non-null out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_oracle(
    f: *const EsFamily,
    z: f64,
    tol: f64,
    value: *mut f64,
    terms_used: *mut u64,
    tail_bound: *mut f64,
) -> i32 {
    guard(|| {
        let (Some(f), false) = (unsafe { f.as_ref() }, value.is_null()) else {
            return fail(ES_E_NULL, "null pointer argument");
        };
        match oracle_eval(&f.inner, z, tol) {
            Ok(r) => {
                unsafe {
                    *value = r.value;
                    if !terms_used.is_null() {
                        *terms_used = r.terms_used;
                    }
                    if !tail_bound.is_null() {
                        *tail_bound = r.tail_bound;
                    }
                }
                ES_OK
            }
            Err(e) => lib_error(e),
        }
    })
}

/// `Li_a(e^(i theta))`.
///
/// # Safety
/// `re` and `im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_polylog(a: u32, theta: f64, re: *mut f64, im: *mut f64) -> i32 {
    guard(|| {
        if re.is_null() || im.is_null() {
            return fail(ES_E_NULL, "null pointer argument");
        }
        match UnitCirclePoint::from_theta(theta).and_then(|p| li_on_circle(a, p)) {
            Ok(v) => {
                unsafe {
                    *re = v.real_part;
                    *im = v.imag_part;
                }
                ES_OK
            }
            Err(e) => lib_error(e),
        }
    })
}

/// Coefficients `c_0(n), ..., c_n(n)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_coeffs_new(n: u32, out: *mut *mut EsCoeffTable) -> i32 {
    guard(|| {
        if out.is_null() {
            return fail(ES_E_NULL, "null pointer argument");
        }
        match c_table(n) {
            Ok(row) => {
                unsafe { *out = Box::into_raw(Box::new(EsCoeffTable { order: n, row })) };
                ES_OK
            }
            Err(e) => lib_error(e),
        }
    })
}

/// # Safety
/// `t` must come from `es_coeffs_new` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn es_coeffs_free(t: *mut EsCoeffTable) {
    if !t.is_null() {
        drop(unsafe { Box::from_raw(t) });
    }
}

/// Number of coefficients in the table.
///
/// # Safety
/// `t` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_coeffs_len(t: *const EsCoeffTable) -> usize {
    unsafe { t.as_ref() }.map_or(0, |t| t.row.len())
}

/// Order `n` the table was built for.
///
/// # Safety
/// `t` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn es_coeffs_order(t: *const EsCoeffTable) -> u32 {
    unsafe { t.as_ref() }.map_or(0, |t| t.order)
}

fn coeff(t: Option<&EsCoeffTable>, i: usize) -> Result<&Rational, i32> {
    let Some(t) = t else {
        return Err(fail(ES_E_NULL, "null table handle"));
    };
    t.row
        .get(i)
        .ok_or_else(|| fail(ES_E_INDEX, format!("index {i} out of range")))
}

/// Coefficient `i` rounded to double.
///
/// # Safety
/// `t` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_coeffs_get_f64(t: *const EsCoeffTable, i: usize, out: *mut f64) -> i32 {
    guard(|| {
        if out.is_null() {
            return fail(ES_E_NULL, "null pointer argument");
        }
        match coeff(unsafe { t.as_ref() }, i) {
            Ok(q) => {
                unsafe { *out = q.to_f64().unwrap_or(f64::NAN) };
                ES_OK
            }
            Err(code) => code,
        }
    })
}

unsafe fn write_str(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> bool {
    if !needed.is_null() {
        unsafe { *needed = s.len() + 1 };
    }
    if buf.is_null() || len < s.len() + 1 {
        return false;
    }
    unsafe {
        ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
        *buf.add(s.len()) = 0;
    }
    true
}

/// Coefficient `i` as exact `"p/q"`, NUL-terminated. `needed` (may be null)
/// receives the buffer size required.
///
/// # Safety
/// `t` must be a live handle; `buf` must hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn es_coeffs_get_string(
    t: *const EsCoeffTable,
    i: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> i32 {
    guard(|| match coeff(unsafe { t.as_ref() }, i) {
        Ok(q) => {
            let s = format_rational(q);
            if unsafe { write_str(&s, buf, len, needed) } {
                ES_OK
            } else {
                fail(ES_E_BUFFER, format!("buffer needs {} bytes", s.len() + 1))
            }
        }
        Err(code) => code,
    })
}

/// Copies the calling thread's last error message into `buf`.
///
/// # Safety
/// `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn es_last_error(buf: *mut c_char, len: usize, needed: *mut usize) -> i32 {
    // failing here must not replace the message being fetched
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    if unsafe { write_str(&msg, buf, len, needed) } {
        ES_OK
    } else {
        ES_E_BUFFER
    }
}
