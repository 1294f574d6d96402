//! C interface to `qds-core`.
//!
//! Every function returns a [`QdsStatus`]; results come back through out
//! parameters. Objects are opaque handles released with their `_free`
//! function, and strings handed out by the library are released with
//! [`qds_string_free`]. After a non-OK status, [`qds_last_error`] describes
//! the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use qds_core::cli::{self, Report, Suite, SuiteConfig};
use qds_core::{AqElement, Error};
use serde::Deserialize;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Config = 4,
    Engine = 5,
    Io = 6,
    Panic = 7,
}

/// Opaque element of the quantum phase space.
pub struct QdsElement(AqElement);

/// Opaque verification report.
pub struct QdsReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(QdsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => QdsStatus::Parse,
            Error::Config(_) => QdsStatus::Config,
            Error::Io(_) | Error::VersionMismatch(_) => QdsStatus::Io,
            _ => QdsStatus::Engine,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QdsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QdsStatus::Ok,
        Ok(Err(Failure(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            QdsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(QdsStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(QdsStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(QdsStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(QdsStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn qds_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qds_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an element from its canonical text form.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_element_parse(text: *const c_char, out: *mut *mut QdsElement) -> QdsStatus {
    guard(|| {
        let e: AqElement = str_arg(text)?.parse()?;
        put(out, Box::into_raw(Box::new(QdsElement(e))))
    })
}

/// # Safety
/// `e` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qds_element_free(e: *mut QdsElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Canonical text form; release with `qds_string_free`.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_element_to_string(e: *const QdsElement, out: *mut *mut c_char) -> QdsStatus {
    guard(|| {
        let e = ref_arg(e)?;
        put(out, string_out(e.0.to_string()))
    })
}

/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_element_is_zero(e: *const QdsElement, out: *mut bool) -> QdsStatus {
    guard(|| put(out, ref_arg(e)?.0.is_zero()))
}

unsafe fn binary(
    a: *const QdsElement,
    b: *const QdsElement,
    out: *mut *mut QdsElement,
    f: fn(&AqElement, &AqElement) -> AqElement,
) -> QdsStatus {
    guard(|| {
        let r = f(&ref_arg(a)?.0, &ref_arg(b)?.0);
        put(out, Box::into_raw(Box::new(QdsElement(r))))
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_element_add(
    a: *const QdsElement,
    b: *const QdsElement,
    out: *mut *mut QdsElement,
) -> QdsStatus {
    binary(a, b, out, |x, y| x + y)
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_element_sub(
    a: *const QdsElement,
    b: *const QdsElement,
    out: *mut *mut QdsElement,
) -> QdsStatus {
    binary(a, b, out, |x, y| x - y)
}

/// Product in normal order.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_element_mul(
    a: *const QdsElement,
    b: *const QdsElement,
    out: *mut *mut QdsElement,
) -> QdsStatus {
    binary(a, b, out, |x, y| x * y)
}

/// Image of the generator `u_i` (`which = 0`) or `m_i` (`which = 1`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_generator_image(which: u32, i: u32, out: *mut *mut QdsElement) -> QdsStatus {
    guard(|| {
        if i == 0 || which > 1 {
            return Err(Failure(QdsStatus::Config, "generator index must be >= 1 and which 0 or 1".into()));
        }
        let e = if which == 0 { qds_core::qhomspace::gen_image_u(i) } else { qds_core::qhomspace::gen_image_m(i) };
        put(out, Box::into_raw(Box::new(QdsElement(e))))
    })
}

/// `ad(I_n)(x)`.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_ad_integral(n: u32, x: *const QdsElement, out: *mut *mut QdsElement) -> QdsStatus {
    guard(|| {
        let x = ref_arg(x)?;
        if n == 0 {
            return Err(Failure(QdsStatus::Config, "n must be >= 1".into()));
        }
        let r = qds_core::flows::ad_integral(n, &x.0)?;
        put(out, Box::into_raw(Box::new(QdsElement(r))))
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    suites: Option<Vec<String>>,
    n_max: Option<u32>,
    order: Option<i32>,
    rtt_n: Option<u32>,
    flow_n: Option<u32>,
    flow_j: Option<u32>,
    cache_dir: Option<PathBuf>,
}

fn parse_config(json: &str) -> Result<SuiteConfig, Failure> {
    let raw: RunConfig = serde_json::from_str(json).map_err(|e| Failure(QdsStatus::Config, e.to_string()))?;
    let d = SuiteConfig::default();
    let suites = match raw.suites {
        Some(names) => names.iter().map(|s| s.parse::<Suite>()).collect::<Result<_, _>>()?,
        None => d.suites.clone(),
    };
    Ok(SuiteConfig {
        n_max: raw.n_max.unwrap_or(d.n_max),
        series_order: raw.order.unwrap_or(d.series_order),
        rtt_n: raw.rtt_n.unwrap_or(d.rtt_n),
        flow_n: raw.flow_n.unwrap_or(d.flow_n),
        flow_j: raw.flow_j.unwrap_or(d.flow_j),
        suites,
        cache_dir: raw.cache_dir,
        ..d
    })
}

/// Runs the verification suites described by a JSON object with optional keys
/// `suites` (array of names), `n_max`, `order`, `rtt_n`, `flow_n`, `flow_j`,
/// `cache_dir`. Failing checks are part of the report, not an error status.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_run(config_json: *const c_char, out: *mut *mut QdsReport) -> QdsStatus {
    guard(|| {
        let config = parse_config(str_arg(config_json)?)?;
        let report = cli::run(&config)?;
        put(out, Box::into_raw(Box::new(QdsReport(report))))
    })
}

/// # Safety
/// `r` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qds_report_free(r: *mut QdsReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_report_all_passed(r: *const QdsReport, out: *mut bool) -> QdsStatus {
    guard(|| put(out, ref_arg(r)?.0.all_passed()))
}

/// Counts of checks: total, passed, failed.
///
/// # Safety
/// `r` must be a live handle; the three outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_report_counts(
    r: *const QdsReport,
    total: *mut usize,
    passed: *mut usize,
    failed: *mut usize,
) -> QdsStatus {
    guard(|| {
        let s = &ref_arg(r)?.0.summary;
        put(total, s.total)?;
        put(passed, s.passed)?;
        put(failed, s.failed)
    })
}

/// The report as JSON; release with `qds_string_free`.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qds_report_json(r: *const QdsReport, out: *mut *mut c_char) -> QdsStatus {
    guard(|| put(out, string_out(ref_arg(r)?.0.to_json())))
}
