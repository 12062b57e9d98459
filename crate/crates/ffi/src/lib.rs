//! C ABI for the brauer-forge verification engine.
//!
//! Groups and reports are opaque handles owned by the caller and released
//! with their `_free` functions. Every fallible call returns a [`BfStatus`];
//! on failure the message is available from [`bf_last_error`] on the same
//! thread. Strings returned to C are released with [`bf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use brauer_forge::harness::catalog::{load_group, CatalogGroup};
use brauer_forge::harness::{checks, Report, Verdict};
use brauer_forge::linalg::Field;
use brauer_forge::{parse_group_text, Error};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    UnknownGroup = 4,
    Parse = 5,
    Precondition = 6,
    ResourceLimit = 7,
    Internal = 8,
    Io = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfVerdict {
    Pass = 0,
    Fail = 1,
    Skipped = 2,
}

/// A group together with its chosen Sylow 2-subgroup.
pub struct BfGroup {
    inner: CatalogGroup,
}

pub struct BfReport {
    inner: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> BfStatus {
    match e {
        Error::UnknownGroup(_) => BfStatus::UnknownGroup,
        Error::Parse { .. } => BfStatus::Parse,
        Error::Precondition(_) => BfStatus::Precondition,
        Error::ResourceLimit { .. } => BfStatus::ResourceLimit,
        Error::Internal(_) => BfStatus::Internal,
        Error::Io(_) => BfStatus::Io,
        Error::DegreeMismatch(..) | Error::InvalidPerm(_) | Error::Shape(_) | Error::InvalidArgument(_) => {
            BfStatus::InvalidArgument
        }
    }
}

struct Failure(BfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            BfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BfStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn group_arg<'a>(g: *const BfGroup, what: &str) -> Result<&'a CatalogGroup, Failure> {
    g.as_ref()
        .map(|g| &g.inner)
        .ok_or_else(|| Failure(BfStatus::NullPointer, format!("{what} is null")))
}

unsafe fn report_arg<'a>(r: *const BfReport) -> Result<&'a Report, Failure> {
    r.as_ref()
        .map(|r| &r.inner)
        .ok_or_else(|| Failure(BfStatus::NullPointer, "report is null".into()))
}

fn out_check<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(BfStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn field(m: u32) -> Result<Field, Failure> {
    if !(1..=8).contains(&m) {
        return Err(Failure(BfStatus::InvalidArgument, format!("field degree {m} is outside 1..=8")));
    }
    Ok(Field::new(m as usize)?)
}

unsafe fn emit_report(out: *mut *mut BfReport, report: Report) {
    *out = Box::into_raw(Box::new(BfReport { inner: report }));
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn bf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Loads a catalog group (`gl23`, `sd16`, ...) or a group file.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_group_load(source: *const c_char, out: *mut *mut BfGroup) -> BfStatus {
    guard(|| {
        out_check(out)?;
        let cg = load_group(str_arg(source, "source")?)?;
        *out = Box::into_raw(Box::new(BfGroup { inner: cg }));
        Ok(())
    })
}

/// Builds a group from text: a `degree n` line followed by one generator
/// per line in cycle notation.
///
/// # Safety
/// `name` and `text` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_group_from_text(
    name: *const c_char,
    text: *const c_char,
    out: *mut *mut BfGroup,
) -> BfStatus {
    guard(|| {
        out_check(out)?;
        let name = str_arg(name, "name")?;
        let g = parse_group_text(str_arg(text, "text")?)?;
        *out = Box::into_raw(Box::new(BfGroup {
            inner: CatalogGroup::from_group(name, g),
        }));
        Ok(())
    })
}

/// # Safety
/// `g` must be a valid group handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_group_order(g: *const BfGroup, out: *mut u64) -> BfStatus {
    guard(|| {
        out_check(out)?;
        *out = group_arg(g, "group")?.group.order() as u64;
        Ok(())
    })
}

/// Order of the chosen Sylow 2-subgroup.
///
/// # Safety
/// `g` must be a valid group handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_group_sylow_order(g: *const BfGroup, out: *mut u64) -> BfStatus {
    guard(|| {
        out_check(out)?;
        *out = group_arg(g, "group")?.sylow.order() as u64;
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bf_group_free(g: *mut BfGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Brauer indecomposability of `Sc(G, P)`; `p_spec` as on the command line
/// (`sylow`, a tag, words in `x, y`, or `delta:<spec>` on products).
///
/// # Safety
/// `g` must be a valid group handle, `p_spec` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_check_brauer(
    g: *const BfGroup,
    p_spec: *const c_char,
    field_degree: u32,
    seed: u64,
    out: *mut *mut BfReport,
) -> BfStatus {
    guard(|| {
        out_check(out)?;
        let cg = group_arg(g, "group")?;
        let p = cg.subgroup(str_arg(p_spec, "p_spec")?)?;
        let r = checks::check_brauer_indecomposability(&cg.name, &cg.group, &p, field(field_degree)?, seed)?;
        emit_report(out, r);
        Ok(())
    })
}

/// Hypotheses and conclusion for a semidihedral `P ≤ G`.
///
/// # Safety
/// As for [`bf_check_brauer`].
#[no_mangle]
pub unsafe extern "C" fn bf_check_theorem1(
    g: *const BfGroup,
    p_spec: *const c_char,
    field_degree: u32,
    seed: u64,
    out: *mut *mut BfReport,
) -> BfStatus {
    guard(|| {
        out_check(out)?;
        let cg = group_arg(g, "group")?;
        let p = cg.subgroup(str_arg(p_spec, "p_spec")?)?;
        let r = checks::check_theorem1(&cg.name, &cg.group, &p, field(field_degree)?, seed)?;
        emit_report(out, r);
        Ok(())
    })
}

/// `Sc(G x G', ΔP)` for two groups with semidihedral Sylow 2-subgroups of
/// the same order.
///
/// # Safety
/// `left` and `right` must be valid group handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_check_theorem2(
    left: *const BfGroup,
    right: *const BfGroup,
    field_degree: u32,
    seed: u64,
    out: *mut *mut BfReport,
) -> BfStatus {
    guard(|| {
        out_check(out)?;
        let (a, b) = (group_arg(left, "left")?, group_arg(right, "right")?);
        let r = checks::check_theorem2(a, b, field(field_degree)?, seed)?;
        emit_report(out, r);
        Ok(())
    })
}

/// Compares `Sc(G, P)(Q)` with `Sc(N_G(Q), N_P(Q))`.
///
/// # Safety
/// `g` must be a valid group handle, the specs NUL-terminated strings and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_check_ik1(
    g: *const BfGroup,
    p_spec: *const c_char,
    q_spec: *const c_char,
    field_degree: u32,
    seed: u64,
    out: *mut *mut BfReport,
) -> BfStatus {
    guard(|| {
        out_check(out)?;
        let cg = group_arg(g, "group")?;
        let p = cg.subgroup(str_arg(p_spec, "p_spec")?)?;
        let q = cg.subgroup(str_arg(q_spec, "q_spec")?)?;
        let r = checks::check_ik1_consequence(&cg.name, &cg.group, &p, &q, field(field_degree)?, seed)?;
        emit_report(out, r);
        Ok(())
    })
}

/// # Safety
/// `g` must be a valid group handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_check_lemma31(g: *const BfGroup, seed: u64, out: *mut *mut BfReport) -> BfStatus {
    guard(|| {
        out_check(out)?;
        let cg = group_arg(g, "group")?;
        let r = checks::check_lemma31(&cg.name, &cg.group, &cg.sylow, seed)?;
        emit_report(out, r);
        Ok(())
    })
}

/// # Safety
/// `r` must be a valid report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_report_verdict(r: *const BfReport, out: *mut BfVerdict) -> BfStatus {
    guard(|| {
        out_check(out)?;
        *out = match report_arg(r)?.verdict {
            Verdict::Pass => BfVerdict::Pass,
            Verdict::Fail => BfVerdict::Fail,
            Verdict::Skipped(_) => BfVerdict::Skipped,
        };
        Ok(())
    })
}

/// # Safety
/// `r` must be a valid report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_report_hypotheses_hold(r: *const BfReport, out: *mut bool) -> BfStatus {
    guard(|| {
        out_check(out)?;
        *out = report_arg(r)?.hypotheses_hold;
        Ok(())
    })
}

/// The report as JSON; with `canonical` the timings are omitted so equal
/// runs give equal strings. Free the result with [`bf_string_free`].
///
/// # Safety
/// `r` must be a valid report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_report_to_json(r: *const BfReport, canonical: bool, out: *mut *mut c_char) -> BfStatus {
    guard(|| {
        out_check(out)?;
        let r = report_arg(r)?;
        let s = if canonical { r.to_canonical_json()? } else { r.to_json()? };
        *out = CString::new(s)
            .map_err(|_| Failure(BfStatus::Internal, "report contains NUL".into()))?
            .into_raw();
        Ok(())
    })
}

/// The human-readable summary. Free the result with [`bf_string_free`].
///
/// # Safety
/// `r` must be a valid report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_report_summary(r: *const BfReport, out: *mut *mut c_char) -> BfStatus {
    guard(|| {
        out_check(out)?;
        let s = report_arg(r)?.summary();
        *out = CString::new(s)
            .map_err(|_| Failure(BfStatus::Internal, "summary contains NUL".into()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bf_report_free(r: *mut BfReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
