//! C ABI over `orbicalc`.
//!
//! Charts and germs live behind opaque handles built from the same JSON the
//! command line reads. Every fallible call returns an [`OrbStatus`]; on
//! failure the message is kept per thread and can be fetched with
//! [`orb_last_error`]. Strings handed out by the library are released with
//! [`orb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbicalc::charts::{has_interior_codim1_stratum, stratify, LocalChart};
use orbicalc::germs::{invariant_projection, MapGerm};
use orbicalc::onedim::forbidden_index2_check;
use orbicalc::report;
use orbicalc::scenario::{chart_scenario, germ_scenario, parse_json, RunError};
use serde_json::Value;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or a field that fails validation.
    InputError = 3,
    /// A mathematical check failed (for example a non-equivariant lift).
    MathError = 4,
    /// The report was produced but one of its checks failed.
    CheckFailed = 5,
    Panic = 6,
}

/// A linear orbifold chart.
pub struct OrbChart {
    chart: LocalChart,
    scenario: Value,
}

/// An equivariant map germ between two charts.
pub struct OrbGerm {
    germ: MapGerm,
    scenario: Value,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: OrbStatus, msg: impl Into<String>) -> OrbStatus {
    set_error(msg);
    status
}

fn run_error(e: RunError) -> OrbStatus {
    let status = if e.exit_code() == 1 { OrbStatus::InputError } else { OrbStatus::MathError };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> OrbStatus) -> OrbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(OrbStatus::Panic, msg)
        }
    }
}

/// # Safety
/// `s` is null or a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, OrbStatus> {
    if s.is_null() {
        return Err(fail(OrbStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(OrbStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn give_string(s: String, out: *mut *mut c_char) -> OrbStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before calling.
            unsafe { *out = c.into_raw() };
            OrbStatus::Ok
        }
        Err(_) => fail(OrbStatus::Panic, "report contains a NUL byte"),
    }
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(OrbStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

/// Library version, a static string owned by the library.
#[no_mangle]
pub extern "C" fn orb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The message of the last failed call on this thread, or null. The caller
/// owns the returned string.
#[no_mangle]
pub extern "C" fn orb_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a command (`analyze`, `strata`, `obstruct`, `sard`, `classify1`,
/// `retraction`) on a JSON scenario. On `Ok` or `CheckFailed` the report is
/// stored in `*report_out` and must be released with [`orb_string_free`].
///
/// # Safety
/// `command` and `scenario_json` are NUL-terminated; `report_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn orb_run(
    command: *const c_char,
    scenario_json: *const c_char,
    report_out: *mut *mut c_char,
) -> OrbStatus {
    guard(|| {
        nonnull!(report_out);
        let (cmd, text) = match (read_str(command), read_str(scenario_json)) {
            (Ok(c), Ok(t)) => (c, t),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let v = match parse_json(text) {
            Ok(v) => v,
            Err(e) => return run_error(e),
        };
        match report::run_command(cmd, &v) {
            Ok(r) => {
                let passed = r.passed;
                let s = give_string(r.to_json(), report_out);
                if s != OrbStatus::Ok {
                    s
                } else if passed {
                    OrbStatus::Ok
                } else {
                    fail(OrbStatus::CheckFailed, r.summary.join("; "))
                }
            }
            Err(e) => run_error(e),
        }
    })
}

/// Builds a chart from `{"dim", "generators", "boundary"}` (or a scenario
/// with a `"chart"` key).
///
/// # Safety
/// `json` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn orb_chart_from_json(json: *const c_char, out: *mut *mut OrbChart) -> OrbStatus {
    guard(|| {
        nonnull!(out);
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let result = parse_json(text).and_then(|v| chart_scenario(&v).map(|c| (c, v)));
        match result {
            Ok((chart, scenario)) => {
                *out = Box::into_raw(Box::new(OrbChart { chart, scenario }));
                OrbStatus::Ok
            }
            Err(e) => run_error(e),
        }
    })
}

/// # Safety
/// `chart` is null or a live handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn orb_chart_free(chart: *mut OrbChart) {
    if !chart.is_null() {
        drop(Box::from_raw(chart));
    }
}

/// # Safety
/// `chart` is a live handle; `dim` and `order` are writable.
#[no_mangle]
pub unsafe extern "C" fn orb_chart_shape(chart: *const OrbChart, dim: *mut usize, order: *mut usize) -> OrbStatus {
    guard(|| {
        nonnull!(chart, dim, order);
        let c = &(*chart).chart;
        *dim = c.dim();
        *order = c.group().order();
        OrbStatus::Ok
    })
}

/// Number of singular strata, whether one of them is an interior stratum
/// of codimension 1, and whether some index-2 subgroup fixes a nonzero vector.
///
/// # Safety
/// `chart` is a live handle; the output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn orb_chart_singular(
    chart: *const OrbChart,
    singular_strata: *mut usize,
    interior_codim1: *mut bool,
    forbidden_index2: *mut bool,
) -> OrbStatus {
    guard(|| {
        nonnull!(chart, singular_strata, interior_codim1, forbidden_index2);
        let c = &(*chart).chart;
        *singular_strata = stratify(c).singular().count();
        *interior_codim1 = has_interior_codim1_stratum(c);
        *forbidden_index2 = forbidden_index2_check(c).forbidden;
        OrbStatus::Ok
    })
}

/// The full strata report as JSON.
///
/// # Safety
/// `chart` is a live handle; `report_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn orb_chart_strata_json(chart: *const OrbChart, report_out: *mut *mut c_char) -> OrbStatus {
    guard(|| {
        nonnull!(chart, report_out);
        let v = &(*chart).scenario;
        let v = if v.get("chart").is_some() { v.clone() } else { serde_json::json!({ "chart": v }) };
        match report::strata(&v) {
            Ok(r) => give_string(r.to_json(), report_out),
            Err(e) => run_error(e),
        }
    })
}

/// Builds a germ from a germ scenario (`source`, `target`, `lift`, ...).
/// Fails with `MathError` when the lift is not equivariant.
///
/// # Safety
/// `json` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn orb_germ_from_json(json: *const c_char, out: *mut *mut OrbGerm) -> OrbStatus {
    guard(|| {
        nonnull!(out);
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let result = parse_json(text).and_then(|v| germ_scenario(&v).and_then(|s| s.germ()).map(|g| (g, v)));
        match result {
            Ok((germ, scenario)) => {
                *out = Box::into_raw(Box::new(OrbGerm { germ, scenario }));
                OrbStatus::Ok
            }
            Err(e) => run_error(e),
        }
    })
}

/// # Safety
/// `germ` is null or a live handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn orb_germ_free(germ: *mut OrbGerm) {
    if !germ.is_null() {
        drop(Box::from_raw(germ));
    }
}

/// Order of `N = ker theta`, rank of the invariant projection `A_x` at the
/// base point, and whether its exact identities all hold.
///
/// # Safety
/// `germ` is a live handle; the output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn orb_germ_projection(
    germ: *const OrbGerm,
    n_order: *mut usize,
    rank: *mut usize,
    identities_hold: *mut bool,
) -> OrbStatus {
    guard(|| {
        nonnull!(germ, n_order, rank, identities_hold);
        let g = &(*germ).germ;
        if !g.is_centered_at(g.base_point()) {
            return fail(OrbStatus::InputError, "base point is not fixed by the source group");
        }
        let p = invariant_projection(g);
        *n_order = p.n.order();
        *rank = p.image.dim();
        *identities_hold = p.check().all();
        OrbStatus::Ok
    })
}

/// The `analyze` report for the scenario the germ was built from.
///
/// # Safety
/// `germ` is a live handle; `report_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn orb_germ_analyze_json(germ: *const OrbGerm, report_out: *mut *mut c_char) -> OrbStatus {
    guard(|| {
        nonnull!(germ, report_out);
        match report::analyze(&(*germ).scenario) {
            Ok(r) => {
                let passed = r.passed;
                let s = give_string(r.to_json(), report_out);
                if s == OrbStatus::Ok && !passed {
                    fail(OrbStatus::CheckFailed, r.summary.join("; "))
                } else {
                    s
                }
            }
            Err(e) => run_error(e),
        }
    })
}
