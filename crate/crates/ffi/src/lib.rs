//! C ABI over the scenario engine.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`CvStatus`]; on failure the message is available from
//! [`cv_last_error`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use convar::action::is_permissible;
use convar::builtins::{builtin, BUILTIN_NAMES};
use convar::perm::{Permutation, PermutationGroup};
use convar::report::{Status, VerificationReport};
use convar::runner::{run_scenario, RunOptions};
use convar::scenario::{ScenarioError, ScenarioFile};
use convar::spaces::{ConceptualVariable, Partition, PointSpace};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    UnknownBuiltin = 5,
    InvalidArgument = 6,
    Io = 7,
    Panic = 8,
}

/// Outcome of a single check in a report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvCheckStatus {
    Pass = 0,
    Fail = 1,
    NotApplicable = 2,
    Error = 3,
    Informational = 4,
}

impl From<Status> for CvCheckStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Pass => CvCheckStatus::Pass,
            Status::Fail => CvCheckStatus::Fail,
            Status::NotApplicable => CvCheckStatus::NotApplicable,
            Status::Error => CvCheckStatus::Error,
            Status::Informational => CvCheckStatus::Informational,
        }
    }
}

/// A parsed scenario.
pub struct CvScenario(ScenarioFile);

/// The result of running a scenario.
pub struct CvReport(VerificationReport);

/// An enumerated permutation group.
pub struct CvGroup(PermutationGroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    let c = CString::new(msg).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: CvStatus, msg: impl Into<String>) -> CvStatus {
    set_error(msg);
    status
}

fn scenario_status(e: &ScenarioError) -> CvStatus {
    match e {
        ScenarioError::Parse(_) => CvStatus::Parse,
        ScenarioError::Validation { .. } => CvStatus::Validation,
        ScenarioError::UnknownBuiltin(_) => CvStatus::UnknownBuiltin,
        ScenarioError::Io { .. } => CvStatus::Io,
    }
}

fn guard(f: impl FnOnce() -> CvStatus) -> CvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(CvStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CvStatus> {
    if p.is_null() {
        return Err(fail(CvStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CvStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> CvStatus {
    *out = Box::into_raw(Box::new(value));
    CvStatus::Ok
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CvStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CvStatus::Ok
        }
        Err(_) => fail(CvStatus::InvalidArgument, "string contains an interior nul"),
    }
}

/// Message of the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a scenario from JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_scenario_parse(
    json: *const c_char,
    out: *mut *mut CvScenario,
) -> CvStatus {
    guard(|| {
        if out.is_null() {
            return fail(CvStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match ScenarioFile::from_json(text) {
            Ok(f) => write_out(out, CvScenario(f)),
            Err(e) => fail(scenario_status(&e), e.to_string()),
        }
    })
}

/// Loads a built-in scenario by name.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_scenario_builtin(
    name: *const c_char,
    out: *mut *mut CvScenario,
) -> CvStatus {
    guard(|| {
        if out.is_null() {
            return fail(CvStatus::NullPointer, "null output pointer");
        }
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match builtin(name) {
            Ok(f) => write_out(out, CvScenario(f)),
            Err(e) => fail(scenario_status(&e), e.to_string()),
        }
    })
}

/// Serializes a scenario to JSON. Free the result with [`cv_string_free`].
///
/// # Safety
/// `scenario` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_scenario_to_json(
    scenario: *const CvScenario,
    out: *mut *mut c_char,
) -> CvStatus {
    guard(|| {
        if scenario.is_null() || out.is_null() {
            return fail(CvStatus::NullPointer, "null argument");
        }
        write_string(out, (*scenario).0.to_json())
    })
}

/// Runs every check of a scenario. `tolerance_scale` multiplies all
/// tolerances; pass 1.0 for the defaults.
///
/// # Safety
/// `scenario` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_scenario_run(
    scenario: *const CvScenario,
    tolerance_scale: f64,
    out: *mut *mut CvReport,
) -> CvStatus {
    guard(|| {
        if scenario.is_null() || out.is_null() {
            return fail(CvStatus::NullPointer, "null argument");
        }
        let opts = RunOptions {
            tolerance_scale,
            ..RunOptions::default()
        };
        match run_scenario(&(*scenario).0, &opts) {
            Ok(r) => write_out(out, CvReport(r)),
            Err(e) => fail(scenario_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `scenario` must come from this library or be NULL, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cv_scenario_free(scenario: *mut CvScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// 0 when no check failed or errored, 1 otherwise, -1 for NULL.
///
/// # Safety
/// `report` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn cv_report_exit_code(report: *const CvReport) -> i32 {
    if report.is_null() {
        return -1;
    }
    (*report).0.exit_code()
}

/// # Safety
/// `report` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn cv_report_check_count(report: *const CvReport) -> usize {
    if report.is_null() {
        return 0;
    }
    (*report).0.checks.len()
}

/// # Safety
/// `report` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_report_check_status(
    report: *const CvReport,
    index: usize,
    out: *mut CvCheckStatus,
) -> CvStatus {
    if report.is_null() || out.is_null() {
        return fail(CvStatus::NullPointer, "null argument");
    }
    let report = &*report;
    match report.0.checks.get(index) {
        Some(c) => {
            *out = c.status.into();
            CvStatus::Ok
        }
        None => fail(
            CvStatus::InvalidArgument,
            format!("check index {index} out of range"),
        ),
    }
}

/// Serializes a report to JSON. Free the result with [`cv_string_free`].
///
/// # Safety
/// `report` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_report_to_json(
    report: *const CvReport,
    out: *mut *mut c_char,
) -> CvStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(CvStatus::NullPointer, "null argument");
        }
        write_string(out, (*report).0.to_json())
    })
}

/// # Safety
/// `report` must come from this library or be NULL, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cv_report_free(report: *mut CvReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be a string returned by this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn cv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Closes `count` generators on `degree` points. `images` holds the
/// generators back to back as image arrays, `count * degree` entries.
///
/// # Safety
/// `images` must point to `count * degree` readable values (may be NULL
/// when `count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_group_generate(
    degree: usize,
    images: *const usize,
    count: usize,
    out: *mut *mut CvGroup,
) -> CvStatus {
    guard(|| {
        if out.is_null() || (images.is_null() && count > 0) {
            return fail(CvStatus::NullPointer, "null argument");
        }
        let mut generators = Vec::with_capacity(count);
        if count > 0 {
            let flat = std::slice::from_raw_parts(images, count * degree);
            for chunk in flat.chunks(degree.max(1)) {
                match Permutation::new(chunk.to_vec()) {
                    Ok(p) => generators.push(p),
                    Err(e) => return fail(CvStatus::InvalidArgument, e.to_string()),
                }
            }
        }
        match PermutationGroup::generate(degree, generators) {
            Ok(g) => write_out(out, CvGroup(g)),
            Err(e) => fail(CvStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `group` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn cv_group_order(group: *const CvGroup) -> usize {
    if group.is_null() {
        return 0;
    }
    (*group).0.order()
}

/// # Safety
/// `group` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn cv_group_is_transitive(group: *const CvGroup) -> bool {
    !group.is_null() && (*group).0.is_transitive()
}

/// # Safety
/// `group` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn cv_group_has_trivial_isotropy(group: *const CvGroup) -> bool {
    !group.is_null() && (*group).0.has_trivial_isotropy()
}

/// # Safety
/// `group` must come from this library or be NULL, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cv_group_free(group: *mut CvGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Whether the variable with value labels `assignment` (one per point,
/// `len` must equal the group degree) is permissible under `group`.
///
/// # Safety
/// `group` must come from this library; `assignment` must point to `len`
/// readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_is_permissible(
    group: *const CvGroup,
    assignment: *const usize,
    len: usize,
    out: *mut bool,
) -> CvStatus {
    guard(|| {
        if group.is_null() || out.is_null() || (assignment.is_null() && len > 0) {
            return fail(CvStatus::NullPointer, "null argument");
        }
        let labels = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(assignment, len)
        };
        let theta = PointSpace::range("ffi", len)
            .map(Arc::new)
            .and_then(|space| {
                ConceptualVariable::from_partition("theta", space, &Partition::from_labels(labels))
            })
            .and_then(|theta| is_permissible(&theta, &(*group).0));
        match theta {
            Ok(b) => {
                *out = b;
                CvStatus::Ok
            }
            Err(e) => fail(CvStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Number of built-in scenario names.
#[no_mangle]
pub extern "C" fn cv_builtin_count() -> usize {
    BUILTIN_NAMES.len()
}

/// Name of the built-in at `index` as a static string, or NULL.
#[no_mangle]
pub extern "C" fn cv_builtin_name(index: usize) -> *const c_char {
    static NAMES: [&CStr; 6] = [
        c"qubit",
        c"cyclic-N",
        c"singlet",
        c"parity-z4",
        c"a2-smoke",
        c"rotation-sign-probe",
    ];
    NAMES.get(index).map_or(ptr::null(), |c| c.as_ptr())
}
