//! C ABI over the verification toolkit.
//!
//! Every function returns a [`ChamberlabStatus`]. Results come back through
//! out-pointers; handles and strings allocated here must be released with the
//! matching `*_free` function. After a failing call,
//! [`chamberlab_last_error`] describes the problem on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chamberlab::coxeter::{CoxeterMatrix, CoxeterSystem, Word};
use chamberlab::error::Error;
use chamberlab::geometry::ProjectivePlane;
use chamberlab::models::{DeskModel, ModelKind};
use chamberlab::opposition::{
    verify_absolute_point_theorem, verify_fixed_simplex, verify_local_descent, verify_main0, verify_main2_all,
    verify_no_opposite_automorphism, verify_point_displacement, verify_polarities,
};
use chamberlab::report::CheckReport;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChamberlabStatus {
    Ok = 0,
    /// The check ran and found failures; the report lists them.
    CheckFailed = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    NotPrimePower = 4,
    Unsupported = 5,
    Internal = 6,
    Panic = 7,
}

/// A loaded model and its maps.
pub struct ChamberlabModel(DeskModel);

/// The outcome of one check.
pub struct ChamberlabReport(CheckReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> ChamberlabStatus {
    match err {
        Error::NotPrimePower(_) => ChamberlabStatus::NotPrimePower,
        Error::Unsupported(_) | Error::UnsupportedType | Error::NotApplicable(_) => ChamberlabStatus::Unsupported,
        Error::InvalidMatrix(_)
        | Error::InvalidGenerator { .. }
        | Error::InvalidGeometry(_)
        | Error::Parse(_)
        | Error::PreconditionViolated(_)
        | Error::NonSphericalParabolic
        | Error::NonSpherical => ChamberlabStatus::InvalidArgument,
        _ => ChamberlabStatus::Internal,
    }
}

enum Failure {
    Status(ChamberlabStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Lib(err)
    }
}

fn guard(body: impl FnOnce() -> Result<ChamberlabStatus, Failure>) -> ChamberlabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure::Status(status, message))) => {
            set_error(message);
            status
        }
        Ok(Err(Failure::Lib(err))) => {
            set_error(err.to_string());
            status_of(&err)
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {message}"));
            ChamberlabStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure::Status(ChamberlabStatus::NullPointer, format!("{name} is null"))
}

fn invalid(message: String) -> Failure {
    Failure::Status(ChamberlabStatus::InvalidArgument, message)
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{name} is not UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, name: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, name).map(Some)
    }
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn report_status(report: CheckReport, out: *mut *mut ChamberlabReport) -> Result<ChamberlabStatus, Failure> {
    let status = if report.passed() { ChamberlabStatus::Ok } else { ChamberlabStatus::CheckFailed };
    unsafe { write(out, Box::into_raw(Box::new(ChamberlabReport(report))), "out")? };
    Ok(status)
}

/// Static description of a status code. Never null; do not free.
#[no_mangle]
pub extern "C" fn chamberlab_status_str(status: ChamberlabStatus) -> *const c_char {
    let s: &'static CStr = match status {
        ChamberlabStatus::Ok => c"ok",
        ChamberlabStatus::CheckFailed => c"check failed",
        ChamberlabStatus::NullPointer => c"null pointer",
        ChamberlabStatus::InvalidArgument => c"invalid argument",
        ChamberlabStatus::NotPrimePower => c"not a prime power",
        ChamberlabStatus::Unsupported => c"unsupported",
        ChamberlabStatus::Internal => c"internal error",
        ChamberlabStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Copy of the last error message on this thread, or null if there is none.
/// Free with [`chamberlab_string_free`].
#[no_mangle]
pub extern "C" fn chamberlab_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a model: `kind` is `pg`, `gq`, `a3` or `thin`; `q` is used by `pg`
/// (0 for the default); `thin_type` is `A2` or `B2` for `thin` and may be null
/// otherwise.
///
/// # Safety
/// String arguments are null or nul-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_model_load(
    kind: *const c_char,
    q: u32,
    thin_type: *const c_char,
    out: *mut *mut ChamberlabModel,
) -> ChamberlabStatus {
    guard(|| {
        let kind: ModelKind = text(kind, "kind")?.parse()?;
        let thin_type = optional_text(thin_type, "thin_type")?;
        let model = DeskModel::load(kind, (q != 0).then_some(q), thin_type)?;
        write(out, Box::into_raw(Box::new(ChamberlabModel(model))), "out")?;
        Ok(ChamberlabStatus::Ok)
    })
}

/// # Safety
/// `model` is null or a live handle from [`chamberlab_model_load`].
#[no_mangle]
pub unsafe extern "C" fn chamberlab_model_free(model: *mut ChamberlabModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// `model` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_model_map_count(model: *const ChamberlabModel, out: *mut usize) -> ChamberlabStatus {
    guard(|| {
        let model = model.as_ref().ok_or_else(|| null("model"))?;
        write(out, model.0.map_count(), "out")?;
        Ok(ChamberlabStatus::Ok)
    })
}

/// Model name such as `pg3`. Free with [`chamberlab_string_free`].
///
/// # Safety
/// `model` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_model_name(model: *const ChamberlabModel, out: *mut *mut c_char) -> ChamberlabStatus {
    guard(|| {
        let model = model.as_ref().ok_or_else(|| null("model"))?;
        write(out, owned_string(model.0.name().to_string()), "out")?;
        Ok(ChamberlabStatus::Ok)
    })
}

/// Runs `check` (`main0`, `main0-local`, `main1`, `main2`, `main3`, `axioms`
/// or `beukjeeven`) on every map of the model. Returns `Ok` or `CheckFailed`
/// with a report in both cases.
///
/// # Safety
/// `model` is a live handle; `check` is nul-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_verify(
    model: *const ChamberlabModel,
    check: *const c_char,
    out: *mut *mut ChamberlabReport,
) -> ChamberlabStatus {
    guard(|| {
        let model = &model.as_ref().ok_or_else(|| null("model"))?.0;
        let report = match text(check, "check")? {
            "main0" => verify_main0(model),
            "main0-local" => verify_local_descent(model),
            "main1" => verify_no_opposite_automorphism(model),
            "main2" => verify_main2_all(model),
            "main3" => verify_fixed_simplex(model).report,
            "axioms" => {
                let mut report = model.twin().verify_twin_axioms(model.name());
                report.absorb(model.twin().plus().verify_gate_property(model.name()));
                report
            }
            "beukjeeven" => verify_point_displacement(model)?.report,
            other => return Err(invalid(format!("unknown check {other:?}"))),
        };
        report_status(report, out)
    })
}

/// Absolute points of every duality of PG(2,q), `q ≤ 5`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_scan_dualities(q: u32, out: *mut *mut ChamberlabReport) -> ChamberlabStatus {
    guard(|| {
        let scan = verify_absolute_point_theorem(&ProjectivePlane::new(q)?)?;
        report_status(scan.report, out)
    })
}

/// Absolute point counts and collinearity for the polarities of PG(2,q).
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_verify_polarities(q: u32, out: *mut *mut ChamberlabReport) -> ChamberlabStatus {
    guard(|| report_status(verify_polarities(&ProjectivePlane::new(q)?)?, out))
}

/// # Safety
/// `report` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_report_free(report: *mut ChamberlabReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_report_total(report: *const ChamberlabReport, out: *mut u64) -> ChamberlabStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        write(out, report.0.total, "out")?;
        Ok(ChamberlabStatus::Ok)
    })
}

/// # Safety
/// `report` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_report_failure_count(report: *const ChamberlabReport, out: *mut usize) -> ChamberlabStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        write(out, report.0.failures.len(), "out")?;
        Ok(ChamberlabStatus::Ok)
    })
}

/// The report as JSON. Free with [`chamberlab_string_free`].
///
/// # Safety
/// `report` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_report_json(report: *const ChamberlabReport, out: *mut *mut c_char) -> ChamberlabStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        write(out, owned_string(report.0.to_json()), "out")?;
        Ok(ChamberlabStatus::Ok)
    })
}

/// Normal form of `word` in the Coxeter system given by `matrix` (the text of
/// a matrix file). Free the result with [`chamberlab_string_free`].
///
/// # Safety
/// `matrix` and `word` are nul-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn chamberlab_coxeter_reduce(
    matrix: *const c_char,
    word: *const c_char,
    out: *mut *mut c_char,
) -> ChamberlabStatus {
    guard(|| {
        let system = CoxeterSystem::new(CoxeterMatrix::parse(text(matrix, "matrix")?)?);
        let word = Word::parse(text(word, "word")?, system.rank())?;
        let form = system.try_reduce(word.letters())?;
        write(out, owned_string(form.word().to_string()), "out")?;
        Ok(ChamberlabStatus::Ok)
    })
}
