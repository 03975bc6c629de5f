//! C interface to hullkit. Objects are opaque handles released with their
//! `_free` function; strings returned to the caller are released with
//! `hk_string_free`. Every fallible call returns an [`HkStatus`] and, on
//! failure, leaves a message for `hk_last_error` on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hullkit::algebra::{algebra_from_json, FiniteAlgebra};
use hullkit::conditions::build_pipeline;
use hullkit::config::RunConfig;
use hullkit::hull::hull_report;
use hullkit::select::{builtin_algebra, IdealSpec};
use hullkit::semigroup::{enumerate_endomorphisms, FinSemigroup};
use hullkit::HullError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    SizeRefused = 5,
    TheoremViolation = 6,
    Io = 7,
    Panic = 8,
    Other = 9,
}

/// A finite algebra.
pub struct HkAlgebra(FiniteAlgebra);

/// A finite semigroup, as returned by `hk_end`.
pub struct HkSemigroup(FinSemigroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &HullError) -> HkStatus {
    match e {
        HullError::Parse { .. } => HkStatus::Parse,
        HullError::Size { .. } => HkStatus::SizeRefused,
        HullError::TheoremViolation(_) => HkStatus::TheoremViolation,
        HullError::Io(_) => HkStatus::Io,
        HullError::Precondition(_)
        | HullError::EmptyIdeal(_)
        | HullError::NotIdealiser { .. }
        | HullError::NotACongruence { .. }
        | HullError::Dimension { .. } => HkStatus::Precondition,
        HullError::Construction(_) => HkStatus::Other,
    }
}

struct Fail(HkStatus, String);

impl From<HullError> for Fail {
    fn from(e: HullError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, turning errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> HkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HkStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            HkStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(HkStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(HkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(HkStatus::NullArgument, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail(HkStatus::NullArgument, format!("{what} is null")));
    }
    Ok(())
}

fn config() -> Result<RunConfig, Fail> {
    Ok(RunConfig::from_env()?)
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("json has no nul").into_raw()
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next hullkit call on the same thread.
#[no_mangle]
pub extern "C" fn hk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an algebra from JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_algebra_from_json(json: *const c_char, out: *mut *mut HkAlgebra) -> HkStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let alg = algebra_from_json(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(HkAlgebra(alg)));
        Ok(())
    })
}

/// Builds a named algebra: `set:N`, `cyclic:N`, `sym:N`, `vector:P:D` or
/// `clifford`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_algebra_builtin(name: *const c_char, out: *mut *mut HkAlgebra) -> HkStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let alg = builtin_algebra(text(name, "name")?)?;
        *out = Box::into_raw(Box::new(HkAlgebra(alg)));
        Ok(())
    })
}

/// Carrier size, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hk_algebra_size(alg: *const HkAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.0.size())
}

/// # Safety
/// `alg` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hk_algebra_free(alg: *mut HkAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Enumerates `End(A)`.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_end(alg: *const HkAlgebra, out: *mut *mut HkSemigroup) -> HkStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let a = obj(alg, "algebra")?;
        let end = enumerate_endomorphisms(&a.0, None, &config()?)?;
        *out = Box::into_raw(Box::new(HkSemigroup(end)));
        Ok(())
    })
}

/// Order of a semigroup, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hk_semigroup_order(s: *const HkSemigroup) -> usize {
    s.as_ref().map_or(0, |s| s.0.order())
}

/// Number of idempotents, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hk_semigroup_idempotents(s: *const HkSemigroup) -> usize {
    s.as_ref().map_or(0, |s| s.0.idempotents().len())
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hk_semigroup_free(s: *mut HkSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

fn resolve(a: &FiniteAlgebra, spec: &str, cfg: &RunConfig) -> Result<FinSemigroup, Fail> {
    let spec = IdealSpec::parse(spec)?;
    let end = enumerate_endomorphisms(a, None, cfg)?;
    let members = spec.resolve(a, &end, cfg)?;
    Ok(end.restrict(&members)?.0)
}

/// The hull report for an ideal of `End(A)` as JSON. `ideal` uses the CLI
/// syntax (`all`, `rank:K`, `non-units`, `minimal`, `gens:I,J`, or a file).
///
/// # Safety
/// `alg` must be a live handle, `ideal` a nul-terminated string and
/// `out_json` a valid pointer. Release the result with `hk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hk_hull_report_json(
    alg: *const HkAlgebra,
    ideal: *const c_char,
    out_json: *mut *mut c_char,
) -> HkStatus {
    guard(|| {
        out_ptr(out_json, "out_json")?;
        let a = obj(alg, "algebra")?;
        let cfg = config()?;
        let i = resolve(&a.0, text(ideal, "ideal")?, &cfg)?;
        let report = hull_report(&a.0, &i, None, &cfg)?;
        *out_json = owned_string(report.to_json());
        Ok(())
    })
}

/// Size of `A/∼` for an ideal of `End(A)`.
///
/// # Safety
/// `alg` must be a live handle, `ideal` a nul-terminated string and
/// `out_size` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_quotient_size(
    alg: *const HkAlgebra,
    ideal: *const c_char,
    out_size: *mut usize,
) -> HkStatus {
    guard(|| {
        out_ptr(out_size, "out_size")?;
        let a = obj(alg, "algebra")?;
        let cfg = config()?;
        let i = resolve(&a.0, text(ideal, "ideal")?, &cfg)?;
        *out_size = build_pipeline(&a.0, &i, &cfg)?.size();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
