//! C ABI for `latpoly`.
//!
//! Polytopes cross the boundary as opaque `LatpolyPolytope` handles owned by
//! the caller and released with `latpoly_polytope_free`. Strings returned
//! through out-parameters are NUL-terminated UTF-8 owned by the caller and
//! released with `latpoly_string_free`. Rationals are returned as `"p/q"`.
//! Every function returns a `LatpolyStatus`; on failure the message is
//! available from `latpoly_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use latpoly::polytope::LatticePolytope;
use latpoly::{cayley, cli, invariants, io, Error};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatpolyStatus {
    Ok = 0,
    /// invalid argument or parameter
    Usage = 1,
    /// malformed input or not a full-dimensional lattice polytope
    InvalidPolytope = 2,
    /// an internal invariant failed
    Internal = 3,
    NullPointer = 4,
    /// the operation needs a smooth polytope
    NotSmooth = 5,
    /// a panic was caught at the boundary
    Panic = 6,
}

/// Opaque polytope handle.
pub struct LatpolyPolytope {
    inner: LatticePolytope,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LatpolyStatus {
    match e {
        Error::NotSmooth(_) => LatpolyStatus::NotSmooth,
        _ => match e.exit_code() {
            1 => LatpolyStatus::Usage,
            3 => LatpolyStatus::Internal,
            _ => LatpolyStatus::InvalidPolytope,
        },
    }
}

struct Failure(LatpolyStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LatpolyStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LatpolyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LatpolyStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic in latpoly");
            LatpolyStatus::Panic
        }
    }
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(LatpolyStatus::Usage, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or a handle from this library that has not been freed.
unsafe fn handle<'a>(p: *const LatpolyPolytope) -> Result<&'a LatticePolytope, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("polytope"))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON and rationals contain no NUL").into_raw()
}

fn new_handle(p: LatticePolytope) -> *mut LatpolyPolytope {
    Box::into_raw(Box::new(LatpolyPolytope { inner: p }))
}

/// Parses a `latpoly/1` JSON document into a new handle.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_polytope_from_json(json: *const c_char, out: *mut *mut LatpolyPolytope) -> LatpolyStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let p = io::PolytopeFile::parse(text)?.to_lattice()?;
        put(out, new_handle(p))
    })
}

/// Generates a family member: `simplex` (d, n), `blowup` (d, lambda, n),
/// `cube` (n) or `lawrence` (lengths...).
///
/// # Safety
/// `family` is a NUL-terminated string; `params` points to `n_params`
/// integers (or is null when `n_params` is 0); `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_generate(
    family: *const c_char,
    params: *const i64,
    n_params: usize,
    out: *mut *mut LatpolyPolytope,
) -> LatpolyStatus {
    guard(|| {
        let family = read_str(family, "family")?;
        if family == "product" {
            return Err(Failure(LatpolyStatus::Usage, "product is not available through the C interface".into()));
        }
        let values: &[i64] = if n_params == 0 {
            &[]
        } else if params.is_null() {
            return Err(null("params"));
        } else {
            std::slice::from_raw_parts(params, n_params)
        };
        let strings: Vec<String> = values.iter().map(i64::to_string).collect();
        let p = cli::generate_family(family, &strings)?;
        put(out, new_handle(p))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `p` is null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn latpoly_polytope_free(p: *mut LatpolyPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_polytope_dim(p: *const LatpolyPolytope, out: *mut usize) -> LatpolyStatus {
    guard(|| put(out, handle(p)?.dim()))
}

/// Both presentations as a `latpoly/1` JSON document.
///
/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_polytope_to_json(p: *const LatpolyPolytope, out: *mut *mut c_char) -> LatpolyStatus {
    guard(|| {
        let text = io::to_pretty(&io::polytope_json(handle(p)?));
        put(out, owned_string(text))
    })
}

/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_codegree(p: *const LatpolyPolytope, out: *mut u64) -> LatpolyStatus {
    guard(|| put(out, invariants::codegree(handle(p)?)?))
}

/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_degree(p: *const LatpolyPolytope, out: *mut u64) -> LatpolyStatus {
    guard(|| put(out, invariants::degree(handle(p)?)?))
}

/// Rational codegree as `"p/q"`.
///
/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_qcodegree(p: *const LatpolyPolytope, out: *mut *mut c_char) -> LatpolyStatus {
    guard(|| {
        let q = invariants::qcodegree(handle(p)?)?;
        put(out, owned_string(io::rat_to_string(&q)))
    })
}

/// Nef value as `"p/q"`; `LATPOLY_STATUS_NOT_SMOOTH` for non-smooth input.
///
/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_nef_value(p: *const LatpolyPolytope, out: *mut *mut c_char) -> LatpolyStatus {
    guard(|| {
        let t = invariants::nef_value(handle(p)?)?;
        put(out, owned_string(io::rat_to_string(&t)))
    })
}

/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_is_smooth(p: *const LatpolyPolytope, out: *mut bool) -> LatpolyStatus {
    guard(|| put(out, handle(p)?.is_smooth()))
}

/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_is_q_normal(p: *const LatpolyPolytope, out: *mut bool) -> LatpolyStatus {
    guard(|| put(out, invariants::is_q_normal(handle(p)?)?))
}

/// The full invariant report as JSON.
///
/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_analyze_json(p: *const LatpolyPolytope, out: *mut *mut c_char) -> LatpolyStatus {
    guard(|| {
        let r = invariants::analyze(handle(p)?)?;
        put(out, owned_string(io::to_pretty(&io::report_json(&r))))
    })
}

/// A maximal Cayley structure of order `s` as JSON, or `null`.
///
/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_cayley_detect_json(
    p: *const LatpolyPolytope,
    s: u64,
    out: *mut *mut c_char,
) -> LatpolyStatus {
    guard(|| {
        if s == 0 {
            return Err(Failure(LatpolyStatus::Usage, "order must be positive".into()));
        }
        let doc = match cayley::detect(handle(p)?, s) {
            Some(d) => io::to_pretty(&io::decomposition_json(&d)),
            None => "null\n".to_string(),
        };
        put(out, owned_string(doc))
    })
}

/// Order-`s` Cayley polytope of `n` summands given as `latpoly/1` JSON.
///
/// # Safety
/// `summands` points to `n` NUL-terminated strings; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn latpoly_cayley_build_json(
    summands: *const *const c_char,
    n: usize,
    s: u64,
    out: *mut *mut LatpolyPolytope,
) -> LatpolyStatus {
    guard(|| {
        if summands.is_null() {
            return Err(null("summands"));
        }
        let parts = std::slice::from_raw_parts(summands, n)
            .iter()
            .map(|&j| Ok(io::PolytopeFile::parse(read_str(j, "summand")?)?.to_vpolytope()?))
            .collect::<Result<Vec<_>, Failure>>()?;
        let p = LatticePolytope::from_v(&cayley::build(&parts, s)?)?;
        put(out, new_handle(p))
    })
}

/// Message of the last failed call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn latpoly_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` is null or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn latpoly_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version; static storage.
#[no_mangle]
pub extern "C" fn latpoly_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
