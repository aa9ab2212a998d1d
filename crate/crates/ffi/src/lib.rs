//! C interface to `preproj`.
//!
//! Objects are exposed as opaque handles returned through out-parameters and
//! released with the matching `pp_*_free`. Every
//! fallible function returns a [`PpStatus`]; on failure a description is
//! available from [`pp_last_error`] on the same thread. Strings returned to
//! the caller are owned by the caller and released with [`pp_string_free`].
//! Collection indices are 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use preproj::algebra::QuiverAlgebra;
use preproj::derived::{Complex, Derived};
use preproj::dynkin::{primitive_restricted_roots, DynkinSpec};
use preproj::io::{complex_from_value, load_algebra, ComplexFile, SmcFile};
use preproj::smc::{Direction, HeartMembership, NarrowGuards, Smc};
use preproj::suites::run_suite;
use preproj::Error;

/// Status codes. Nonzero values other than the last three match the exit
/// codes of the command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpStatus {
    Ok = 0,
    Parse = 2,
    Precondition = 3,
    Guard = 4,
    Internal = 5,
    NullArgument = 6,
    InvalidUtf8 = 7,
    Panic = 8,
}

impl From<&Error> for PpStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::Io(_) => PpStatus::Parse,
            Error::Precondition(_) => PpStatus::Precondition,
            Error::Guard(_) => PpStatus::Guard,
            Error::Internal(_) => PpStatus::Internal,
        }
    }
}

/// Mutation direction.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpDirection {
    Left = 0,
    Right = 1,
}

/// Finite-dimensional algebra given by a quiver with relations.
pub struct PpAlgebra(QuiverAlgebra);

/// Bounded complex of modules over a [`PpAlgebra`].
pub struct PpComplex(Complex);

/// Ordered collection of complexes.
pub struct PpSmc(Smc);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(PpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(PpStatus::from(&e), e.to_string())
    }
}

type FfiResult<T> = std::result::Result<T, Fail>;

/// Runs `f`, converting errors and panics into status codes.
fn guarded(f: impl FnOnce() -> FfiResult<()>) -> PpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PpStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            PpStatus::Panic
        }
    }
}

unsafe fn arg<'a, T>(p: *const T, name: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| Fail(PpStatus::NullArgument, format!("{name} is NULL")))
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or_else(|| Fail(PpStatus::NullArgument, format!("{name} is NULL")))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail(PpStatus::NullArgument, format!("{name} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(PpStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads an algebra: `pi:<dynkin>[:I=..]`, `path:A<n>`, or a JSON file path.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out_alg` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pp_algebra_load(spec: *const c_char, out_alg: *mut *mut PpAlgebra) -> PpStatus {
    guarded(|| {
        let spec = text(spec, "spec")?;
        let slot = out(out_alg, "out_alg")?;
        *slot = boxed(PpAlgebra(load_algebra(spec)?));
        Ok(())
    })
}

/// # Safety
/// `alg` must be NULL or a handle from [`pp_algebra_load`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pp_algebra_free(alg: *mut PpAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Number of vertices, or 0 if `alg` is NULL.
///
/// # Safety
/// `alg` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_algebra_num_vertices(alg: *const PpAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.0.num_vertices())
}

/// Dimension of the algebra over the base field, or 0 if `alg` is NULL.
///
/// # Safety
/// `alg` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_algebra_dim(alg: *const PpAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.0.dim())
}

/// Parses a complex (or a module, placed in degree 0) from JSON text.
///
/// # Safety
/// Pointers must be valid; `json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_from_json(
    alg: *const PpAlgebra,
    json: *const c_char,
    out_complex: *mut *mut PpComplex,
) -> PpStatus {
    guarded(|| {
        let a = arg(alg, "alg")?;
        let v: serde_json::Value =
            serde_json::from_str(text(json, "json")?).map_err(|e| Fail(PpStatus::Parse, e.to_string()))?;
        let slot = out(out_complex, "out_complex")?;
        *slot = boxed(PpComplex(complex_from_value(&a.0, v)?));
        Ok(())
    })
}

/// The simple module at a 0-based vertex, placed in cohomological degree
/// `degree`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_simple(
    alg: *const PpAlgebra,
    vertex: usize,
    degree: i64,
    out_complex: *mut *mut PpComplex,
) -> PpStatus {
    guarded(|| {
        let a = arg(alg, "alg")?;
        if vertex >= a.0.num_vertices() {
            return Err(Fail(PpStatus::Precondition, format!("vertex {vertex} out of range")));
        }
        let slot = out(out_complex, "out_complex")?;
        *slot = boxed(PpComplex(Complex::stalk(a.0.simple_module(vertex), degree)));
        Ok(())
    })
}

/// Direct sum of two complexes.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_direct_sum(
    alg: *const PpAlgebra,
    x: *const PpComplex,
    y: *const PpComplex,
    out_complex: *mut *mut PpComplex,
) -> PpStatus {
    guarded(|| {
        let (a, x, y) = (arg(alg, "alg")?, arg(x, "x")?, arg(y, "y")?);
        let slot = out(out_complex, "out_complex")?;
        *slot = boxed(PpComplex(x.0.direct_sum(&a.0, &y.0)));
        Ok(())
    })
}

/// The shifted complex `x[n]`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_shift(x: *const PpComplex, n: i64, out_complex: *mut *mut PpComplex) -> PpStatus {
    guarded(|| {
        let x = arg(x, "x")?;
        let slot = out(out_complex, "out_complex")?;
        *slot = boxed(PpComplex(x.0.shift(n)));
        Ok(())
    })
}

/// JSON text of a complex; release with [`pp_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_to_json(
    alg: *const PpAlgebra,
    x: *const PpComplex,
    out_json: *mut *mut c_char,
) -> PpStatus {
    guarded(|| {
        let (a, x) = (arg(alg, "alg")?, arg(x, "x")?);
        let slot = out(out_json, "out_json")?;
        let s = serde_json::to_string(&ComplexFile::from_complex(&a.0, &x.0)).map_err(|e| Fail(PpStatus::Internal, e.to_string()))?;
        *slot = to_c_string(s);
        Ok(())
    })
}

/// # Safety
/// `x` must be NULL or a live complex handle.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_free(x: *mut PpComplex) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// `dim Hom(x, y[n])` in the bounded derived category.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_hom_dim(
    alg: *const PpAlgebra,
    x: *const PpComplex,
    y: *const PpComplex,
    n: i64,
    out_dim: *mut usize,
) -> PpStatus {
    guarded(|| {
        let (a, x, y) = (arg(alg, "alg")?, arg(x, "x")?, arg(y, "y")?);
        let slot = out(out_dim, "out_dim")?;
        *slot = Derived::new(&a.0).hom_dim(&x.0, &y.0, n);
        Ok(())
    })
}

/// Lowest and highest degrees of nonzero cohomology.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_std_bounds(
    alg: *const PpAlgebra,
    x: *const PpComplex,
    out_lo: *mut i64,
    out_hi: *mut i64,
) -> PpStatus {
    guarded(|| {
        let (a, x) = (arg(alg, "alg")?, arg(x, "x")?);
        let (lo, hi) = (out(out_lo, "out_lo")?, out(out_hi, "out_hi")?);
        let w = Derived::new(&a.0).std_bounds(&x.0)?;
        (*lo, *hi) = (w.lo, w.hi);
        Ok(())
    })
}

/// The simple modules in degree 0.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_smc_standard(alg: *const PpAlgebra, out_smc: *mut *mut PpSmc) -> PpStatus {
    guarded(|| {
        let a = arg(alg, "alg")?;
        let slot = out(out_smc, "out_smc")?;
        *slot = boxed(PpSmc(Derived::new(&a.0).standard_smc()));
        Ok(())
    })
}

/// Parses a collection from JSON text.
///
/// # Safety
/// Pointers must be valid; `json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pp_smc_from_json(alg: *const PpAlgebra, json: *const c_char, out_smc: *mut *mut PpSmc) -> PpStatus {
    guarded(|| {
        let a = arg(alg, "alg")?;
        let f: SmcFile = serde_json::from_str(text(json, "json")?).map_err(|e| Fail(PpStatus::Parse, e.to_string()))?;
        let slot = out(out_smc, "out_smc")?;
        *slot = boxed(PpSmc(f.build(&a.0)?));
        Ok(())
    })
}

/// JSON text of a collection, including its mutation path; release with
/// [`pp_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_smc_to_json(alg: *const PpAlgebra, u: *const PpSmc, out_json: *mut *mut c_char) -> PpStatus {
    guarded(|| {
        let (a, u) = (arg(alg, "alg")?, arg(u, "u")?);
        let slot = out(out_json, "out_json")?;
        let s = serde_json::to_string(&SmcFile::from_smc(&a.0, &u.0)).map_err(|e| Fail(PpStatus::Internal, e.to_string()))?;
        *slot = to_c_string(s);
        Ok(())
    })
}

/// Number of elements, or 0 if `u` is NULL.
///
/// # Safety
/// `u` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pp_smc_len(u: *const PpSmc) -> usize {
    u.as_ref().map_or(0, |u| u.0.len())
}

/// Copy of element `index` of a collection.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_smc_element(u: *const PpSmc, index: usize, out_complex: *mut *mut PpComplex) -> PpStatus {
    guarded(|| {
        let u = arg(u, "u")?;
        let y = u.0.elements.get(index).ok_or_else(|| Fail(PpStatus::Precondition, format!("index {index} out of range")))?;
        let slot = out(out_complex, "out_complex")?;
        *slot = boxed(PpComplex(y.clone()));
        Ok(())
    })
}

/// Mutation of `u` at `index`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_smc_mutate(
    alg: *const PpAlgebra,
    u: *const PpSmc,
    index: usize,
    dir: PpDirection,
    out_smc: *mut *mut PpSmc,
) -> PpStatus {
    guarded(|| {
        let (a, u) = (arg(alg, "alg")?, arg(u, "u")?);
        if index >= u.0.len() {
            return Err(Fail(PpStatus::Precondition, format!("index {index} out of range")));
        }
        let slot = out(out_smc, "out_smc")?;
        let dir = match dir {
            PpDirection::Left => Direction::Left,
            PpDirection::Right => Direction::Right,
        };
        *slot = boxed(PpSmc(Derived::new(&a.0).mutate(&u.0, index, dir)?));
        Ok(())
    })
}

/// Whether `u` satisfies the Hom axioms of a simple-minded collection.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_smc_validate(alg: *const PpAlgebra, u: *const PpSmc, out_valid: *mut bool) -> PpStatus {
    guarded(|| {
        let (a, u) = (arg(alg, "alg")?, arg(u, "u")?);
        let slot = out(out_valid, "out_valid")?;
        *slot = Derived::new(&a.0).validate(&u.0).passed;
        Ok(())
    })
}

/// Window `[lo, hi]` of `x` relative to the collection `u`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pp_smc_window(
    alg: *const PpAlgebra,
    x: *const PpComplex,
    u: *const PpSmc,
    out_lo: *mut i64,
    out_hi: *mut i64,
) -> PpStatus {
    guarded(|| {
        let (a, x, u) = (arg(alg, "alg")?, arg(x, "x")?, arg(u, "u")?);
        let (lo, hi) = (out(out_lo, "out_lo")?, out(out_hi, "out_hi")?);
        let w = Derived::new(&a.0).smc_window(&x.0, &u.0)?;
        (*lo, *hi) = (w.lo, w.hi);
        Ok(())
    })
}

/// # Safety
/// `u` must be NULL or a live collection handle.
#[no_mangle]
pub unsafe extern "C" fn pp_smc_free(u: *mut PpSmc) {
    if !u.is_null() {
        drop(Box::from_raw(u));
    }
}

/// Decides whether `x` lies in the heart of some simple-minded collection.
///
/// On membership, `*out_in_heart` is true and, if `out_witness` is not NULL,
/// it receives a collection whose heart contains `x`. Otherwise
/// `*out_degree` receives a negative `n` with `Hom(x, x[n]) != 0`.
///
/// # Safety
/// Pointers must be valid; `out_witness` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn pp_heart_membership(
    alg: *const PpAlgebra,
    x: *const PpComplex,
    out_in_heart: *mut bool,
    out_degree: *mut i64,
    out_witness: *mut *mut PpSmc,
) -> PpStatus {
    guarded(|| {
        let (a, x) = (arg(alg, "alg")?, arg(x, "x")?);
        let (member, degree) = (out(out_in_heart, "out_in_heart")?, out(out_degree, "out_degree")?);
        match Derived::new(&a.0).heart_membership(&x.0, NarrowGuards::default())? {
            HeartMembership::InHeart(r) => {
                (*member, *degree) = (true, 0);
                if let Some(w) = out_witness.as_mut() {
                    *w = boxed(PpSmc(r.smc));
                }
            }
            HeartMembership::NegativeSelfExt { degree: n } => {
                (*member, *degree) = (false, n);
                if let Some(w) = out_witness.as_mut() {
                    *w = ptr::null_mut();
                }
            }
        }
        Ok(())
    })
}

/// Restricted and primitive restricted roots of `FAMILY RANK:I=...` as JSON
/// `{"restricted_roots": [...], "primitive": [...]}`.
///
/// # Safety
/// Pointers must be valid; `dynkin` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pp_restricted_roots_json(dynkin: *const c_char, out_json: *mut *mut c_char) -> PpStatus {
    guarded(|| {
        let spec: DynkinSpec = text(dynkin, "dynkin")?.parse()?;
        let slot = out(out_json, "out_json")?;
        let rs = spec.diagram.restrict_roots(&spec.contracted)?;
        let labels = |v: &[preproj::dynkin::RestrictedRoot]| v.iter().map(|r| r.label()).collect::<Vec<_>>();
        let v = serde_json::json!({
            "restricted_roots": labels(&rs),
            "primitive": labels(&primitive_restricted_roots(&rs)),
        });
        *slot = to_c_string(v.to_string());
        Ok(())
    })
}

/// Runs a named verification suite; `*out_passed` is true if every check
/// passed. If `out_report` is not NULL it receives the JSON report.
///
/// # Safety
/// Pointers must be valid; `name` NUL-terminated; `out_report` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn pp_verify_suite(
    name: *const c_char,
    seed: u64,
    out_passed: *mut bool,
    out_report: *mut *mut c_char,
) -> PpStatus {
    guarded(|| {
        let name = text(name, "name")?;
        let passed = out(out_passed, "out_passed")?;
        let r = run_suite(name, seed)?;
        *passed = r.passed();
        if let Some(slot) = out_report.as_mut() {
            *slot = to_c_string(r.to_json().to_string());
        }
        Ok(())
    })
}
