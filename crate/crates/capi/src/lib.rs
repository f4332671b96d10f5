//! C ABI for the orbifock library.
//!
//! The surface follows a conventional pattern: opaque handles for algebra
//! objects, an [`OrbifockStatus`] error code on every fallible call, results
//! returned through out-pointers, and a thread-local error message readable
//! via [`orbifock_last_error_message`] after any non-`Ok` status.
//!
//! Strings returned through out-pointers are NUL-terminated UTF-8 owned by
//! the caller; release them with [`orbifock_string_free`]. JSON documents
//! use the same shapes as the CLI's `--format json` output: object keys are
//! sorted and rationals are canonical `"p/q"` strings, so identical inputs
//! produce byte-identical documents.
//!
//! Every entry point catches panics and converts them to
//! [`OrbifockStatus::Panic`]; no unwinding crosses the FFI boundary.
//!
//! The C header is generated into `include/orbifock.h` by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde_json::{json, Value};

use orbifock::fock::{exp_graded_dims, virasoro_check, GradedDims};
use orbifock::lie::{catalog, Functional, LieAlgebra};
use orbifock::orbit::{quantize_nilpotent, vergne_polarization, verify_homomorphism};
use orbifock::rational::Rational;
use orbifock::towers::{levi_data, towers, Composition};
use orbifock::verma::{
    gram_matrix, irreducible_graded_dims, kac_determinant, singular_vectors, VermaModule,
};

/// Result code of every fallible call. `Ok` is zero; anything else leaves a
/// human-readable explanation in [`orbifock_last_error_message`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbifockStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An input failed to parse (malformed JSON, rational, or name).
    ParseError = 3,
    /// A mathematical precondition or verification failed.
    MathError = 4,
    /// An output buffer was too small for the result.
    BufferTooSmall = 5,
    /// An internal invariant was violated; the library state is unharmed
    /// but the call produced no result.
    Panic = 6,
}

/// Opaque handle to a finite-dimensional Lie algebra with rational
/// structure constants.
pub struct OrbifockAlgebra(LieAlgebra);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let stored = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error message unavailable").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Runs a fallible body with panic containment and error bookkeeping.
fn guarded(body: impl FnOnce() -> OrbifockStatus) -> OrbifockStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(cause) => {
            let message = if let Some(s) = cause.downcast_ref::<&str>() {
                (*s).to_string()
            } else if let Some(s) = cause.downcast_ref::<String>() {
                s.clone()
            } else {
                "unidentified panic".to_string()
            };
            set_error(format!("internal panic: {message}"));
            OrbifockStatus::Panic
        }
    }
}

/// Reads a required C string argument.
///
/// # Safety
/// `ptr` must be NULL or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, OrbifockStatus> {
    if ptr.is_null() {
        set_error(format!("{what} is NULL"));
        return Err(OrbifockStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        OrbifockStatus::InvalidUtf8
    })
}

/// Writes an owned string through an out-pointer.
///
/// # Safety
/// `out` must be NULL or valid for writing one pointer.
unsafe fn write_out_string(out: *mut *mut c_char, text: String) -> OrbifockStatus {
    if out.is_null() {
        set_error("output pointer is NULL".to_string());
        return OrbifockStatus::NullPointer;
    }
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            OrbifockStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL byte".to_string());
            OrbifockStatus::Panic
        }
    }
}

/// Dereferences a required algebra handle.
///
/// # Safety
/// `ptr` must be NULL or a handle from this library that has not been freed.
unsafe fn read_algebra<'a>(
    ptr: *const OrbifockAlgebra,
) -> Result<&'a LieAlgebra, OrbifockStatus> {
    if ptr.is_null() {
        set_error("algebra handle is NULL".to_string());
        return Err(OrbifockStatus::NullPointer);
    }
    Ok(&(*ptr).0)
}

/// JSON with sorted keys and canonical rational strings, matching the CLI's
/// `--format json` documents.
fn canonical(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON value serialization cannot fail")
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report serialization cannot fail")
}

/// Insists the bracket satisfies the Jacobi identity before any computation
/// that assumes a Lie algebra.
fn ensure_jacobi(g: &LieAlgebra) -> Result<(), OrbifockStatus> {
    let report = g.check_jacobi();
    match report.failure {
        None => Ok(()),
        Some(f) => {
            let labels = g.labels();
            let (i, j, k) = f.triple;
            set_error(format!(
                "bracket fails the Jacobi identity at ({}, {}, {})",
                labels[i], labels[j], labels[k]
            ));
            Err(OrbifockStatus::MathError)
        }
    }
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, OrbifockStatus> {
    s.parse::<Rational>().map_err(|e| {
        set_error(format!("bad {what}: {e}"));
        OrbifockStatus::ParseError
    })
}

/// A short static name for a status code, for logging; never freed.
#[no_mangle]
pub extern "C" fn orbifock_status_name(status: OrbifockStatus) -> *const c_char {
    let name: &'static CStr = match status {
        OrbifockStatus::Ok => c"ok",
        OrbifockStatus::NullPointer => c"null pointer",
        OrbifockStatus::InvalidUtf8 => c"invalid utf-8",
        OrbifockStatus::ParseError => c"parse error",
        OrbifockStatus::MathError => c"math error",
        OrbifockStatus::BufferTooSmall => c"buffer too small",
        OrbifockStatus::Panic => c"internal panic",
    };
    name.as_ptr()
}

/// Returns a copy of the error message from the most recent failed call on
/// this thread, or NULL if the last call succeeded. Free the copy with
/// `orbifock_string_free`.
#[no_mangle]
pub extern "C" fn orbifock_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string obtained from this library and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn orbifock_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra from a JSON document (`{"dim", "basis", "brackets"}`)
/// into a new handle. The bracket table is stored as given; computations
/// that require the Jacobi identity verify it and fail with `MathError` if
/// it does not hold.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid for
/// writing one pointer. On `Ok` the caller owns the handle and must release
/// it with `orbifock_algebra_free`.
#[no_mangle]
pub unsafe extern "C" fn orbifock_algebra_from_json(
    json: *const c_char,
    out: *mut *mut OrbifockAlgebra,
) -> OrbifockStatus {
    guarded(|| {
        let text = match read_str(json, "json argument") {
            Ok(t) => t,
            Err(status) => return status,
        };
        if out.is_null() {
            set_error("output pointer is NULL".to_string());
            return OrbifockStatus::NullPointer;
        }
        match LieAlgebra::from_json(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(OrbifockAlgebra(g)));
                OrbifockStatus::Ok
            }
            Err(e) => {
                set_error(format!("malformed algebra document: {e}"));
                OrbifockStatus::ParseError
            }
        }
    })
}

/// Builds a catalog algebra by name: `abelian<n>`, `heisenberg<2n+1>`,
/// `filiform4`, `oscillator`, or `sl2`.
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out` must be valid for
/// writing one pointer. On `Ok` the caller owns the handle.
#[no_mangle]
pub unsafe extern "C" fn orbifock_algebra_catalog(
    name: *const c_char,
    out: *mut *mut OrbifockAlgebra,
) -> OrbifockStatus {
    guarded(|| {
        let name = match read_str(name, "name argument") {
            Ok(t) => t,
            Err(status) => return status,
        };
        if out.is_null() {
            set_error("output pointer is NULL".to_string());
            return OrbifockStatus::NullPointer;
        }
        match catalog::by_name(name) {
            Some(g) => {
                *out = Box::into_raw(Box::new(OrbifockAlgebra(g)));
                OrbifockStatus::Ok
            }
            None => {
                set_error(format!(
                    "unknown catalog algebra {name:?} (known: {})",
                    catalog::NAME_PATTERNS.join(", ")
                ));
                OrbifockStatus::ParseError
            }
        }
    })
}

/// Releases an algebra handle. NULL is ignored.
///
/// # Safety
/// `ptr` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbifock_algebra_free(ptr: *mut OrbifockAlgebra) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Writes the dimension of the algebra to `out`.
///
/// # Safety
/// `ptr` must be a live handle; `out` must be valid for writing one value.
#[no_mangle]
pub unsafe extern "C" fn orbifock_algebra_dim(
    ptr: *const OrbifockAlgebra,
    out: *mut usize,
) -> OrbifockStatus {
    guarded(|| {
        let g = match read_algebra(ptr) {
            Ok(g) => g,
            Err(status) => return status,
        };
        if out.is_null() {
            set_error("output pointer is NULL".to_string());
            return OrbifockStatus::NullPointer;
        }
        *out = g.dim();
        OrbifockStatus::Ok
    })
}

/// Serializes the algebra back to its JSON document form.
///
/// # Safety
/// `ptr` must be a live handle; `out` must be valid for writing one
/// pointer. The returned string is freed with `orbifock_string_free`.
#[no_mangle]
pub unsafe extern "C" fn orbifock_algebra_to_json(
    ptr: *const OrbifockAlgebra,
    out: *mut *mut c_char,
) -> OrbifockStatus {
    guarded(|| {
        let g = match read_algebra(ptr) {
            Ok(g) => g,
            Err(status) => return status,
        };
        write_out_string(out, g.to_json())
    })
}

/// Checks the Jacobi identity and writes a report document
/// (`{"pass": bool, "failure"?: {...}}`).
///
/// # Safety
/// `ptr` must be a live handle; `out` must be valid for writing one
/// pointer. The returned string is freed with `orbifock_string_free`.
#[no_mangle]
pub unsafe extern "C" fn orbifock_jacobi_json(
    ptr: *const OrbifockAlgebra,
    out: *mut *mut c_char,
) -> OrbifockStatus {
    guarded(|| {
        let g = match read_algebra(ptr) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let report = g.check_jacobi();
        write_out_string(out, canonical(&to_value(&report)))
    })
}

/// Writes a structural classification document: dimension, basis labels,
/// nilpotency (with class), solvability, center, and the dimensions of the
/// lower central and derived series. Fails with `MathError` if the bracket
/// violates the Jacobi identity.
///
/// # Safety
/// `ptr` must be a live handle; `out` must be valid for writing one
/// pointer. The returned string is freed with `orbifock_string_free`.
#[no_mangle]
pub unsafe extern "C" fn orbifock_classify_json(
    ptr: *const OrbifockAlgebra,
    out: *mut *mut c_char,
) -> OrbifockStatus {
    guarded(|| {
        let g = match read_algebra(ptr) {
            Ok(g) => g,
            Err(status) => return status,
        };
        if let Err(status) = ensure_jacobi(g) {
            return status;
        }
        let lower_central: Vec<usize> =
            g.lower_central_series().iter().map(|s| s.dim()).collect();
        let derived: Vec<usize> = g.derived_series().iter().map(|s| s.dim()).collect();
        let doc = json!({
            "dim": g.dim(),
            "basis": g.labels(),
            "nilpotent": g.is_nilpotent(),
            "nilpotency_class": g.nilpotency_class(),
            "solvable": g.is_solvable(),
            "center": g.center().describe(g),
            "lower_central_dims": lower_central,
            "derived_dims": derived,
        });
        write_out_string(out, canonical(&doc))
    })
}

/// Quantizes the algebra at a functional (comma-separated rationals in the
/// dual basis) through its Vergne polarization and writes a document with
/// the polarization, the differential operators, and the homomorphism
/// check. Fails with `MathError` when a mathematical precondition does not
/// hold (Jacobi violation, non-nilpotent algebra, ...).
///
/// # Safety
/// `ptr` must be a live handle; `functional` must be a valid NUL-terminated
/// string; `out` must be valid for writing one pointer. The returned string
/// is freed with `orbifock_string_free`.
#[no_mangle]
pub unsafe extern "C" fn orbifock_quantize_json(
    ptr: *const OrbifockAlgebra,
    functional: *const c_char,
    out: *mut *mut c_char,
) -> OrbifockStatus {
    guarded(|| {
        let g = match read_algebra(ptr) {
            Ok(g) => g,
            Err(status) => return status,
        };
        if let Err(status) = ensure_jacobi(g) {
            return status;
        }
        let csv = match read_str(functional, "functional argument") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let f = match Functional::parse_csv(csv, g.dim()) {
            Ok(f) => f,
            Err(e) => {
                set_error(format!("bad functional: {e}"));
                return OrbifockStatus::ParseError;
            }
        };
        let p = match vergne_polarization(g, &f, None) {
            Ok(p) => p,
            Err(e) => {
                set_error(e.to_string());
                return OrbifockStatus::MathError;
            }
        };
        let rep = match quantize_nilpotent(g, &f, &p) {
            Ok(rep) => rep,
            Err(e) => {
                set_error(e.to_string());
                return OrbifockStatus::MathError;
            }
        };
        let hom = verify_homomorphism(g, &rep.operators);
        let operators: Vec<Value> = g
            .labels()
            .iter()
            .zip(&rep.operators)
            .map(|(label, op)| {
                json!({
                    "element": label,
                    "display": op.to_string(),
                    "operator": to_value(op),
                })
            })
            .collect();
        let doc = json!({
            "functional": to_value(&f.0),
            "polarization": p.describe(g),
            "variables": rep.variables,
            "operators": operators,
            "homomorphism": to_value(&hom),
        });
        write_out_string(out, canonical(&doc))
    })
}

/// Writes the full highest-weight module report at the given central charge
/// and weight (canonical rational strings) and level: Gram matrix, Kac
/// determinant, singular vectors, and irreducible graded dimensions through
/// the level.
///
/// # Safety
/// `c` and `h` must be valid NUL-terminated strings; `out` must be valid
/// for writing one pointer. The returned string is freed with
/// `orbifock_string_free`.
#[no_mangle]
pub unsafe extern "C" fn orbifock_verma_json(
    c: *const c_char,
    h: *const c_char,
    level: u32,
    out: *mut *mut c_char,
) -> OrbifockStatus {
    guarded(|| {
        let c = match read_str(c, "c argument").and_then(|s| parse_rational(s, "c")) {
            Ok(v) => v,
            Err(status) => return status,
        };
        let h = match read_str(h, "h argument").and_then(|s| parse_rational(s, "h")) {
            Ok(v) => v,
            Err(status) => return status,
        };
        let module = VermaModule::new(c.clone(), h.clone());

        let gm = gram_matrix(&module, level);
        let matrix: Vec<Vec<String>> = (0..gm.matrix.rows())
            .map(|r| gm.matrix.row(r).iter().map(Rational::to_string).collect())
            .collect();
        let singular = if level == 0 { Vec::new() } else { singular_vectors(&module, level) };
        let doc = json!({
            "c": to_value(&c),
            "h": to_value(&h),
            "level": level,
            "gram": {
                "level": level,
                "basis": to_value(&gm.partitions),
                "matrix": matrix,
            },
            "kac_determinant": to_value(&kac_determinant(&module, level)),
            "singular_vectors": to_value(&singular),
            "irreducible_dims": irreducible_graded_dims(&module, level),
        });
        write_out_string(out, canonical(&doc))
    })
}

/// Runs the Virasoro-relation check for the quadratic oscillator-mode
/// operators on the charged Fock space and writes the report document. The
/// status is `Ok` whether or not the relations hold; the document's
/// `"pass"` field carries the verdict.
///
/// # Safety
/// `momentum` must be a valid NUL-terminated string; `out` must be valid
/// for writing one pointer. The returned string is freed with
/// `orbifock_string_free`.
#[no_mangle]
pub unsafe extern "C" fn orbifock_sugawara_check_json(
    max_mode: u32,
    max_level: u32,
    momentum: *const c_char,
    out: *mut *mut c_char,
) -> OrbifockStatus {
    guarded(|| {
        let momentum = match read_str(momentum, "momentum argument")
            .and_then(|s| parse_rational(s, "momentum"))
        {
            Ok(v) => v,
            Err(status) => return status,
        };
        let report = virasoro_check(max_mode, max_level, &momentum);
        let doc = json!({
            "max_mode": max_mode,
            "max_level": max_level,
            "momentum": to_value(&momentum),
            "pass": report.pass,
            "inferred_central_charge": to_value(&report.inferred_central_charge),
            "failures": to_value(&report.failures),
        });
        write_out_string(out, canonical(&doc))
    })
}

/// Computes the graded dimensions of the symmetric algebra over a graded
/// space with `dims[i]` independent generators at level `i + 1`, writing
/// levels `0..=max_level` into `out`. `out_len` must be exactly
/// `max_level + 1`.
///
/// # Safety
/// `dims` must point to `dims_len` readable values (or be NULL when
/// `dims_len` is 0); `out` must point to `out_len` writable values.
#[no_mangle]
pub unsafe extern "C" fn orbifock_expdim(
    dims: *const u64,
    dims_len: usize,
    max_level: u32,
    out: *mut u64,
    out_len: usize,
) -> OrbifockStatus {
    guarded(|| {
        if dims.is_null() && dims_len > 0 {
            set_error("dims pointer is NULL".to_string());
            return OrbifockStatus::NullPointer;
        }
        if out.is_null() {
            set_error("output pointer is NULL".to_string());
            return OrbifockStatus::NullPointer;
        }
        let needed = max_level as usize + 1;
        if out_len != needed {
            set_error(format!("output buffer holds {out_len} values, need {needed}"));
            return OrbifockStatus::BufferTooSmall;
        }
        let dims = if dims_len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(dims, dims_len).to_vec()
        };
        let series = exp_graded_dims(&GradedDims(dims), max_level);
        std::ptr::copy_nonoverlapping(series.as_ptr(), out, needed);
        OrbifockStatus::Ok
    })
}

/// Enumerates maximal parabolic towers above the composition given by
/// `parts[0..parts_len]` and writes a document with the count, the Levi
/// block data, and the chains (as arrays of compositions).
///
/// # Safety
/// `parts` must point to `parts_len` readable values; `out` must be valid
/// for writing one pointer. The returned string is freed with
/// `orbifock_string_free`.
#[no_mangle]
pub unsafe extern "C" fn orbifock_towers_json(
    parts: *const u32,
    parts_len: usize,
    out: *mut *mut c_char,
) -> OrbifockStatus {
    guarded(|| {
        if parts.is_null() {
            set_error("parts pointer is NULL".to_string());
            return OrbifockStatus::NullPointer;
        }
        let parts = std::slice::from_raw_parts(parts, parts_len).to_vec();
        let start = match Composition::new(parts) {
            Ok(c) => c,
            Err(e) => {
                set_error(format!("bad composition: {e}"));
                return OrbifockStatus::ParseError;
            }
        };
        let all = towers(&start);
        let chains: Vec<&[Composition]> = all.iter().map(|t| t.chain.as_slice()).collect();
        let doc = json!({
            "composition": to_value(&start),
            "count": all.len(),
            "levi": to_value(&levi_data(&start)),
            "towers": to_value(&chains),
        });
        write_out_string(out, canonical(&doc))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Takes ownership of an out-string and frees the C allocation.
    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let s = CStr::from_ptr(ptr).to_str().expect("library returns UTF-8").to_string();
        orbifock_string_free(ptr);
        s
    }

    fn last_error() -> Option<String> {
        let ptr = orbifock_last_error_message();
        if ptr.is_null() {
            return None;
        }
        unsafe { Some(take_string(ptr)) }
    }

    unsafe fn catalog_handle(name: &str) -> *mut OrbifockAlgebra {
        let name = CString::new(name).unwrap();
        let mut handle: *mut OrbifockAlgebra = std::ptr::null_mut();
        let status = orbifock_algebra_catalog(name.as_ptr(), &mut handle);
        assert_eq!(status, OrbifockStatus::Ok, "{:?}", last_error());
        handle
    }

    #[test]
    fn catalog_lifecycle_and_dim() {
        unsafe {
            let g = catalog_handle("heisenberg3");
            let mut dim = 0usize;
            assert_eq!(orbifock_algebra_dim(g, &mut dim), OrbifockStatus::Ok);
            assert_eq!(dim, 3);
            assert!(last_error().is_none());
            orbifock_algebra_free(g);
        }
    }

    #[test]
    fn unknown_catalog_name_reports_parse_error() {
        unsafe {
            let name = CString::new("no_such_algebra").unwrap();
            let mut handle: *mut OrbifockAlgebra = std::ptr::null_mut();
            let status = orbifock_algebra_catalog(name.as_ptr(), &mut handle);
            assert_eq!(status, OrbifockStatus::ParseError);
            assert!(handle.is_null());
            let message = last_error().unwrap();
            assert!(message.contains("heisenberg<2n+1>"), "got: {message}");
        }
    }

    #[test]
    fn null_pointers_are_rejected_not_dereferenced() {
        unsafe {
            let mut dim = 0usize;
            assert_eq!(
                orbifock_algebra_dim(std::ptr::null(), &mut dim),
                OrbifockStatus::NullPointer
            );
            assert_eq!(
                orbifock_algebra_from_json(std::ptr::null(), std::ptr::null_mut()),
                OrbifockStatus::NullPointer
            );
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                orbifock_jacobi_json(std::ptr::null(), &mut out),
                OrbifockStatus::NullPointer
            );
            // Free functions tolerate NULL.
            orbifock_algebra_free(std::ptr::null_mut());
            orbifock_string_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn invalid_utf8_is_reported() {
        unsafe {
            let bogus = CString::new(vec![0xffu8, 0xfe]).unwrap();
            let mut handle: *mut OrbifockAlgebra = std::ptr::null_mut();
            let status = orbifock_algebra_catalog(bogus.as_ptr(), &mut handle);
            assert_eq!(status, OrbifockStatus::InvalidUtf8);
            assert!(last_error().unwrap().contains("UTF-8"));
        }
    }

    #[test]
    fn json_round_trip_through_the_boundary() {
        unsafe {
            let g = catalog_handle("filiform4");
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(orbifock_algebra_to_json(g, &mut out), OrbifockStatus::Ok);
            let text = take_string(out);

            let json = CString::new(text.clone()).unwrap();
            let mut reparsed: *mut OrbifockAlgebra = std::ptr::null_mut();
            assert_eq!(
                orbifock_algebra_from_json(json.as_ptr(), &mut reparsed),
                OrbifockStatus::Ok
            );
            let mut out2: *mut c_char = std::ptr::null_mut();
            assert_eq!(orbifock_algebra_to_json(reparsed, &mut out2), OrbifockStatus::Ok);
            assert_eq!(take_string(out2), text);

            orbifock_algebra_free(g);
            orbifock_algebra_free(reparsed);
        }
    }

    #[test]
    fn malformed_json_reports_parse_error() {
        unsafe {
            let json = CString::new("{\"dim\": 3").unwrap();
            let mut handle: *mut OrbifockAlgebra = std::ptr::null_mut();
            let status = orbifock_algebra_from_json(json.as_ptr(), &mut handle);
            assert_eq!(status, OrbifockStatus::ParseError);
            assert!(last_error().unwrap().contains("malformed"));
        }
    }

    #[test]
    fn jacobi_report_detects_bad_tables() {
        unsafe {
            let g = catalog_handle("sl2");
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(orbifock_jacobi_json(g, &mut out), OrbifockStatus::Ok);
            let doc: Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(doc["pass"], json!(true));
            orbifock_algebra_free(g);

            // [X,Y] = Z, [X,Z] = X violates Jacobi.
            let json = CString::new(
                r#"{"dim":3,"basis":["X","Y","Z"],"brackets":[
                    {"i":0,"j":1,"terms":[{"k":2,"coeff":"1"}]},
                    {"i":0,"j":2,"terms":[{"k":0,"coeff":"1"}]}]}"#,
            )
            .unwrap();
            let mut bad: *mut OrbifockAlgebra = std::ptr::null_mut();
            assert_eq!(
                orbifock_algebra_from_json(json.as_ptr(), &mut bad),
                OrbifockStatus::Ok,
                "parsing succeeds; verification is separate"
            );
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(orbifock_jacobi_json(bad, &mut out), OrbifockStatus::Ok);
            let doc: Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(doc["pass"], json!(false));

            // Computations that need a Lie algebra refuse the table.
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(orbifock_classify_json(bad, &mut out), OrbifockStatus::MathError);
            assert!(last_error().unwrap().contains("Jacobi"));
            orbifock_algebra_free(bad);
        }
    }

    #[test]
    fn classify_document_matches_structure() {
        unsafe {
            let g = catalog_handle("heisenberg5");
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(orbifock_classify_json(g, &mut out), OrbifockStatus::Ok);
            let doc: Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(doc["dim"], json!(5));
            assert_eq!(doc["nilpotency_class"], json!(2));
            assert_eq!(doc["center"], json!(["Z"]));
            assert_eq!(doc["lower_central_dims"], json!([5, 1, 0]));
            orbifock_algebra_free(g);
        }
    }

    #[test]
    fn quantize_reproduces_the_golden_representation() {
        unsafe {
            let g = catalog_handle("heisenberg3");
            let f = CString::new("0,0,1").unwrap();
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(orbifock_quantize_json(g, f.as_ptr(), &mut out), OrbifockStatus::Ok);
            let doc: Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(doc["variables"], json!(1));
            assert_eq!(doc["polarization"], json!(["Y", "Z"]));
            assert_eq!(doc["operators"][0]["display"], json!("l^1*d1^1"));
            assert_eq!(doc["operators"][1]["display"], json!("q1^1"));
            assert_eq!(doc["operators"][2]["display"], json!("l^1"));
            assert_eq!(doc["homomorphism"]["pass"], json!(true));

            let bad = CString::new("1,2").unwrap();
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                orbifock_quantize_json(g, bad.as_ptr(), &mut out),
                OrbifockStatus::ParseError
            );
            orbifock_algebra_free(g);
        }
    }

    #[test]
    fn quantize_rejects_non_nilpotent_algebras_as_math_errors() {
        unsafe {
            let g = catalog_handle("sl2");
            let f = CString::new("0,0,1").unwrap();
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                orbifock_quantize_json(g, f.as_ptr(), &mut out),
                OrbifockStatus::MathError
            );
            assert!(last_error().is_some());
            orbifock_algebra_free(g);
        }
    }

    #[test]
    fn verma_document_has_the_expected_sections() {
        unsafe {
            let c = CString::new("1/2").unwrap();
            let h = CString::new("1/16").unwrap();
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                orbifock_verma_json(c.as_ptr(), h.as_ptr(), 2, &mut out),
                OrbifockStatus::Ok
            );
            let doc: Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(doc["kac_determinant"], json!("0"));
            assert_eq!(doc["gram"]["basis"], json!([[2], [1, 1]]));
            assert_eq!(
                doc["singular_vectors"][0]["coeffs"],
                json!([[[2], "1"], [[1, 1], "-4/3"]])
            );
            assert_eq!(doc["irreducible_dims"], json!([1, 1, 1]));

            let bad = CString::new("1/0").unwrap();
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                orbifock_verma_json(bad.as_ptr(), h.as_ptr(), 2, &mut out),
                OrbifockStatus::ParseError
            );
        }
    }

    #[test]
    fn sugawara_check_passes_at_unit_central_charge() {
        unsafe {
            let momentum = CString::new("1/2").unwrap();
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                orbifock_sugawara_check_json(2, 3, momentum.as_ptr(), &mut out),
                OrbifockStatus::Ok
            );
            let doc: Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(doc["pass"], json!(true));
            assert_eq!(doc["inferred_central_charge"], json!("1"));
        }
    }

    #[test]
    fn expdim_fills_the_buffer_exactly() {
        unsafe {
            let dims = [1u64, 1, 1, 1, 1];
            let mut out = [0u64; 6];
            assert_eq!(
                orbifock_expdim(dims.as_ptr(), dims.len(), 5, out.as_mut_ptr(), out.len()),
                OrbifockStatus::Ok
            );
            assert_eq!(out, [1, 1, 2, 3, 5, 7]);

            let mut short = [0u64; 3];
            assert_eq!(
                orbifock_expdim(dims.as_ptr(), dims.len(), 5, short.as_mut_ptr(), short.len()),
                OrbifockStatus::BufferTooSmall
            );
            assert!(last_error().unwrap().contains("need 6"));
        }
    }

    #[test]
    fn towers_document_counts_chains() {
        unsafe {
            let parts = [1u32, 1, 1, 1];
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                orbifock_towers_json(parts.as_ptr(), parts.len(), &mut out),
                OrbifockStatus::Ok
            );
            let doc: Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(doc["count"], json!(6));
            assert_eq!(doc["towers"][0], json!([[1, 1, 1, 1], [2, 1, 1], [3, 1], [4]]));

            let zero = [1u32, 0];
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                orbifock_towers_json(zero.as_ptr(), zero.len(), &mut out),
                OrbifockStatus::ParseError
            );
        }
    }

    #[test]
    fn status_names_are_static_strings() {
        unsafe {
            let name = CStr::from_ptr(orbifock_status_name(OrbifockStatus::Ok));
            assert_eq!(name.to_str().unwrap(), "ok");
            let name = CStr::from_ptr(orbifock_status_name(OrbifockStatus::MathError));
            assert_eq!(name.to_str().unwrap(), "math error");
        }
    }
}
