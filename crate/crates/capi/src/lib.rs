//! C ABI for the spectral-sequence calculator: opaque handles, status codes,
//! and JSON bridges, so other languages can bind without Rust types.
//!
//! Conventions: every fallible function returns an `int32_t` status
//! (`SS_OK` on success) and writes results through out-pointers; strings
//! returned by the library must be freed with [`ss_string_free`], reports
//! with [`ss_report_free`].  All functions are panic-safe.

use bkss_core::connectivity::{convergence_verdict, cube_cartesian, layer_connectivity};
use bkss_core::graph::Family;
use bkss_core::linalg::{FieldSpec, PrimeField, Rationals};
use bkss_core::models::{Model, ModelSpec};
use bkss_core::report::{self, ChecksSummary};
use bkss_core::specseq::{e2_page, PageOptions, PageReport};
use libc::{c_char, c_int};
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Success.
pub const SS_OK: c_int = 0;
/// An argument was null, out of range, or otherwise invalid.
pub const SS_EINVAL: c_int = 1;
/// Internal error (a panic was caught at the boundary).
pub const SS_EPANIC: c_int = 2;

/// Opaque handle to a computed page report.
pub struct SsReport {
    report: PageReport,
}

fn parse_family(family: *const c_char) -> Option<Family> {
    if family.is_null() {
        return None;
    }
    let s = unsafe { CStr::from_ptr(family) }.to_str().ok()?;
    s.parse().ok()
}

fn field_spec(prime: u64) -> Result<FieldSpec, ()> {
    if prime == 0 {
        Ok(FieldSpec::Rationals)
    } else {
        FieldSpec::parse(&prime.to_string()).map_err(|_| ())
    }
}

fn compute(family: Family, strands: u32, ambient: u32, q_max: u32, field: FieldSpec) -> Option<PageReport> {
    let spec = ModelSpec::new(family, strands, ambient, field).ok()?;
    let model = Model::new(spec).ok()?;
    let opts = PageOptions {
        check_d1sq: false,
        max_basis: None,
    };
    Some(match field {
        FieldSpec::Rationals => e2_page(&model, &Rationals, q_max, &opts),
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p).ok()?;
            e2_page(&model, &f, q_max, &opts)
        }
    })
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Compute all rows `q <= q_max` for the given model.
///
/// `family` is one of `"knots"`, `"links"`, `"hlinks"`, `"braids"`;
/// `prime` selects the coefficient field (`0` for the rationals, otherwise a
/// prime).  On success writes a fresh handle to `*out`.
///
/// # Safety
/// `family` must be null or a valid NUL-terminated string; `out` must be a
/// valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_report_compute(
    family: *const c_char,
    strands: u32,
    ambient: u32,
    q_max: u32,
    prime: u64,
    out: *mut *mut SsReport,
) -> c_int {
    if out.is_null() {
        return SS_EINVAL;
    }
    let result = catch_unwind(AssertUnwindSafe(|| {
        let fam = parse_family(family)?;
        let field = field_spec(prime).ok()?;
        let report = compute(fam, strands, ambient, q_max, field)?;
        Some(Box::new(SsReport { report }))
    }));
    match result {
        Ok(Some(handle)) => {
            unsafe { *out = Box::into_raw(handle) };
            SS_OK
        }
        Ok(None) => SS_EINVAL,
        Err(_) => SS_EPANIC,
    }
}

/// Free a report handle (null is a no-op).
///
/// # Safety
/// `handle` must be null or a handle returned by [`ss_report_compute`] that
/// has not been freed before.
#[no_mangle]
pub unsafe extern "C" fn ss_report_free(handle: *mut SsReport) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Dimensions at spot `(q, p)`.  Writes `dim E1` to `*e1` and `dim E2` to
/// `*e2` (`-1` when the row was truncated before ranks were computed).
/// Spots outside the computed support report `0, 0`.
///
/// # Safety
/// `handle` must be a live handle from [`ss_report_compute`]; `e1` and `e2`
/// must be valid writable pointers.
#[no_mangle]
pub unsafe extern "C" fn ss_report_entry(
    handle: *const SsReport,
    q: u32,
    p: u32,
    e1: *mut u64,
    e2: *mut i64,
) -> c_int {
    if handle.is_null() || e1.is_null() || e2.is_null() {
        return SS_EINVAL;
    }
    let report = unsafe { &(*handle).report };
    if q > report.q_max {
        return SS_EINVAL;
    }
    let (de1, de2) = match report.entry(q, p) {
        Some(entry) => (entry.e1 as u64, entry.e2.map_or(-1, |v| v as i64)),
        None => (0, 0),
    };
    unsafe {
        *e1 = de1;
        *e2 = de2;
    }
    SS_OK
}

/// Render the report as the canonical JSON document (verdict included).
/// Returns a fresh string; free with [`ss_string_free`].  Null on error.
///
/// # Safety
/// `handle` must be null or a live handle from [`ss_report_compute`].
#[no_mangle]
pub unsafe extern "C" fn ss_report_json(handle: *const SsReport) -> *mut c_char {
    if handle.is_null() {
        return ptr::null_mut();
    }
    let result = catch_unwind(AssertUnwindSafe(|| {
        let report = unsafe { &(*handle).report };
        let verdict = convergence_verdict(report.family, report.ambient);
        report::to_json(report, &verdict, &ChecksSummary::all_skipped())
    }));
    match result {
        Ok(json) => to_c_string(json),
        Err(_) => ptr::null_mut(),
    }
}

/// Convergence verdict for a family at ambient dimension `n`, as JSON.
/// Free with [`ss_string_free`].  Null on invalid input.
///
/// # Safety
/// `family` must be null or a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ss_verdict_json(family: *const c_char, ambient: u32) -> *mut c_char {
    let Some(fam) = parse_family(family) else {
        return ptr::null_mut();
    };
    let result = catch_unwind(AssertUnwindSafe(|| {
        serde_json_string(&convergence_verdict(fam, ambient))
    }));
    match result {
        Ok(Some(json)) => to_c_string(json),
        _ => ptr::null_mut(),
    }
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> Option<String> {
    let mut s = serde_json::to_string_pretty(value).ok()?;
    s.push('\n');
    Some(s)
}

/// `(k-1)(n-2)+1`: how cartesian the `k`-cube of punctured embeddings is.
/// Requires `k >= 1, n >= 1`.
///
/// # Safety
/// `out` must be null or a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_cube_cartesian(k: u32, n: u32, out: *mut i64) -> c_int {
    if out.is_null() || k < 1 || n < 1 {
        return SS_EINVAL;
    }
    unsafe { *out = cube_cartesian(k, n) };
    SS_OK
}

/// `(j-1)(n-3)`: connectivity of the `j`-th tower layer.  Requires
/// `j >= 1, n >= 3`.
///
/// # Safety
/// `out` must be null or a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_layer_connectivity(j: u32, n: u32, out: *mut i64) -> c_int {
    if out.is_null() || j < 1 || n < 3 {
        return SS_EINVAL;
    }
    unsafe { *out = layer_connectivity(j, n) };
    SS_OK
}

/// Free a string returned by this library (null is a no-op).
///
/// # Safety
/// `s` must have been returned by a `bkss` function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn ss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn compute_handle(family: &str, strands: u32, ambient: u32, q_max: u32) -> *mut SsReport {
        let fam = CString::new(family).unwrap();
        let mut out: *mut SsReport = ptr::null_mut();
        let status =
            unsafe { ss_report_compute(fam.as_ptr(), strands, ambient, q_max, 0, &mut out) };
        assert_eq!(status, SS_OK);
        assert!(!out.is_null());
        out
    }

    #[test]
    fn compute_entry_and_json() {
        let handle = compute_handle("links", 2, 4, 3);
        let (mut e1, mut e2) = (0u64, 0i64);
        let status = unsafe { ss_report_entry(handle, 3, 2, &mut e1, &mut e2) };
        assert_eq!(status, SS_OK);
        assert_eq!((e1, e2), (4, 3));
        let json = unsafe { ss_report_json(handle) };
        assert!(!json.is_null());
        let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
        assert!(text.contains("\"family\": \"links\""));
        unsafe { ss_string_free(json) };
        unsafe { ss_report_free(handle) };
    }

    #[test]
    fn invalid_arguments() {
        let mut out: *mut SsReport = ptr::null_mut();
        unsafe {
            assert_eq!(
                ss_report_compute(ptr::null(), 1, 4, 3, 0, &mut out),
                SS_EINVAL
            );
            let fam = CString::new("nonsense").unwrap();
            assert_eq!(
                ss_report_compute(fam.as_ptr(), 1, 4, 3, 0, &mut out),
                SS_EINVAL
            );
            let fam = CString::new("links").unwrap();
            // 4 is not a prime.
            assert_eq!(
                ss_report_compute(fam.as_ptr(), 1, 4, 3, 4, &mut out),
                SS_EINVAL
            );
            // Braids need n >= 4.
            let fam = CString::new("braids").unwrap();
            assert_eq!(
                ss_report_compute(fam.as_ptr(), 2, 3, 3, 0, &mut out),
                SS_EINVAL
            );
        }
    }

    #[test]
    fn formulas() {
        let mut v = 0i64;
        unsafe {
            assert_eq!(ss_cube_cartesian(3, 4, &mut v), SS_OK);
            assert_eq!(v, 5);
            assert_eq!(ss_layer_connectivity(3, 4, &mut v), SS_OK);
            assert_eq!(v, 2);
            assert_eq!(ss_layer_connectivity(0, 4, &mut v), SS_EINVAL);
            assert_eq!(ss_cube_cartesian(1, 1, std::ptr::null_mut()), SS_EINVAL);
        }
    }

    #[test]
    fn verdict_json() {
        let fam = CString::new("hlinks").unwrap();
        let json = unsafe { ss_verdict_json(fam.as_ptr(), 5) };
        assert!(!json.is_null());
        let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
        assert!(text.contains("\"cohomology\": \"established\""));
        assert!(text.contains("\"homotopy\": \"unknown\""));
        unsafe { ss_string_free(json) };
    }

    #[test]
    fn prime_field_compute() {
        let fam = CString::new("links").unwrap();
        let mut out: *mut SsReport = ptr::null_mut();
        unsafe {
            assert_eq!(ss_report_compute(fam.as_ptr(), 2, 4, 3, 2, &mut out), SS_OK);
            let (mut e1, mut e2) = (0u64, 0i64);
            assert_eq!(ss_report_entry(out, 3, 2, &mut e1, &mut e2), SS_OK);
            assert_eq!((e1, e2), (4, 3));
            ss_report_free(out);
        }
    }
}
