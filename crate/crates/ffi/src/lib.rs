//! C ABI for the codegree toolkit.
//!
//! Every fallible call returns a [`CgStatus`]; on failure a message is
//! available from [`cg_last_error`] on the same thread. Rings are opaque
//! [`CgRing`] handles released with [`cg_ring_free`], and strings handed out
//! by the library are released with [`cg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use codegree::cli::{obstruction_json, ring_from_json};
use codegree::exact::{d_number_test, factor_monic, IntPolynomial};
use codegree::families::{build_rank3, cyclic_group_ring, Rank3Params};
use codegree::obstruction::{obstruction_report, Verdict};
use codegree::ring::BasedRing;

/// Largest group order accepted by [`cg_ring_cyclic`].
pub const CG_MAX_CYCLIC_ORDER: u32 = 64;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Internal = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CgVerdict {
    ObstructedDNumber = 0,
    ObstructedCyclotomicOnly = 1,
    NotObstructed = 2,
    Indeterminate = 3,
}

impl From<Verdict> for CgVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::ObstructedDNumber => CgVerdict::ObstructedDNumber,
            Verdict::ObstructedCyclotomicOnly => CgVerdict::ObstructedCyclotomicOnly,
            Verdict::NotObstructed => CgVerdict::NotObstructed,
            Verdict::Indeterminate => CgVerdict::Indeterminate,
        }
    }
}

/// A validated based ring.
pub struct CgRing {
    ring: BasedRing,
    id: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CgStatus, String);

impl Failure {
    fn input(msg: impl ToString) -> Self {
        Failure(CgStatus::InvalidInput, msg.to_string())
    }

    fn internal(msg: impl ToString) -> Self {
        Failure(CgStatus::Internal, msg.to_string())
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f` behind the ABI boundary: panics are caught and every failure
/// records its message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CgStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_owned());
            set_last_error(format!("panic: {msg}"));
            CgStatus::Panic
        }
    }
}

fn out_ptr<'a, T>(out: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    // SAFETY: the caller passes either null or a writable pointer.
    unsafe { out.as_mut() }.ok_or_else(|| Failure(CgStatus::NullPointer, format!("{name} is null")))
}

fn ring_ref<'a>(ring: *const CgRing) -> Result<&'a CgRing, Failure> {
    // SAFETY: the caller passes either null or a live handle.
    unsafe { ring.as_ref() }.ok_or_else(|| Failure(CgStatus::NullPointer, "ring is null".into()))
}

fn give_ring(out: *mut *mut CgRing, ring: BasedRing, id: String) -> Result<(), Failure> {
    let slot = out_ptr(out, "out")?;
    *slot = Box::into_raw(Box::new(CgRing { ring, id }));
    Ok(())
}

fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let slot = out_ptr(out, "out")?;
    *slot = CString::new(s).map_err(Failure::internal)?.into_raw();
    Ok(())
}

/// Parses and validates a ring definition in the JSON file format
/// (`rank`, `labels`, `unit`, `dual`, `N`).
///
/// # Safety
/// `json` must be null or a NUL-terminated string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cg_ring_from_json(json: *const c_char, out: *mut *mut CgRing) -> CgStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure(CgStatus::NullPointer, "json is null".into()));
        }
        // SAFETY: checked non-null; NUL termination is the caller's contract.
        let text = unsafe { CStr::from_ptr(json) }
            .to_str()
            .map_err(|e| Failure(CgStatus::InvalidUtf8, e.to_string()))?;
        let ring = ring_from_json(text).map_err(Failure::input)?;
        give_ring(out, ring, "json".into())
    })
}

/// Builds the rank-3 ring `K(k,l,m,n)`; requires `k^2 + l^2 = lm + kn + 1`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cg_ring_rank3(
    k: u64,
    l: u64,
    m: u64,
    n: u64,
    out: *mut *mut CgRing,
) -> CgStatus {
    guard(|| {
        let params = Rank3Params::new(k, l, m, n).map_err(Failure::input)?;
        let ring = build_rank3(params).map_err(Failure::input)?;
        give_ring(out, ring, params.to_string())
    })
}

/// Builds the group ring of `Z/n`, `1 <= n <= CG_MAX_CYCLIC_ORDER`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cg_ring_cyclic(n: u32, out: *mut *mut CgRing) -> CgStatus {
    guard(|| {
        if !(1..=CG_MAX_CYCLIC_ORDER).contains(&n) {
            return Err(Failure::input(format!(
                "order {n} outside 1..={CG_MAX_CYCLIC_ORDER}"
            )));
        }
        give_ring(out, cyclic_group_ring(n as usize), format!("Z/{n}"))
    })
}

/// Releases a ring handle. Null is ignored.
///
/// # Safety
/// `ring` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_ring_free(ring: *mut CgRing) {
    if !ring.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(ring) });
    }
}

/// # Safety
/// `ring` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cg_ring_rank(ring: *const CgRing, out: *mut usize) -> CgStatus {
    guard(|| {
        let rank = ring_ref(ring)?.ring.rank();
        *out_ptr(out, "out")? = rank;
        Ok(())
    })
}

/// Characteristic polynomial of alpha, e.g. `t^3 - 26t^2 + 148t - 148`.
/// Free the result with [`cg_string_free`].
///
/// # Safety
/// `ring` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cg_ring_alpha_charpoly(
    ring: *const CgRing,
    out: *mut *mut c_char,
) -> CgStatus {
    guard(|| {
        let poly = ring_ref(ring)?.ring.alpha_matrix().char_poly();
        give_string(out, poly.to_string())
    })
}

/// The obstruction report as pretty JSON, identical to
/// `codegree obstruct --format json`. Free with [`cg_string_free`].
///
/// # Safety
/// `ring` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cg_ring_obstruction_json(
    ring: *const CgRing,
    out: *mut *mut c_char,
) -> CgStatus {
    guard(|| {
        let r = ring_ref(ring)?;
        let json = obstruction_json(&r.ring, &r.id).map_err(Failure::internal)?;
        give_string(out, json)
    })
}

/// # Safety
/// `ring` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cg_ring_verdict(ring: *const CgRing, out: *mut CgVerdict) -> CgStatus {
    guard(|| {
        let r = ring_ref(ring)?;
        let report = obstruction_report(&r.ring, r.id.as_str()).map_err(Failure::internal)?;
        *out_ptr(out, "out")? = report.verdict.into();
        Ok(())
    })
}

/// d-number test for a root of the irreducible monic polynomial with
/// coefficients `coeffs[0] = 1, coeffs[1], ..., coeffs[len - 1]`, highest
/// degree first. `witness` receives the least failing index, or 0 when the
/// root is a d-number.
///
/// # Safety
/// `coeffs` must point to `len` readable values; the out pointers must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn cg_d_number_test(
    coeffs: *const i64,
    len: usize,
    is_d_number: *mut bool,
    witness: *mut usize,
) -> CgStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(Failure(CgStatus::NullPointer, "coeffs is null".into()));
        }
        // SAFETY: checked non-null; the length is the caller's contract.
        let desc = unsafe { std::slice::from_raw_parts(coeffs, len) };
        if desc.len() < 2 || desc[0] != 1 {
            return Err(Failure::input(
                "expected a monic polynomial of degree at least 1",
            ));
        }
        let p = IntPolynomial::from_desc(desc);
        let factored = factor_monic(&p).map_err(Failure::input)?;
        if !factored.is_irreducible() {
            return Err(Failure::input(format!("{p} is reducible")));
        }
        let outcome = d_number_test(&p).map_err(Failure::input)?;
        let (is_d, w) = (
            out_ptr(is_d_number, "is_d_number")?,
            out_ptr(witness, "witness")?,
        );
        *is_d = outcome.is_d_number;
        *w = outcome.witness.unwrap_or(0);
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string came from CString::into_raw and is freed once.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message of the last failed call on this thread, or null after a
/// successful call. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn cg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn cg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
