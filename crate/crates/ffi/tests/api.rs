use std::ffi::{c_char, CStr, CString};
use std::ptr;

use codegree_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { cg_string_free(p) };
    s
}

fn last_error() -> Option<String> {
    let p = cg_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn rank3(k: u64, l: u64, m: u64, n: u64) -> *mut CgRing {
    let mut ring = ptr::null_mut();
    assert_eq!(
        unsafe { cg_ring_rank3(k, l, m, n, &mut ring) },
        CgStatus::Ok
    );
    ring
}

fn verdict(ring: *const CgRing) -> CgVerdict {
    let mut v = CgVerdict::Indeterminate;
    assert_eq!(unsafe { cg_ring_verdict(ring, &mut v) }, CgStatus::Ok);
    v
}

#[test]
fn rank3_verdicts() {
    for ((k, l, m, n), expected) in [
        ((2, 1, 0, 2), CgVerdict::ObstructedDNumber),
        ((3, 2, 3, 2), CgVerdict::ObstructedDNumber),
        ((911, 463, 1799, 232), CgVerdict::ObstructedCyclotomicOnly),
    ] {
        let ring = rank3(k, l, m, n);
        assert_eq!(verdict(ring), expected);
        unsafe { cg_ring_free(ring) };
    }
}

#[test]
fn charpoly_rank_and_report() {
    let ring = rank3(2, 1, 0, 2);
    let mut rank = 0;
    assert_eq!(unsafe { cg_ring_rank(ring, &mut rank) }, CgStatus::Ok);
    assert_eq!(rank, 3);

    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { cg_ring_alpha_charpoly(ring, &mut s) },
        CgStatus::Ok
    );
    assert_eq!(take_string(s), "t^3 - 26t^2 + 148t - 148");

    assert_eq!(
        unsafe { cg_ring_obstruction_json(ring, &mut s) },
        CgStatus::Ok
    );
    let report: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(report["ring"], "K(2,1,0,2)");
    assert_eq!(report["verdict"], "ObstructedDNumber");
    assert_eq!(report["d_number"]["witness"], 1);
    unsafe { cg_ring_free(ring) };
}

#[test]
fn json_rings_and_cyclic_groups() {
    let fib = CString::new(r#"{"rank":2,"unit":[0],"N":[[[1,0],[0,1]],[[0,1],[1,1]]]}"#).unwrap();
    let mut ring = ptr::null_mut();
    assert_eq!(
        unsafe { cg_ring_from_json(fib.as_ptr(), &mut ring) },
        CgStatus::Ok
    );
    assert_eq!(verdict(ring), CgVerdict::NotObstructed);
    unsafe { cg_ring_free(ring) };

    for n in [1, 7, 12] {
        assert_eq!(unsafe { cg_ring_cyclic(n, &mut ring) }, CgStatus::Ok);
        assert_eq!(verdict(ring), CgVerdict::NotObstructed);
        unsafe { cg_ring_free(ring) };
    }
}

#[test]
fn failures_set_status_and_message() {
    let mut ring = ptr::null_mut();
    assert_eq!(
        unsafe { cg_ring_rank3(2, 1, 0, 3, &mut ring) },
        CgStatus::InvalidInput
    );
    assert!(ring.is_null());
    assert!(last_error().unwrap().contains("5 != 7"));

    assert_eq!(
        unsafe { cg_ring_cyclic(0, &mut ring) },
        CgStatus::InvalidInput
    );
    assert_eq!(
        unsafe { cg_ring_cyclic(65, &mut ring) },
        CgStatus::InvalidInput
    );

    let bad = CString::new(r#"{"rank":2,"unit":[0],"N":[[[1,0],[0,1]],[[0,1],[1,-1]]]}"#).unwrap();
    assert_eq!(
        unsafe { cg_ring_from_json(bad.as_ptr(), &mut ring) },
        CgStatus::InvalidInput
    );
    assert!(last_error().unwrap().contains("nonnegative"));

    let truncated = CString::new(r#"{"rank":2,"#).unwrap();
    assert_eq!(
        unsafe { cg_ring_from_json(truncated.as_ptr(), &mut ring) },
        CgStatus::InvalidInput
    );
    assert!(last_error().unwrap().contains("parse error"));

    let not_utf8 = [0xffu8, 0];
    assert_eq!(
        unsafe { cg_ring_from_json(not_utf8.as_ptr().cast(), &mut ring) },
        CgStatus::InvalidUtf8
    );

    assert_eq!(
        unsafe { cg_ring_from_json(ptr::null(), &mut ring) },
        CgStatus::NullPointer
    );
    assert_eq!(
        unsafe { cg_ring_rank3(2, 1, 0, 2, ptr::null_mut()) },
        CgStatus::NullPointer
    );
    let mut rank = 0;
    assert_eq!(
        unsafe { cg_ring_rank(ptr::null(), &mut rank) },
        CgStatus::NullPointer
    );

    let ok = rank3(2, 1, 0, 2);
    assert!(last_error().is_none());
    unsafe { cg_ring_free(ok) };
    unsafe { cg_ring_free(ptr::null_mut()) };
    unsafe { cg_string_free(ptr::null_mut()) };
}

#[test]
fn d_number_test_on_coefficients() {
    let (mut is_d, mut witness) = (false, 99);
    let call = |c: &[i64], is_d: &mut bool, w: &mut usize| unsafe {
        cg_d_number_test(c.as_ptr(), c.len(), is_d, w)
    };
    assert_eq!(call(&[1, -1, -3], &mut is_d, &mut witness), CgStatus::Ok);
    assert!(!is_d);
    assert_eq!(witness, 1);
    assert_eq!(call(&[1, -5, 5], &mut is_d, &mut witness), CgStatus::Ok);
    assert!(is_d);
    assert_eq!(witness, 0);
    assert_eq!(
        call(&[1, -26, 148, -148], &mut is_d, &mut witness),
        CgStatus::Ok
    );
    assert!(!is_d);
    assert_eq!(witness, 1);

    assert_eq!(
        call(&[1, 0, -1], &mut is_d, &mut witness),
        CgStatus::InvalidInput
    );
    assert!(last_error().unwrap().contains("reducible"));
    assert_eq!(
        call(&[2, 1], &mut is_d, &mut witness),
        CgStatus::InvalidInput
    );
    assert_eq!(call(&[1], &mut is_d, &mut witness), CgStatus::InvalidInput);
    assert_eq!(
        unsafe { cg_d_number_test(ptr::null(), 3, &mut is_d, &mut witness) },
        CgStatus::NullPointer
    );
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(cg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
