use std::ffi::{CStr, CString};
use std::ptr;

use preproj_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn last_error() -> String {
    let p = pp_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    pp_string_free(p);
    s
}

unsafe fn load(spec: &str) -> *mut PpAlgebra {
    let mut alg = ptr::null_mut();
    assert_eq!(pp_algebra_load(c(spec).as_ptr(), &mut alg), PpStatus::Ok);
    alg
}

#[test]
fn algebra_handles() {
    unsafe {
        let alg = load("pi:A3");
        assert_eq!(pp_algebra_num_vertices(alg), 3);
        assert_eq!(pp_algebra_dim(alg), 10);
        pp_algebra_free(alg);
        assert_eq!(pp_algebra_num_vertices(ptr::null()), 0);
        pp_algebra_free(ptr::null_mut());
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(pp_algebra_load(c("pi:X3").as_ptr(), &mut alg), PpStatus::Parse);
        assert!(alg.is_null());
        assert!(last_error().contains("Dynkin"));
        assert_eq!(pp_algebra_load(ptr::null(), &mut alg), PpStatus::NullArgument);
        assert_eq!(pp_algebra_load(c("pi:A2").as_ptr(), ptr::null_mut()), PpStatus::NullArgument);

        let alg = load("pi:A2");
        assert!(pp_last_error().is_null());
        let mut x = ptr::null_mut();
        assert_eq!(pp_complex_simple(alg, 7, 0, &mut x), PpStatus::Precondition);
        assert_eq!(pp_complex_from_json(alg, c("{not json").as_ptr(), &mut x), PpStatus::Parse);
        pp_algebra_free(alg);
    }
}

#[test]
fn homs_and_bounds() {
    unsafe {
        let alg = load("pi:A2");
        let (mut s1, mut s2) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pp_complex_simple(alg, 0, 0, &mut s1), PpStatus::Ok);
        assert_eq!(pp_complex_simple(alg, 1, 0, &mut s2), PpStatus::Ok);
        let mut d = 99usize;
        assert_eq!(pp_hom_dim(alg, s1, s2, 1, &mut d), PpStatus::Ok);
        assert_eq!(d, 1);
        assert_eq!(pp_hom_dim(alg, s1, s1, 0, &mut d), PpStatus::Ok);
        assert_eq!(d, 1);

        let mut shifted = ptr::null_mut();
        assert_eq!(pp_complex_shift(s1, 2, &mut shifted), PpStatus::Ok);
        let (mut lo, mut hi) = (0, 0);
        assert_eq!(pp_std_bounds(alg, shifted, &mut lo, &mut hi), PpStatus::Ok);
        assert_eq!((lo, hi), (-2, -2));

        let mut json = ptr::null_mut();
        assert_eq!(pp_complex_to_json(alg, shifted, &mut json), PpStatus::Ok);
        let text = take_string(json);
        let mut back = ptr::null_mut();
        assert_eq!(pp_complex_from_json(alg, c(&text).as_ptr(), &mut back), PpStatus::Ok);
        assert_eq!(pp_hom_dim(alg, back, shifted, 0, &mut d), PpStatus::Ok);
        assert_eq!(d, 1);

        for h in [s1, s2, shifted, back] {
            pp_complex_free(h);
        }
        pp_algebra_free(alg);
    }
}

#[test]
fn mutation_round_trip() {
    unsafe {
        let alg = load("pi:A3");
        let mut u = ptr::null_mut();
        assert_eq!(pp_smc_standard(alg, &mut u), PpStatus::Ok);
        assert_eq!(pp_smc_len(u), 3);
        let (mut v, mut w) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pp_smc_mutate(alg, u, 1, PpDirection::Left, &mut v), PpStatus::Ok);
        assert_eq!(pp_smc_mutate(alg, v, 1, PpDirection::Right, &mut w), PpStatus::Ok);
        let mut valid = false;
        assert_eq!(pp_smc_validate(alg, v, &mut valid), PpStatus::Ok);
        assert!(valid);

        // the element at the mutated index is the old one shifted by one
        let (mut y, mut old) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pp_smc_element(v, 1, &mut y), PpStatus::Ok);
        assert_eq!(pp_smc_element(u, 1, &mut old), PpStatus::Ok);
        let mut d = 0;
        assert_eq!(pp_hom_dim(alg, old, y, -1, &mut d), PpStatus::Ok);
        assert_eq!(d, 1);

        let mut json = ptr::null_mut();
        assert_eq!(pp_smc_to_json(alg, w, &mut json), PpStatus::Ok);
        let text = take_string(json);
        assert!(text.contains("provenance"));
        let mut again = ptr::null_mut();
        assert_eq!(pp_smc_from_json(alg, c(&text).as_ptr(), &mut again), PpStatus::Ok);
        assert_eq!(pp_smc_len(again), 3);

        let mut bad = ptr::null_mut();
        assert_eq!(pp_smc_mutate(alg, u, 3, PpDirection::Left, &mut bad), PpStatus::Precondition);

        for h in [y, old] {
            pp_complex_free(h);
        }
        for h in [u, v, w, again] {
            pp_smc_free(h);
        }
        pp_algebra_free(alg);
    }
}

#[test]
fn heart_membership() {
    unsafe {
        let alg = load("pi:A2");
        let (mut s1, mut s1_shift, mut x) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(pp_complex_simple(alg, 0, 0, &mut s1), PpStatus::Ok);
        assert_eq!(pp_complex_shift(s1, 1, &mut s1_shift), PpStatus::Ok);
        assert_eq!(pp_complex_direct_sum(alg, s1, s1_shift, &mut x), PpStatus::Ok);

        let (mut member, mut degree, mut witness) = (true, 0i64, ptr::null_mut());
        assert_eq!(pp_heart_membership(alg, x, &mut member, &mut degree, &mut witness), PpStatus::Ok);
        assert!(!member);
        assert_eq!(degree, -1);
        assert!(witness.is_null());

        assert_eq!(pp_heart_membership(alg, s1_shift, &mut member, &mut degree, &mut witness), PpStatus::Ok);
        assert!(member);
        let (mut lo, mut hi) = (9, 9);
        assert_eq!(pp_smc_window(alg, s1_shift, witness, &mut lo, &mut hi), PpStatus::Ok);
        assert_eq!((lo, hi), (0, 0));

        pp_smc_free(witness);
        for h in [s1, s1_shift, x] {
            pp_complex_free(h);
        }
        pp_algebra_free(alg);
    }
}

#[test]
fn roots_and_suites() {
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(pp_restricted_roots_json(c("D5:I=1,3,5").as_ptr(), &mut json), PpStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["primitive"], serde_json::json!(["10", "01", "11", "21"]));

        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(pp_verify_suite(c("roots").as_ptr(), 1, &mut passed, &mut report), PpStatus::Ok);
        assert!(passed);
        assert!(take_string(report).contains("braid"));
        assert_eq!(pp_verify_suite(c("nope").as_ptr(), 1, &mut passed, ptr::null_mut()), PpStatus::Parse);
    }
}
