use std::ffi::{CStr, CString};
use std::ptr;

use kmss_ffi::*;

fn new_gcm(rows: &[i64], n: usize) -> *mut KmssGcm {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { kmss_gcm_new(rows.as_ptr(), n, &mut h) }, KmssStatus::Ok);
    h
}

fn last_error() -> String {
    let p = kmss_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn classify_a2() {
    let h = new_gcm(&[2, -1, -1, 2], 2);
    let (mut kind, mut rank, mut corank) = (KmssType::Indefinite, 0, 9);
    let st = unsafe { kmss_gcm_classify(h, &mut kind, &mut rank, &mut corank) };
    assert_eq!(st, KmssStatus::Ok);
    assert_eq!((kind, rank, corank), (KmssType::Spherical, 2, 0));
    assert_eq!(unsafe { kmss_gcm_size(h) }, 2);
    unsafe { kmss_gcm_free(h) };
}

#[test]
fn affine_from_json() {
    let json = CString::new("[[2,-2],[-2,2]]").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { kmss_gcm_from_json(json.as_ptr(), &mut h) }, KmssStatus::Ok);
    let (mut kind, mut rank, mut corank) = (KmssType::Spherical, 0, 0);
    unsafe { kmss_gcm_classify(h, &mut kind, &mut rank, &mut corank) };
    assert_eq!((kind, rank, corank), (KmssType::Affine, 1, 1));
    unsafe { kmss_gcm_free(h) };
}

#[test]
fn invalid_matrix_sets_message() {
    let mut h = ptr::null_mut();
    let st = unsafe { kmss_gcm_new([2, 1, -1, 2].as_ptr(), 2, &mut h) };
    assert_eq!(st, KmssStatus::InvalidMatrix);
    assert!(h.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn null_pointers_are_reported() {
    let st = unsafe { kmss_gcm_new(ptr::null(), 2, ptr::null_mut()) };
    assert_eq!(st, KmssStatus::NullPointer);
    let mut b = false;
    assert_eq!(unsafe { kmss_gcm_is_star_spherical(ptr::null(), &mut b) }, KmssStatus::NullPointer);
    assert_eq!(unsafe { kmss_gcm_size(ptr::null()) }, 0);
    unsafe { kmss_gcm_free(ptr::null_mut()) };
    unsafe { kmss_string_free(ptr::null_mut()) };
}

#[test]
fn word_matrix_is_involution() {
    let h = new_gcm(&[2, -1, 0, -1, 2, -1, 0, -1, 2], 3);
    let mut m = [0i64; 9];
    let st = unsafe { kmss_weyl_word_matrix(h, [2usize, 2].as_ptr(), 2, m.as_mut_ptr()) };
    assert_eq!(st, KmssStatus::Ok);
    assert_eq!(m, [1, 0, 0, 0, 1, 0, 0, 0, 1]);
    let st = unsafe { kmss_weyl_word_matrix(h, [4usize].as_ptr(), 1, m.as_mut_ptr()) };
    assert_eq!(st, KmssStatus::IndexOutOfRange);
    unsafe { kmss_gcm_free(h) };
}

#[test]
fn tits_cone_verdicts() {
    let h = new_gcm(&[2, -3, -3, 2], 2);
    let mut v = KmssCone::InCone;
    let mut json = ptr::null_mut();
    let st = unsafe { kmss_tits_cone(h, [1i64, 1].as_ptr(), 10_000, &mut v, &mut json) };
    assert_eq!(st, KmssStatus::Ok);
    assert_eq!(v, KmssCone::InNegativeCone);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { kmss_string_free(json) };
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["status"], "in_negative_cone");

    let st = unsafe { kmss_tits_cone(h, [1i64, 0].as_ptr(), 50, &mut v, ptr::null_mut()) };
    assert_eq!(st, KmssStatus::Ok);
    assert_eq!(v, KmssCone::Undetermined);
    unsafe { kmss_gcm_free(h) };
}

#[test]
fn star_spherical_e10() {
    let mut rows = vec![0i64; 100];
    let rs = kmss::gcm::type_e(10).to_rows();
    for i in 0..10 {
        for j in 0..10 {
            rows[i * 10 + j] = rs[i][j];
        }
    }
    let h = new_gcm(&rows, 10);
    let mut b = false;
    assert_eq!(unsafe { kmss_gcm_is_star_spherical(h, &mut b) }, KmssStatus::Ok);
    assert!(b);
    unsafe { kmss_gcm_free(h) };
}

#[test]
fn example_hole_report() {
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { kmss_example_hole_json(2, &mut json) }, KmssStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { kmss_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["charpoly_matches"], true);
    assert_eq!(v["diagonalizable"]["verdict"], "no");
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/kmss.h")).unwrap();
    for name in [
        "kmss_last_error_message",
        "kmss_string_free",
        "kmss_gcm_new",
        "kmss_gcm_from_json",
        "kmss_gcm_free",
        "kmss_gcm_size",
        "kmss_gcm_classify",
        "kmss_gcm_is_star_spherical",
        "kmss_weyl_word_matrix",
        "kmss_tits_cone",
        "kmss_example_hole_json",
        "typedef struct KmssGcm KmssGcm",
        "KMSS_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
