use std::ffi::{c_char, CStr};
use std::ptr;

use hivering_ffi::*;

fn last_error() -> String {
    let p = hr_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    hr_string_free(p);
    s
}

#[test]
fn lr_coefficient_small_cases() {
    let mut out = 0u64;
    let (l, m, v) = ([2i64, 1, 0], [2i64, 1, 0], [3i64, 2, 1]);
    let s = unsafe { hr_lr_coefficient(l.as_ptr(), m.as_ptr(), v.as_ptr(), 3, &mut out) };
    assert_eq!(s, HrStatus::Ok);
    assert_eq!(out, 2);

    let v = [4i64, 2, 0];
    let s = unsafe { hr_lr_coefficient(l.as_ptr(), m.as_ptr(), v.as_ptr(), 3, &mut out) };
    assert_eq!(s, HrStatus::Ok);
    assert_eq!(out, 1);
}

#[test]
fn bad_inputs_set_status_and_message() {
    let mut out = 0u64;
    let l = [0i64, 1];
    let m = [1i64, 0];
    let s = unsafe { hr_lr_coefficient(l.as_ptr(), m.as_ptr(), m.as_ptr(), 2, &mut out) };
    assert_eq!(s, HrStatus::MalformedInput);
    assert!(!last_error().is_empty());

    let s = unsafe { hr_lr_coefficient(ptr::null(), m.as_ptr(), m.as_ptr(), 2, &mut out) };
    assert_eq!(s, HrStatus::NullPointer);
    assert!(last_error().contains("lambda"));

    let s = unsafe { hr_lr_coefficient(m.as_ptr(), m.as_ptr(), m.as_ptr(), 2, ptr::null_mut()) };
    assert_eq!(s, HrStatus::NullPointer);
}

#[test]
fn product_expand_terms_and_json() {
    let l = [2i64, 1, 0];
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { hr_product_expand(l.as_ptr(), l.as_ptr(), 3, &mut e) }, HrStatus::Ok);
    unsafe {
        assert_eq!(hr_ring_element_size(e), 3);
        let len = hr_ring_element_len(e);
        assert_eq!(len, 5);
        let mut total = 0;
        let mut w = [0i64; 3];
        let mut c = 0i64;
        let mut prev: Option<[i64; 3]> = None;
        for i in 0..len {
            assert_eq!(hr_ring_element_term(e, i, w.as_mut_ptr(), &mut c), HrStatus::Ok);
            if let Some(p) = prev {
                assert!(p > w, "terms not descending");
            }
            prev = Some(w);
            total += c;
            if w == [3, 2, 1] {
                assert_eq!(c, 2);
            }
        }
        assert_eq!(total, 6);
        assert_eq!(hr_ring_element_term(e, len, w.as_mut_ptr(), &mut c), HrStatus::Domain);

        let mut js = ptr::null_mut();
        assert_eq!(hr_ring_element_to_json(e, &mut js), HrStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 5);
        assert_eq!(v[0]["weight"], serde_json::json!([4, 2, 0]));
        hr_ring_element_free(e);
        hr_ring_element_free(ptr::null_mut());
    }
}

#[test]
fn pieri_matches_product_with_fundamental() {
    let l = [3i64, 1, 0, 0];
    let omega = [1i64, 1, 0, 0];
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(hr_pieri_expand(l.as_ptr(), 4, 2, &mut a), HrStatus::Ok);
        assert_eq!(hr_product_expand(l.as_ptr(), omega.as_ptr(), 4, &mut b), HrStatus::Ok);
        let (mut ja, mut jb) = (ptr::null_mut(), ptr::null_mut());
        hr_ring_element_to_json(a, &mut ja);
        hr_ring_element_to_json(b, &mut jb);
        assert_eq!(take_string(ja), take_string(jb));
        hr_ring_element_free(a);
        hr_ring_element_free(b);
    }
}

#[test]
fn hive_set_labels_and_json() {
    let (l, m, v) = ([2i64, 1, 0], [2i64, 1, 0], [3i64, 2, 1]);
    let mut set = ptr::null_mut();
    unsafe {
        assert_eq!(hr_hive_set_enumerate(l.as_ptr(), m.as_ptr(), v.as_ptr(), 3, &mut set), HrStatus::Ok);
        assert_eq!(hr_hive_set_len(set), 2);
        let mut buf = [0i64; 10];
        let mut written = 0usize;
        assert_eq!(hr_hive_set_labels(set, 0, buf.as_mut_ptr(), 10, &mut written), HrStatus::Ok);
        assert_eq!(written, 10);
        assert_eq!(buf[0], 3);
        assert_eq!(
            hr_hive_set_labels(set, 0, buf.as_mut_ptr(), 9, &mut written),
            HrStatus::MalformedInput
        );
        let mut js = ptr::null_mut();
        assert_eq!(hr_hive_set_to_json(set, 1, &mut js), HrStatus::Ok);
        let h: hivering::Hive = serde_json::from_str(&take_string(js)).unwrap();
        assert_eq!(hivering::boundary_of(&h).unwrap().nu.entries(), &[3, 2, 1]);
        hr_hive_set_free(set);
    }
}

#[test]
fn excavate_then_fill_round_trips() {
    let w = |s: &str| s.parse::<hivering::Weight>().unwrap();
    let spec = |a, b, c| hivering::BoundarySpec::new(w(a), w(b), w(c));
    let h1 = &hivering::enumerate_hives(&spec("2,1,0", "1,1,0", "3,2,0")).unwrap()[0];
    let h2 = &hivering::enumerate_hives(&spec("3,2,0", "1,0,0", "3,3,0")).unwrap()[0];
    let (l, r) = (
        std::ffi::CString::new(serde_json::to_string(h1).unwrap()).unwrap(),
        std::ffi::CString::new(serde_json::to_string(h2).unwrap()).unwrap(),
    );
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(hr_excavate_json(l.as_ptr(), r.as_ptr(), false, &mut out), HrStatus::Ok);
        let bottom: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        let (bl, br) = (
            std::ffi::CString::new(bottom["left"].to_string()).unwrap(),
            std::ffi::CString::new(bottom["right"].to_string()).unwrap(),
        );
        assert_eq!(hr_excavate_json(bl.as_ptr(), br.as_ptr(), true, &mut out), HrStatus::Ok);
        let top: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        let back: hivering::Hive = serde_json::from_value(top["left"].clone()).unwrap();
        assert_eq!(back.normalized(), h1.normalized());

        let bad = std::ffi::CString::new("{not json").unwrap();
        assert_eq!(hr_excavate_json(bad.as_ptr(), r.as_ptr(), false, &mut out), HrStatus::MalformedInput);
    }
}

#[test]
fn assoc_check_and_octahedron_step() {
    let (l, m, v, p) = ([1i64, 0], [1i64, 0], [1i64, 0], [2i64, 1]);
    let (mut lhs, mut rhs, mut ok) = (0u64, 0u64, false);
    let s = unsafe {
        hr_verify_assoc(l.as_ptr(), m.as_ptr(), v.as_ptr(), p.as_ptr(), 2, &mut lhs, &mut rhs, &mut ok)
    };
    assert_eq!(s, HrStatus::Ok);
    assert_eq!((lhs, rhs, ok), (2, 2, true));
    assert_eq!(hr_octahedron_step(1, 2, 3, 4, 0), 5);
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(hr_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
