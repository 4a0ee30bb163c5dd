use std::ffi::{CStr, CString};
use std::ptr;

use isotypica_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(isotypica_last_error()) }.to_str().unwrap().to_string()
}

fn parse(text: &str, format: Option<IsotypicaFormat>) -> *mut IsotypicaMeta {
    let t = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let f = format.as_ref().map_or(ptr::null(), |f| f as *const _);
    let st = unsafe { isotypica_meta_parse(t.as_ptr(), f, &mut out) };
    assert_eq!(st, IsotypicaStatus::Ok, "{}", last_error());
    out
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let v = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { isotypica_string_free(s) };
    v
}

const F222: IsotypicaFormat = IsotypicaFormat { delta: 2, d: 2, k: 2 };

#[test]
fn hwv_projection_through_the_c_interface() {
    let m = parse("c[1,1]^2", None);
    let mut plan = ptr::null_mut();
    let parts = [2i64, 2];
    assert_eq!(
        unsafe { isotypica_plan_hwv(F222, parts.as_ptr(), 2, &mut plan) },
        IsotypicaStatus::Ok
    );
    let mut n = 0usize;
    unsafe { isotypica_plan_factor_count(plan, &mut n) };
    assert!(n >= 3);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { isotypica_apply_plan(plan, m, &mut r) }, IsotypicaStatus::Ok);
    let expected = parse("1/3*c[1,1]^2 - 4/3*c[2,0]*c[0,2]", Some(F222));
    let mut eq = false;
    unsafe { isotypica_meta_equal(r, expected, &mut eq) };
    assert!(eq);
    let mut s = ptr::null_mut();
    unsafe { isotypica_meta_to_string(r, &mut s) };
    assert_eq!(take_string(s), "-4/3*c[0,2]*c[2,0] + 1/3*c[1,1]^2");
    let mut f = IsotypicaFormat { delta: 0, d: 0, k: 0 };
    unsafe { isotypica_meta_format(r, &mut f) };
    assert_eq!(f, F222);
    unsafe {
        isotypica_meta_free(m);
        isotypica_meta_free(r);
        isotypica_meta_free(expected);
        isotypica_plan_free(plan);
    }
}

#[test]
fn gz_plan_from_rows() {
    let fmt = IsotypicaFormat { delta: 3, d: 2, k: 3 };
    let entries = [1u32, 1, 2, 2, 3, 3];
    let rows = [2usize, 2, 2];
    let mut plan = ptr::null_mut();
    assert_eq!(
        unsafe { isotypica_plan_gz(fmt, entries.as_ptr(), rows.as_ptr(), 3, &mut plan) },
        IsotypicaStatus::Ok
    );
    let m = parse("c[2,0,0]*c[0,2,0]*c[0,0,2]", None);
    let mut r = ptr::null_mut();
    unsafe { isotypica_apply_plan(plan, m, &mut r) };
    let mut z = true;
    unsafe { isotypica_meta_is_zero(r, &mut z) };
    assert!(!z);
    let bad = [2u32, 1];
    let one = [2usize];
    let mut p2 = ptr::null_mut();
    assert_eq!(
        unsafe { isotypica_plan_gz(fmt, bad.as_ptr(), one.as_ptr(), 1, &mut p2) },
        IsotypicaStatus::InvalidArgument
    );
    assert!(p2.is_null());
    unsafe {
        isotypica_meta_free(m);
        isotypica_meta_free(r);
        isotypica_plan_free(plan);
    }
}

#[test]
fn characters_and_errors() {
    let mut s = ptr::null_mut();
    let lambda = [6i64, 0, 0];
    assert_eq!(unsafe { isotypica_central_character(lambda.as_ptr(), 3, 2, &mut s) }, IsotypicaStatus::Ok);
    assert_eq!(take_string(s), "48");
    assert_eq!(last_error(), "");

    let t = CString::new("c[1,1]^").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { isotypica_meta_parse(t.as_ptr(), ptr::null(), &mut out) }, IsotypicaStatus::Parse);
    assert!(last_error().starts_with("parse error"));
    assert_eq!(
        unsafe { isotypica_meta_parse(ptr::null(), ptr::null(), &mut out) },
        IsotypicaStatus::NullPointer
    );
    let t = CString::new("c[1,1]^2").unwrap();
    let wrong = IsotypicaFormat { delta: 1, d: 2, k: 2 };
    assert_eq!(
        unsafe { isotypica_meta_parse(t.as_ptr(), &wrong, &mut out) },
        IsotypicaStatus::FormatMismatch
    );
    let parts = [1i64, 3];
    let mut plan = ptr::null_mut();
    assert_eq!(
        unsafe { isotypica_plan_isotypic(F222, parts.as_ptr(), 2, &mut plan) },
        IsotypicaStatus::InvalidArgument
    );
    unsafe {
        isotypica_meta_free(ptr::null_mut());
        isotypica_plan_free(ptr::null_mut());
        isotypica_circuit_free(ptr::null_mut());
        isotypica_string_free(ptr::null_mut());
    }
}

#[test]
fn transform_discriminant_circuit() {
    let json = isotypica::circuit::discriminant_circuit().to_json();
    let j = CString::new(json.clone()).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { isotypica_circuit_from_json(j.as_ptr(), &mut c) }, IsotypicaStatus::Ok);
    let mut s = ptr::null_mut();
    unsafe { isotypica_circuit_to_json(c, &mut s) };
    assert_eq!(take_string(s), json);
    let mut size = 0usize;
    unsafe { isotypica_circuit_size(c, &mut size) };
    assert_eq!(size, 6);

    for (parts, zero) in [([2i64, 2], false), ([4, 0], true)] {
        let mut plan = ptr::null_mut();
        unsafe { isotypica_plan_isotypic(F222, parts.as_ptr(), 2, &mut plan) };
        for mode in [IsotypicaMode::FactorByFactor, IsotypicaMode::SinglePass] {
            let mut t = ptr::null_mut();
            let st = unsafe { isotypica_transform(c, plan, mode, 1000, &mut t) };
            assert_eq!(st, IsotypicaStatus::Ok, "{}", last_error());
            let mut v = ptr::null_mut();
            unsafe { isotypica_circuit_eval(t, &mut v) };
            let mut direct = ptr::null_mut();
            let mut src = ptr::null_mut();
            unsafe { isotypica_circuit_eval(c, &mut src) };
            unsafe { isotypica_apply_plan(plan, src, &mut direct) };
            let (mut eq, mut z) = (false, false);
            unsafe {
                isotypica_meta_equal(v, direct, &mut eq);
                isotypica_meta_is_zero(v, &mut z);
            }
            assert!(eq);
            assert_eq!(z, zero);
            unsafe {
                isotypica_meta_free(v);
                isotypica_meta_free(direct);
                isotypica_meta_free(src);
                isotypica_circuit_free(t);
            }
        }
        let mut t = ptr::null_mut();
        assert_eq!(
            unsafe { isotypica_transform(c, plan, IsotypicaMode::SinglePass, 1, &mut t) },
            IsotypicaStatus::BudgetExceeded
        );
        unsafe { isotypica_plan_free(plan) };
    }
    unsafe { isotypica_circuit_free(c) };
}

#[test]
fn plan_json_and_weight_plan() {
    let coords = [3i64, 1];
    let mut plan = ptr::null_mut();
    assert_eq!(
        unsafe { isotypica_plan_weight(F222, coords.as_ptr(), 2, &mut plan) },
        IsotypicaStatus::Ok
    );
    let mut s = ptr::null_mut();
    unsafe { isotypica_plan_to_json(plan, &mut s) };
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["target"], serde_json::json!({"weight": [3, 1]}));
    unsafe { isotypica_plan_free(plan) };
}
