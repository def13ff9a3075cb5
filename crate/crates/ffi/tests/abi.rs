use std::ffi::{c_char, CStr, CString};
use std::ptr;

use dq_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    dq_string_free(s);
    out
}

unsafe fn parse(text: &str) -> *mut DqSeries {
    let mut s = ptr::null_mut();
    assert_eq!(dq_series_parse(c(text).as_ptr(), &mut s), DqStatus::Ok);
    s
}

#[test]
fn series_round_trip_and_arithmetic() {
    unsafe {
        let a = parse("1 - h");
        let b = parse("1 + h");
        let mut p = ptr::null_mut();
        assert_eq!(dq_series_binary(DqOp::Mul, a, b, &mut p), DqStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(dq_series_to_string(p, &mut text), DqStatus::Ok);
        assert_eq!(take(text), "1 - h^2");

        let mut q = ptr::null_mut();
        assert_eq!(dq_series_binary(DqOp::Div, p, b, &mut q), DqStatus::Ok);
        dq_series_to_string(q, &mut text);
        assert_eq!(take(text), "1 - h");

        let mut sign = 0;
        assert_eq!(dq_series_sign(q, &mut sign), DqStatus::Ok);
        assert_eq!(sign, 1);
        for s in [a, b, p, q] {
            dq_series_free(s);
        }
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(dq_series_parse(c("1 +* h").as_ptr(), &mut s), DqStatus::Syntax);
        assert!(s.is_null());
        let msg = CStr::from_ptr(dq_last_error()).to_str().unwrap();
        assert!(msg.contains("syntax error"), "{msg}");

        assert_eq!(dq_series_parse(ptr::null(), &mut s), DqStatus::NullPointer);

        let zero = parse("0");
        let one = parse("1");
        let mut q = ptr::null_mut();
        assert_eq!(dq_series_binary(DqOp::Div, one, zero, &mut q), DqStatus::ZeroDivision);

        let cancelled = parse("h - h + O(h^3)");
        let mut sign = 7;
        assert_eq!(dq_series_sign(cancelled, &mut sign), DqStatus::Indeterminate);
        assert_eq!(sign, 7);

        assert_eq!(dq_set_default_order(0), DqStatus::InvalidArgument);
        for h in [zero, one, cancelled] {
            dq_series_free(h);
        }
        dq_series_free(ptr::null_mut());
        dq_string_free(ptr::null_mut());
    }
}

#[test]
fn ground_state_saturates_every_relation() {
    unsafe {
        let mut st = ptr::null_mut();
        assert_eq!(dq_state_new(c("ground").as_ptr(), &mut st), DqStatus::Ok);
        let mut d = 0;
        assert_eq!(dq_state_dim(st, &mut d), DqStatus::Ok);
        assert_eq!(d, 1);

        let mut v = ptr::null_mut();
        assert_eq!(dq_state_expectation(st, c("q1^2").as_ptr(), &mut v), DqStatus::Ok);
        let mut text = ptr::null_mut();
        dq_series_to_string(v, &mut text);
        assert_eq!(take(text), "1/2*h");
        dq_series_free(v);

        let q = c("q1");
        let p = c("p1");
        let obs = [q.as_ptr(), p.as_ptr()];
        let mut json = ptr::null_mut();
        assert_eq!(dq_check_json(st, obs.as_ptr(), 2, &mut json), DqStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        let verdicts = report.as_array().unwrap();
        assert!(!verdicts.is_empty());
        for v in verdicts {
            assert_eq!(v["status"], "Saturated", "{v}");
        }
        assert_eq!(verdicts[0]["relation"], "RS");
        assert_eq!(verdicts[0]["lhs"], "1/4*h^2");
        dq_state_free(st);
    }
}

#[test]
fn state_json_and_invalid_states() {
    unsafe {
        let mut st = ptr::null_mut();
        let doc = r#"{"d": 1, "mean": ["0", "0"], "cov": [["h", "0"], ["0", "h"]]}"#;
        assert_eq!(dq_state_new(c(doc).as_ptr(), &mut st), DqStatus::Ok);
        dq_state_free(st);
        let mut bad = ptr::null_mut();
        let doc = r#"{"d": 1, "mean": ["0", "0"], "cov": [["-h", "0"], ["0", "h"]]}"#;
        assert_eq!(dq_state_new(c(doc).as_ptr(), &mut bad), DqStatus::InvalidState);
        assert!(bad.is_null());
        assert_eq!(dq_state_new(c("nonsense(3)").as_ptr(), &mut bad), DqStatus::InvalidState);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/dq.h");
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success());
}
