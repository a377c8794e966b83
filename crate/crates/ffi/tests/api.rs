use std::ffi::{c_char, CStr, CString};
use std::ptr;

use derivid_ffi::*;

fn owned(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { derivid_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(derivid_last_error()) }.to_str().unwrap().to_string()
}

fn catalog(name: &str) -> *mut DerividOperation {
    let name = CString::new(name).unwrap();
    let mut op = ptr::null_mut();
    assert_eq!(unsafe { derivid_operation_from_catalog(name.as_ptr(), &mut op) }, DerividStatus::Ok);
    op
}

fn literals(args: &[&str]) -> (Vec<CString>, Vec<*const c_char>) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let ptrs = owned.iter().map(|c| c.as_ptr()).collect();
    (owned, ptrs)
}

#[test]
fn apply_and_standard() {
    let op = catalog("novikov");
    let (_keep, args) = literals(&["x", "x^2", "x"]);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { derivid_apply(op, args.as_ptr(), 2, &mut out) }, DerividStatus::Ok);
    assert_eq!(owned(out), "2*x^2");
    assert_eq!(
        unsafe { derivid_standard(op, DERIVID_SIDE_LEFT, args.as_ptr(), 3, ptr::null(), &mut out) },
        DerividStatus::Ok
    );
    assert_eq!(owned(out), "x^2");
    unsafe { derivid_operation_free(op) };
}

#[test]
fn opposite_and_describe() {
    let op = catalog("poisson:1");
    let mut opp = ptr::null_mut();
    assert_eq!(unsafe { derivid_operation_opposite(op, &mut opp) }, DerividStatus::Ok);
    let (_keep, args) = literals(&["x1", "x2"]);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { derivid_apply(opp, args.as_ptr(), 2, &mut out) }, DerividStatus::Ok);
    assert_eq!(owned(out), "-1");
    assert_eq!(unsafe { derivid_operation_describe(op, &mut out) }, DerividStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&owned(out)).unwrap();
    assert_eq!(doc["arity"], 2);
    assert_eq!(doc["orders"]["total"], 2);
    unsafe {
        derivid_operation_free(opp);
        derivid_operation_free(op);
    }
}

#[test]
fn verify_reports_and_status() {
    let op = catalog("novikov");
    let mut out = ptr::null_mut();
    let status = unsafe {
        derivid_verify(op, DERIVID_SIDE_LEFT, 4, DERIVID_MODE_EXHAUSTIVE, ptr::null(), ptr::null(), &mut out)
    };
    assert_eq!(status, DerividStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&owned(out)).unwrap();
    assert_eq!(report["verdict"], "PROVED");

    let mut sampler = derivid_sampler_default();
    sampler.seed = 3;
    let status = unsafe {
        derivid_verify(op, DERIVID_SIDE_LEFT, 3, DERIVID_MODE_RANDOM, &sampler, ptr::null(), &mut out)
    };
    assert_eq!(status, DerividStatus::Refuted);
    let report: serde_json::Value = serde_json::from_str(&owned(out)).unwrap();
    assert_eq!(report["seed"], 3);
    assert!(report["counterexample"]["value"].is_string());
    unsafe { derivid_operation_free(op) };
}

#[test]
fn errors_set_status_and_message() {
    let op = catalog("novikov");
    let (_keep, args) = literals(&["x^-1", "x"]);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { derivid_apply(op, args.as_ptr(), 2, &mut out) }, DerividStatus::ParseError);
    assert!(last_error().contains("byte 2"), "{}", last_error());
    assert!(out.is_null());

    let mut caps = derivid_caps_default();
    caps.dp = 3;
    let (_keep, args) = literals(&["x", "x", "x", "x", "x"]);
    assert_eq!(
        unsafe { derivid_standard(op, DERIVID_SIDE_LEFT, args.as_ptr(), 5, &caps, &mut out) },
        DerividStatus::CapExceeded
    );
    assert_eq!(
        unsafe { derivid_standard(op, 7, args.as_ptr(), 5, ptr::null(), &mut out) },
        DerividStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { derivid_apply(ptr::null(), args.as_ptr(), 2, &mut out) },
        DerividStatus::NullPointer
    );
    let bad = CString::new("no_such_op").unwrap();
    let mut handle = ptr::null_mut();
    assert_eq!(
        unsafe { derivid_operation_from_catalog(bad.as_ptr(), &mut handle) },
        DerividStatus::InvalidArgument
    );
    assert!(handle.is_null());

    let json = CString::new("{\"variables\": []}").unwrap();
    assert_eq!(
        unsafe { derivid_operation_from_problem(json.as_ptr(), &mut handle) },
        DerividStatus::ProblemFile
    );
    unsafe { derivid_operation_free(op) };
}

#[test]
fn problem_and_kary() {
    let json = CString::new(
        r#"{"variables": [{"name": "x"}], "derivations": {"d": {"x": "1"}},
            "operation": {"arity": 3, "summands": [{"coeff": "1", "factors": [["d"], ["d"], []]}]}}"#,
    )
    .unwrap();
    let mut op = ptr::null_mut();
    assert_eq!(unsafe { derivid_operation_from_problem(json.as_ptr(), &mut op) }, DerividStatus::Ok);
    assert_eq!(unsafe { derivid_operation_arity(op) }, 3);
    let (_keep, args) = literals(&["x", "x^2", "x^3"]);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { derivid_kary_standard(op, 1, args.as_ptr(), 3, ptr::null(), &mut out) },
        DerividStatus::Ok
    );
    assert_eq!(owned(out), "0");
    unsafe { derivid_operation_free(op) };
}

#[test]
fn bounds() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { derivid_bound(DERIVID_THEOREM_RC, 3, 0, &mut out) }, DerividStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&owned(out)).unwrap();
    assert_eq!(v["d"], 53);
    assert_eq!(unsafe { derivid_bound(DERIVID_THEOREM_FD, 1, 3, &mut out) }, DerividStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&owned(out)).unwrap();
    assert_eq!(v["d"], 9);
    assert_eq!(
        unsafe { derivid_bound(DERIVID_THEOREM_FG, 1, 3, &mut out) },
        DerividStatus::InvalidArgument
    );
    assert_eq!(unsafe { derivid_bound(9, 1, 3, &mut out) }, DerividStatus::InvalidArgument);
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(derivid_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
