use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use planesym_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = ps_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn fixture(name: &str) -> *mut PsMetric {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ps_metric_fixture(c(name).as_ptr(), &mut m) }, PsStatus::Ok);
    m
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { ps_string_free(p) };
    s
}

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

#[test]
fn classify_case27_fixture() {
    let m = fixture("case27");
    let mut out = PsClassification { generic_rank: 0, curvature_class: PsClass::O, kernel_dim: 0, stable: false };
    assert_eq!(unsafe { ps_classify(m, ptr::null(), &mut out) }, PsStatus::Ok);
    assert_eq!((out.generic_rank, out.curvature_class, out.kernel_dim, out.stable), (1, PsClass::D, 2, true));
    unsafe { ps_metric_free(m) };
}

#[test]
fn check_vector_case1_proper() {
    let mut m = ptr::null_mut();
    let path = c(repo().join("fixtures/case1.metric").to_str().unwrap());
    assert_eq!(unsafe { ps_metric_from_file(path.as_ptr(), &mut m) }, PsStatus::Ok);
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { ps_vector_parse(m, c("X1 = x^2").as_ptr(), &mut v) }, PsStatus::Ok);
    let mut r = PsCollineation {
        is_killing: true,
        is_homothetic: true,
        homothety_constant: 0.0,
        is_affine: true,
        is_cc: false,
        is_proper_cc: false,
        killing_residual: 0.0,
        affine_residual: 0.0,
        cc_residual: 1.0,
    };
    assert_eq!(unsafe { ps_check_vector(m, v, ptr::null(), &mut r) }, PsStatus::Ok);
    assert!(r.is_cc && r.is_proper_cc && !r.is_affine && !r.is_killing && !r.is_homothetic);
    assert!(r.homothety_constant.is_nan());
    assert!(r.affine_residual >= 1.0);
    assert_eq!(r.cc_residual, 0.0);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ps_check_vector_json(m, v, ptr::null(), &mut json) }, PsStatus::Ok);
    assert!(take_string(json).contains("\"is_proper_cc\": true"));
    unsafe {
        ps_vector_free(v);
        ps_metric_free(m);
    }
}

#[test]
fn parameterised_vector_uses_metric_params() {
    let mut m = ptr::null_mut();
    let src = c("param e = 1\nparam d = 0\nA = 0\nB = 0\nC = ln((e*t + d)^2)\ndomain t = [1, 3]\n");
    assert_eq!(unsafe { ps_metric_parse(src.as_ptr(), &mut m) }, PsStatus::Ok);
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { ps_vector_parse(m, c("X0 = e*t^2\nX1 = t*x").as_ptr(), &mut v) }, PsStatus::Ok);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ps_classify_json(m, ptr::null(), &mut json) }, PsStatus::Ok);
    let s = take_string(json);
    assert!(s.contains("\"kind\": \"classify\"") && s.contains("\"generic_rank\": 1"), "{s}");
    unsafe {
        ps_vector_free(v);
        ps_metric_free(m);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ps_metric_parse(c("A = 0\nC = 0").as_ptr(), &mut m) }, PsStatus::Input);
    assert_eq!(last_error(), "missing `B =` line");
    assert!(m.is_null());
    assert_eq!(unsafe { ps_metric_parse(c("A = y + t\nB = 0\nC = 0").as_ptr(), &mut m) }, PsStatus::Input);
    assert_eq!(last_error(), "line 1: A may depend only on t, x");
    assert_eq!(unsafe { ps_metric_parse(ptr::null(), &mut m) }, PsStatus::NullPointer);
    assert_eq!(unsafe { ps_metric_from_file(c("/nonexistent/x.metric").as_ptr(), &mut m) }, PsStatus::Io);
    assert_eq!(unsafe { ps_metric_fixture(c("case99").as_ptr(), &mut m) }, PsStatus::Input);
    assert!(last_error().contains("case99"));
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { ps_metric_parse(bad.as_ptr().cast(), &mut m) }, PsStatus::InvalidUtf8);

    let f = fixture("flat");
    let mut cfg = ps_config_default();
    cfg.samples = 2;
    let mut out = PsClassification { generic_rank: 9, curvature_class: PsClass::A, kernel_dim: 0, stable: false };
    assert_eq!(unsafe { ps_classify(f, &cfg, &mut out) }, PsStatus::InvalidConfig);
    assert_eq!(out.generic_rank, 9);
    assert_eq!(unsafe { ps_classify(ptr::null(), ptr::null(), &mut out) }, PsStatus::NullPointer);
    assert_eq!(unsafe { ps_classify(f, ptr::null(), ptr::null_mut()) }, PsStatus::NullPointer);
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { ps_vector_parse(f, c("X7 = 1").as_ptr(), &mut v) }, PsStatus::Input);
    assert!(last_error().starts_with("line 1"));
    unsafe { ps_metric_free(f) };
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        ps_metric_free(ptr::null_mut());
        ps_vector_free(ptr::null_mut());
        ps_string_free(ptr::null_mut());
    }
}

#[test]
fn defaults_and_version() {
    let cfg = ps_config_default();
    assert_eq!((cfg.samples, cfg.tol, cfg.rank_tol, cfg.seed), (32, 1e-9, 1e-10, 42));
    let v = unsafe { CStr::from_ptr(ps_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn verify_paper_reports_disagreements() {
    let mut agree = true;
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ps_verify_paper(ptr::null(), &mut agree, &mut json) }, PsStatus::Ok);
    assert!(!agree);
    let s = take_string(json);
    assert!(s.contains("\"disagree\": 3"), "{s}");
    assert!(s.contains("\"id\": \"closed_form.alpha4\""));
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/planesym.h")).unwrap();
    for f in [
        "ps_last_error",
        "ps_version",
        "ps_config_default",
        "ps_string_free",
        "ps_metric_parse",
        "ps_metric_from_file",
        "ps_metric_fixture",
        "ps_metric_free",
        "ps_vector_parse",
        "ps_vector_free",
        "ps_classify",
        "ps_check_vector",
        "ps_classify_json",
        "ps_check_vector_json",
        "ps_verify_paper",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("typedef struct PsMetric PsMetric;"));
    assert!(h.contains("PS_STATUS_INPUT = 3"));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "planesym.h"

int main(void) {
    PsMetric *m = NULL;
    if (ps_metric_fixture("Case14", &m) != PS_STATUS_OK) return 10;
    PsClassification c;
    if (ps_classify(m, NULL, &c) != PS_STATUS_OK) return 11;
    PsVector *v = NULL;
    if (ps_vector_parse(m, "X2 = y^2 + z\nX3 = z - y^3", &v) != PS_STATUS_OK) return 12;
    PsCollineation r;
    if (ps_check_vector(m, v, NULL, &r) != PS_STATUS_OK) return 13;
    PsMetric *bad = NULL;
    if (ps_metric_parse("A = 0", &bad) != PS_STATUS_INPUT) return 14;
    printf("%zu %d %zu %d %d|%s\n", c.generic_rank, (int)c.curvature_class, c.kernel_dim,
           (int)r.is_proper_cc, (int)r.is_affine, ps_last_error());
    ps_vector_free(v);
    ps_metric_free(m);
    return 0;
}
"#;

/// Compiles a C program against the header and the static library.
#[test]
fn c_program_links_against_static_library() {
    let Ok(exe) = std::env::current_exe() else {
        return;
    };
    let profile_dir = exe.parent().and_then(Path::parent).unwrap().to_path_buf();
    let lib = profile_dir.join("libplanesym_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = dir.join("smoke");
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let st = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(st.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 3 2 1 0|missing `B =` line\n");
    let _ = std::fs::remove_dir_all(dir);
}

fn tempfile_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("planesym-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
