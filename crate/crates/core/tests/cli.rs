use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planesym")).args(args).current_dir(root()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str], code: i32) {
    let o = run(args);
    assert_eq!(o.status.code(), Some(code), "{}", stderr(&o));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, stdout(&o)).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(stdout(&o), want, "{name}");
}

#[test]
fn golden_classify() {
    golden("classify_case27.txt", &["classify", "fixtures/case27.metric"], 0);
    golden("classify_case1.txt", &["classify", "fixtures/case1.metric"], 0);
    golden("classify_case14.txt", &["classify", "fixtures/case14.metric"], 0);
    golden("classify_generic_rank4.txt", &["classify", "fixtures/generic_rank4.metric"], 0);
}

#[test]
fn golden_check_case_riemann() {
    golden("check_case1_fx2.txt", &["check", "fixtures/case1.metric", "--vector", "fields/fx2.vec"], 0);
    golden("check_case14_affine.txt", &["check", "fixtures/case14.metric", "--vector", "fields/case14_affine.vec"], 0);
    golden("case_case28.txt", &["case", "fixtures/case28.metric"], 0);
    golden("riemann_case27.txt", &["riemann", "fixtures/case27.metric", "--at", "2,0,0,0"], 0);
}

#[test]
fn classify_reports_case_27() {
    let o = run(&["classify", "fixtures/case27.metric"]);
    let s = stdout(&o);
    for line in ["rank: 1", "class: D", "case: 27"] {
        assert!(s.lines().any(|l| l == line), "missing `{line}` in\n{s}");
    }
}

#[test]
fn check_reports_proper_cc() {
    let o = run(&["check", "fixtures/case1.metric", "--vector", "fields/fx2.vec", "--expect", "proper-cc"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "proper_cc: true"));
}

#[test]
fn fixture_flag_matches_file() {
    let a = run(&["classify", "fixtures/case28.metric"]);
    let b = run(&["classify", "--fixture", "Case28"]);
    let body = |o: &Output| stdout(o).lines().skip(1).map(str::to_owned).collect::<Vec<_>>();
    assert_eq!(body(&a), body(&b));
}

#[test]
fn parameterised_metric_file() {
    let o = run(&["classify", "fixtures/case27_param.metric"]);
    let s = stdout(&o);
    assert!(s.contains("param e = 1") && s.contains("case: 27"), "{s}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify-paper"]).status.code(), Some(1));
    let o = run(&["check", "fixtures/case28.metric", "--vector", "fields/case28_t2.vec", "--expect", "killing"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("expected: killing (NOT met)"));
    assert_eq!(
        run(&["check", "fixtures/case6.metric", "--vector", "fields/case6_x.vec", "--expect", "not-cc"]).status.code(),
        Some(0)
    );
    assert_eq!(run(&["classify", "fixtures/missing.metric"]).status.code(), Some(2));
    assert_eq!(run(&["classify"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--samples", "4", "classify", "fixtures/flat.metric"]).status.code(), Some(2));
    assert_eq!(run(&["--rank-tol", "2", "classify", "fixtures/flat.metric"]).status.code(), Some(2));
    assert_eq!(run(&["riemann", "fixtures/case27.metric", "--at", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["riemann", "fixtures/case27.metric", "--at", "0,0,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn input_errors_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let missing_b = dir.path().join("m.metric");
    fs::write(&missing_b, "A = 0\nC = ln(t^2)\ndomain t = [1, 3]\n").unwrap();
    let o = run(&["classify", missing_b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing `B =` line"), "{}", stderr(&o));

    let yz = dir.path().join("y.metric");
    fs::write(&yz, "# shape\nA = y + t\nB = 0\nC = 0\n").unwrap();
    let o = run(&["classify", yz.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2: A may depend only on t, x"), "{}", stderr(&o));

    let bad_vec = dir.path().join("v.vec");
    fs::write(&bad_vec, "X1 = x^2\nX5 = 1\n").unwrap();
    let o = run(&["check", "fixtures/case1.metric", "--vector", bad_vec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

fn json_of(args: &[&str], path: &Path) -> (i32, String) {
    let mut full = vec!["--json", path.to_str().unwrap()];
    full.extend_from_slice(args);
    let o = run(&full);
    (o.status.code().unwrap(), fs::read_to_string(path).unwrap())
}

#[test]
fn verify_paper_json_is_deterministic_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let (c1, a) = json_of(&["verify-paper"], &dir.path().join("a.json"));
    let (c2, b) = json_of(&["verify-paper"], &dir.path().join("b.json"));
    assert_eq!((c1, c2), (1, 1));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, ["analyses", "seed", "tolerances", "version"]);
    assert_eq!(v["seed"], 42);
    assert!(a.contains("\"tol\": 1.0000000000000001e-9"));
    let report = &v["analyses"][0]["report"];
    let mut disagree = 0;
    for f in report["fixtures"].as_array().unwrap() {
        let hist: u64 = f["rank"]["histogram"].as_array().unwrap().iter().map(|h| h.as_u64().unwrap()).sum();
        assert_eq!(hist, 32);
        for c in f["claims"].as_array().unwrap() {
            if c["status"] == "DISAGREE" {
                disagree += 1;
                assert!(c["residual"].is_number() && c["probe"].is_array(), "{c}");
            }
        }
    }
    assert_eq!(disagree, 1);
    assert_eq!(report["tally"]["disagree"], 3);
    assert_eq!(report["closed_form"]["corrections"].as_array().unwrap().len(), 2);
}

#[test]
fn json_to_stdout_and_seed_recorded() {
    let o = run(&["--json", "-", "--seed", "7", "classify", "fixtures/case14.metric"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["analyses"][0]["kind"], "classify");
    assert_eq!(v["analyses"][0]["classification"]["class"], "D");
    assert_eq!(v["analyses"][0]["case_match"]["cases"], serde_json::json!([14]));
    let again = run(&["--json", "-", "--seed", "7", "classify", "fixtures/case14.metric"]);
    assert_eq!(o.stdout, again.stdout);
}
