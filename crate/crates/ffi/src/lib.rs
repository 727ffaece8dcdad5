//! C ABI over `planesym`.
//!
//! Metrics and vector fields are opaque handles created by the `ps_metric_*`
//! constructors and [`ps_vector_parse`], and released with the matching
//! `_free`. Every fallible call
//! returns a [`PsStatus`]; on failure [`ps_last_error`] describes the cause.
//! Strings returned through `out` parameters are owned by the caller and
//! must be released with [`ps_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use planesym::casebook::{classify_case, paper_fixture, rank_advisory, verify_paper, FixtureId};
use planesym::cli::{
    parse_metric, parse_metric_file, parse_vector, to_json, Analysis, CheckOutcome, JsonReport, MetricSummary,
};
use planesym::collineations::{check_vector, VectorField};
use planesym::config::AnalysisConfig;
use planesym::curvclass::{classify, CurvatureClass};
use planesym::geometry::PlaneSymmetricMetric;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed metric or vector text, or an unknown fixture name.
    Input = 3,
    Io = 4,
    InvalidConfig = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// Curvature class of the Riemann matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsClass {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
    O = 4,
}

impl From<CurvatureClass> for PsClass {
    fn from(c: CurvatureClass) -> PsClass {
        match c {
            CurvatureClass::A => PsClass::A,
            CurvatureClass::B => PsClass::B,
            CurvatureClass::C => PsClass::C,
            CurvatureClass::D => PsClass::D,
            CurvatureClass::O => PsClass::O,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsConfig {
    pub samples: usize,
    pub tol: f64,
    pub rank_tol: f64,
    pub seed: u64,
}

impl From<PsConfig> for AnalysisConfig {
    fn from(c: PsConfig) -> AnalysisConfig {
        AnalysisConfig { samples: c.samples, tol: c.tol, rank_tol: c.rank_tol, seed: c.seed }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsClassification {
    pub generic_rank: usize,
    pub curvature_class: PsClass,
    pub kernel_dim: usize,
    /// Whether every point of generic rank has the same class.
    pub stable: bool,
}

/// Collineation verdicts with the largest residual of each test.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsCollineation {
    pub is_killing: bool,
    pub is_homothetic: bool,
    /// Meaningful only when `is_homothetic`.
    pub homothety_constant: f64,
    pub is_affine: bool,
    pub is_cc: bool,
    pub is_proper_cc: bool,
    pub killing_residual: f64,
    pub affine_residual: f64,
    pub cc_residual: f64,
}

/// Opaque metric handle.
pub struct PsMetric(PlaneSymmetricMetric);

/// Opaque vector field handle.
pub struct PsVector(VectorField);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

type Failure = (PsStatus, String);

/// Runs `f` behind a panic guard, recording any failure message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            PsStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((PsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (PsStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| (PsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn config(p: *const PsConfig) -> Result<AnalysisConfig, Failure> {
    let cfg = match p.as_ref() {
        Some(c) => AnalysisConfig::from(*c),
        None => AnalysisConfig::default(),
    };
    cfg.validate().map_err(|e| (PsStatus::InvalidConfig, e))?;
    Ok(cfg)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err((PsStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| (PsStatus::Internal, e.to_string()))?;
    put(out, c.into_raw())
}

fn input(e: impl ToString) -> Failure {
    (PsStatus::Input, e.to_string())
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ps_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ps_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Default sampling and tolerance settings.
#[no_mangle]
pub extern "C" fn ps_config_default() -> PsConfig {
    let c = AnalysisConfig::default();
    PsConfig { samples: c.samples, tol: c.tol, rank_tol: c.rank_tol, seed: c.seed }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text of a metric file.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_metric_parse(src: *const c_char, out: *mut *mut PsMetric) -> PsStatus {
    guard(|| {
        let m = parse_metric(text(src, "source")?).map_err(input)?;
        put(out, Box::into_raw(Box::new(PsMetric(m))))
    })
}

/// Reads and parses a metric file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_metric_from_file(path: *const c_char, out: *mut *mut PsMetric) -> PsStatus {
    guard(|| {
        let p = text(path, "path")?;
        let m = parse_metric_file(Path::new(p)).map_err(|e| match e {
            planesym::cli::InputError::Io { .. } => (PsStatus::Io, e.to_string()),
            _ => input(e),
        })?;
        put(out, Box::into_raw(Box::new(PsMetric(m))))
    })
}

/// Built-in fixture by name, e.g. `"Case27"` (case-insensitive).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_metric_fixture(name: *const c_char, out: *mut *mut PsMetric) -> PsStatus {
    guard(|| {
        let id: FixtureId = text(name, "name")?.parse().map_err(input)?;
        put(out, Box::into_raw(Box::new(PsMetric(paper_fixture(id)))))
    })
}

/// # Safety
/// `m` must come from a metric constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ps_metric_free(m: *mut PsMetric) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parses `X0 = ...` lines; components may use the metric's parameters.
///
/// # Safety
/// `m` must be a live metric, `src` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_vector_parse(m: *const PsMetric, src: *const c_char, out: *mut *mut PsVector) -> PsStatus {
    guard(|| {
        let m = get(m, "metric")?;
        let names: Vec<&str> = m.0.params().keys().map(String::as_str).collect();
        let v = parse_vector(text(src, "source")?, &names).map_err(input)?;
        put(out, Box::into_raw(Box::new(PsVector(v))))
    })
}

/// # Safety
/// `v` must come from [`ps_vector_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ps_vector_free(v: *mut PsVector) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Generic rank, class and kernel dimension. `cfg` may be null for defaults.
///
/// # Safety
/// `m` must be a live metric; `cfg` null or valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_classify(m: *const PsMetric, cfg: *const PsConfig, out: *mut PsClassification) -> PsStatus {
    guard(|| {
        let m = get(m, "metric")?;
        let cfg = config(cfg)?;
        let c = classify(&m.0, m.0.domain(), &cfg);
        put(
            out,
            PsClassification {
                generic_rank: c.rank.generic_rank,
                curvature_class: c.class.into(),
                kernel_dim: c.kernel_dim,
                stable: c.stable,
            },
        )
    })
}

/// Killing, homothety, affine and CC verdicts for `v` on `m`.
///
/// # Safety
/// `m` and `v` must be live handles; `cfg` null or valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_check_vector(
    m: *const PsMetric,
    v: *const PsVector,
    cfg: *const PsConfig,
    out: *mut PsCollineation,
) -> PsStatus {
    guard(|| {
        let m = get(m, "metric")?;
        let v = get(v, "vector")?;
        let cfg = config(cfg)?;
        let r = check_vector(&m.0, &v.0, &cfg);
        put(
            out,
            PsCollineation {
                is_killing: r.is_killing,
                is_homothetic: r.homothety_constant.is_some(),
                homothety_constant: r.homothety_constant.unwrap_or(f64::NAN),
                is_affine: r.is_affine,
                is_cc: r.is_cc,
                is_proper_cc: r.is_proper_cc,
                killing_residual: r.killing.max_abs,
                affine_residual: r.affine.max_abs,
                cc_residual: r.cc.max_abs,
            },
        )
    })
}

fn summary(m: &PlaneSymmetricMetric) -> MetricSummary {
    MetricSummary {
        source: "ffi".into(),
        a: m.a().to_string(),
        b: m.b().to_string(),
        c: m.c().to_string(),
        params: m.params().clone(),
        domain: m.domain().clone(),
    }
}

/// Full classification report as JSON, including the case match.
///
/// # Safety
/// `m` must be a live metric; `cfg` null or valid; `out` writable. The
/// string must be released with [`ps_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ps_classify_json(m: *const PsMetric, cfg: *const PsConfig, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let m = get(m, "metric")?;
        let cfg = config(cfg)?;
        let classification = classify(&m.0, m.0.domain(), &cfg);
        let advisories = rank_advisory(classification.rank.generic_rank).into_iter().collect();
        let a = Analysis::Classify {
            metric: summary(&m.0),
            case_match: classify_case(&m.0, &cfg),
            classification,
            advisories,
        };
        put_string(out, to_json(&JsonReport::new(&cfg, vec![a])))
    })
}

/// Collineation report as JSON.
///
/// # Safety
/// As for [`ps_check_vector`]; the string must be released with
/// [`ps_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ps_check_vector_json(
    m: *const PsMetric,
    v: *const PsVector,
    cfg: *const PsConfig,
    out: *mut *mut c_char,
) -> PsStatus {
    guard(|| {
        let m = get(m, "metric")?;
        let v = get(v, "vector")?;
        let cfg = config(cfg)?;
        let check = CheckOutcome { report: check_vector(&m.0, &v.0, &cfg), expected: None, expectation_met: None };
        let a = Analysis::Check { metric: summary(&m.0), check };
        put_string(out, to_json(&JsonReport::new(&cfg, vec![a])))
    })
}

/// Runs every claim check on the built-in fixtures. `all_agree` receives
/// whether no claim is DISAGREE; `json` receives the report.
///
/// # Safety
/// `cfg` null or valid; `all_agree` and `json` writable. The string must be
/// released with [`ps_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ps_verify_paper(
    cfg: *const PsConfig,
    all_agree: *mut bool,
    json: *mut *mut c_char,
) -> PsStatus {
    guard(|| {
        let cfg = config(cfg)?;
        if all_agree.is_null() || json.is_null() {
            return Err((PsStatus::NullPointer, "output pointer is null".into()));
        }
        let report = verify_paper(&cfg);
        put(all_agree, report.all_agree())?;
        put_string(json, to_json(&JsonReport::new(&cfg, vec![Analysis::VerifyPaper { report }])))
    })
}
