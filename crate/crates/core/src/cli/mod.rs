//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a requested verification fails or a
//! claim is DISAGREE, 2 on input errors.

mod files;
mod json;
mod text;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use files::{parse_metric, parse_metric_file, parse_vector, parse_vector_file, InputError, MetricFile};
pub use json::{format_f64, to_json};

use crate::casebook::{
    classify_case, paper_fixture, rank_advisory, verify_paper, CaseMatch, FixtureId, VerificationReport,
};
use crate::collineations::{check_vector, CollineationReport};
use crate::config::AnalysisConfig;
use crate::curvclass::{
    classify, classify_matrix, kernel_np, riemann_matrix_at, Classification, CurvatureClass, KernelBasis,
};
use crate::geometry::{riemann_closed_form, PlaneSymmetricMetric, ALPHA_COMPONENTS};
use crate::symexpr::{Bindings, Domain, Point};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "planesym", version, about = "Curvature analysis of plane symmetric spacetimes")]
struct Cli {
    /// Sample points per zero test and rank estimate.
    #[arg(long, global = true, default_value_t = 32)]
    samples: usize,
    /// Absolute zero-test tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Relative singular-value threshold.
    #[arg(long = "rank-tol", global = true, default_value_t = 1e-10)]
    rank_tol: f64,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Write the JSON report to this path (`-` for standard output).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct MetricArg {
    /// Metric file.
    #[arg(required_unless_present = "fixture")]
    metric: Option<PathBuf>,
    /// Built-in fixture instead of a file.
    #[arg(long, conflicts_with = "metric")]
    fixture: Option<FixtureId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Expect {
    Killing,
    Homothetic,
    Affine,
    Cc,
    ProperCc,
    NotCc,
}

impl Expect {
    fn holds(self, r: &CollineationReport) -> bool {
        match self {
            Expect::Killing => r.is_killing,
            Expect::Homothetic => r.homothety_constant.is_some(),
            Expect::Affine => r.is_affine,
            Expect::Cc => r.is_cc,
            Expect::ProperCc => r.is_proper_cc,
            Expect::NotCc => !r.is_cc,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank, curvature class, kernel and case of a metric.
    Classify(MetricArg),
    /// Curvature components and the Riemann matrix at one point.
    Riemann {
        #[command(flatten)]
        metric: MetricArg,
        /// Point as `t,x,y,z`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        at: Point,
    },
    /// Killing, homothety, affine and CC verdicts for a vector field.
    Check {
        #[command(flatten)]
        metric: MetricArg,
        /// Vector file with `X0..X3` lines.
        #[arg(long)]
        vector: PathBuf,
        /// Exit 1 unless the field has this property.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Condition vector and matching table cases.
    Case(MetricArg),
    /// Check every stated claim on the built-in fixtures.
    VerifyPaper,
}

fn parse_point(s: &str) -> Result<Point, String> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("`{}` is not a number", v.trim())))
        .collect::<Result<_, _>>()?;
    let p: Point = vals.try_into().map_err(|v: Vec<f64>| format!("expected 4 coordinates t,x,y,z, got {}", v.len()))?;
    if p.iter().any(|v| !v.is_finite()) {
        return Err("coordinates must be finite".into());
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricSummary {
    pub source: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub params: Bindings,
    pub domain: Domain,
}

impl MetricSummary {
    fn of(source: String, m: &PlaneSymmetricMetric) -> MetricSummary {
        MetricSummary {
            source,
            a: m.a().to_string(),
            b: m.b().to_string(),
            c: m.c().to_string(),
            params: m.params().clone(),
            domain: m.domain().clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointAnalysis {
    pub point: Point,
    pub in_domain: bool,
    pub alpha_components: [&'static str; 5],
    pub alpha: [f64; 5],
    pub matrix: [[f64; 6]; 6],
    pub singular_values: Vec<f64>,
    pub rank: usize,
    pub class: CurvatureClass,
    pub kernel: KernelBasis,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub report: CollineationReport,
    pub expected: Option<String>,
    pub expectation_met: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Analysis {
    Classify { metric: MetricSummary, classification: Classification, case_match: CaseMatch, advisories: Vec<String> },
    Riemann { metric: MetricSummary, at: PointAnalysis },
    Check { metric: MetricSummary, check: CheckOutcome },
    Case { metric: MetricSummary, case_match: CaseMatch },
    VerifyPaper { report: VerificationReport },
}

impl Analysis {
    fn failed(&self) -> bool {
        match self {
            Analysis::Check { check, .. } => check.expectation_met == Some(false),
            Analysis::VerifyPaper { report } => !report.all_agree(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub samples: usize,
    pub tol: f64,
    pub rank_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JsonReport {
    pub version: &'static str,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub analyses: Vec<Analysis>,
}

impl JsonReport {
    pub fn new(cfg: &AnalysisConfig, analyses: Vec<Analysis>) -> JsonReport {
        JsonReport {
            version: env!("CARGO_PKG_VERSION"),
            seed: cfg.seed,
            tolerances: Tolerances { samples: cfg.samples, tol: cfg.tol, rank_tol: cfg.rank_tol },
            analyses,
        }
    }
}

fn load(arg: &MetricArg) -> Result<(String, PlaneSymmetricMetric), InputError> {
    match (&arg.fixture, &arg.metric) {
        (Some(id), _) => Ok((format!("fixture:{id}"), paper_fixture(*id))),
        (None, Some(path)) => Ok((path.display().to_string(), parse_metric_file(path)?)),
        (None, None) => unreachable!("clap requires a metric or a fixture"),
    }
}

fn analyse(cmd: &Command, cfg: &AnalysisConfig) -> Result<Analysis, InputError> {
    Ok(match cmd {
        Command::Classify(arg) => {
            let (src, m) = load(arg)?;
            let classification = classify(&m, m.domain(), cfg);
            let case_match = classify_case(&m, cfg);
            let advisories = rank_advisory(classification.rank.generic_rank).into_iter().collect();
            Analysis::Classify { metric: MetricSummary::of(src, &m), classification, case_match, advisories }
        }
        Command::Riemann { metric, at } => {
            let (src, m) = load(metric)?;
            let w = riemann_matrix_at(&m, at)
                .map_err(|e| InputError::Metric(format!("curvature undefined at {at:?}: {e}")))?;
            let alpha = riemann_closed_form(&m)
                .eval(at, m.params())
                .map_err(|e| InputError::Metric(format!("curvature undefined at {at:?}: {e}")))?;
            let pc = classify_matrix(&w, cfg.rank_tol);
            let analysis = PointAnalysis {
                point: *at,
                in_domain: m.domain().contains(at),
                alpha_components: ALPHA_COMPONENTS,
                alpha,
                matrix: w.w,
                singular_values: w.singular_values(),
                rank: pc.rank,
                class: pc.class,
                kernel: kernel_np(&w, cfg.rank_tol),
            };
            Analysis::Riemann { metric: MetricSummary::of(src, &m), at: analysis }
        }
        Command::Check { metric, vector, expect } => {
            let (src, m) = load(metric)?;
            let names: Vec<&str> = m.params().keys().map(String::as_str).collect();
            let x = parse_vector_file(vector, &names)?;
            let report = check_vector(&m, &x, cfg);
            let check = CheckOutcome {
                expectation_met: expect.map(|e| e.holds(&report)),
                expected: expect.and_then(|e| e.to_possible_value()).map(|v| v.get_name().to_string()),
                report,
            };
            Analysis::Check { metric: MetricSummary::of(src, &m), check }
        }
        Command::Case(arg) => {
            let (src, m) = load(arg)?;
            let case_match = classify_case(&m, cfg);
            Analysis::Case { metric: MetricSummary::of(src, &m), case_match }
        }
        Command::VerifyPaper => Analysis::VerifyPaper { report: verify_paper(cfg) },
    })
}

/// Runs the tool on `argv` (including the program name), writing the text
/// report to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = AnalysisConfig { samples: cli.samples, tol: cli.tol, rank_tol: cli.rank_tol, seed: cli.seed };
    if let Err(e) = cfg.validate() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INPUT;
    }
    let analysis = match analyse(&cli.command, &cfg) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let failed = analysis.failed();
    let report = JsonReport::new(&cfg, vec![analysis]);
    let to_stdout = cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if to_stdout {
        let _ = out.write_all(to_json(&report).as_bytes());
    } else {
        let _ = out.write_all(text::render(&report.analyses[0]).as_bytes());
        if let Some(path) = &cli.json {
            if let Err(e) = fs::write(path, to_json(&report)) {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
    }
    if failed {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
