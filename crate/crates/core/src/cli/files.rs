//! Line-oriented `key = expression` input files.
//!
//! Metric files:
//!
//! ```text
//! # comment
//! param k = 2
//! A = 0
//! B = 0
//! C = ln((k*t)^2)
//! domain t = [1, 3]
//! exclude x = 0
//! ```
//!
//! Vector files hold `X0 = ...` through `X3 = ...`; missing components are 0
//! and the metric's parameters may be used.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::collineations::VectorField;
use crate::geometry::{GeometryError, PlaneSymmetricMetric};
use crate::symexpr::{parse_with_params, Bindings, Domain, Expr, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: IoMessage },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `{0} =` line")]
    Missing(&'static str),
    #[error("{0}")]
    Metric(String),
}

/// `std::io::Error` as text, so that errors stay comparable.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{0}")]
pub struct IoMessage(pub String);

fn line_err(line: usize, message: impl Into<String>) -> InputError {
    InputError::Line { line, message: message.into() }
}

/// Splits `lhs = rhs`, ignoring blank and comment lines.
fn assignments(text: &str) -> impl Iterator<Item = (usize, Result<(&str, &str), InputError>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            return None;
        }
        Some((
            n,
            line.split_once('=')
                .map(|(l, r)| (l.trim(), r.trim()))
                .ok_or_else(|| line_err(n, format!("expected `key = value`, found `{line}`"))),
        ))
    })
}

fn var_named(s: &str) -> Option<Var> {
    Var::ALL.into_iter().find(|v| v.name() == s)
}

fn number(line: usize, s: &str) -> Result<f64, InputError> {
    let v: f64 = s.trim().parse().map_err(|_| line_err(line, format!("expected a number, found `{}`", s.trim())))?;
    if !v.is_finite() {
        return Err(line_err(line, format!("`{}` is not finite", s.trim())));
    }
    Ok(v)
}

fn interval(line: usize, s: &str) -> Result<(f64, f64), InputError> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| line_err(line, format!("expected `[lo, hi]`, found `{s}`")))?;
    let (lo, hi) = inner.split_once(',').ok_or_else(|| line_err(line, format!("expected `[lo, hi]`, found `{s}`")))?;
    Ok((number(line, lo)?, number(line, hi)?))
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path)
        .map_err(|e| InputError::Io { path: path.display().to_string(), source: IoMessage(e.to_string()) })
}

/// A parsed metric file, before the metric is built.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricFile {
    pub params: Bindings,
    pub functions: [Expr; 3],
    /// Line of each of `A, B, C`.
    pub lines: [usize; 3],
    pub domain: Domain,
}

impl MetricFile {
    pub fn parse(text: &str) -> Result<MetricFile, InputError> {
        let mut params = Bindings::new();
        let mut functions: [Option<(usize, Expr)>; 3] = [None, None, None];
        let mut domain = Domain::default();
        for (n, kv) in assignments(text) {
            let (lhs, rhs) = kv?;
            let names: Vec<&str> = params.keys().map(String::as_str).collect();
            let mut words = lhs.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some(f @ ("A" | "B" | "C")), None, None) => {
                    let k = ["A", "B", "C"].iter().position(|x| *x == f).expect("matched");
                    if let Some((first, _)) = &functions[k] {
                        return Err(line_err(n, format!("{f} already defined on line {first}")));
                    }
                    let e = parse_with_params(rhs, &names).map_err(|e| line_err(n, format!("{f}: {e}")))?;
                    functions[k] = Some((n, e));
                }
                (Some("param"), Some(name), None) => {
                    if var_named(name).is_some() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(line_err(n, format!("`{name}` cannot be a parameter name")));
                    }
                    if params.contains_key(name) {
                        return Err(line_err(n, format!("parameter `{name}` declared twice")));
                    }
                    params.insert(name.to_string(), number(n, rhs)?);
                }
                (Some(kw @ ("domain" | "exclude")), Some(v), None) => {
                    let var = var_named(v).ok_or_else(|| line_err(n, format!("unknown coordinate `{v}`")))?;
                    domain = if kw == "domain" {
                        let (lo, hi) = interval(n, rhs)?;
                        domain.with_interval(var, lo, hi).map_err(|e| line_err(n, e.to_string()))?
                    } else {
                        domain.excluding(var, number(n, rhs)?)
                    };
                }
                _ => return Err(line_err(n, format!("unrecognised key `{lhs}`"))),
            }
        }
        let [a, b, c] = functions;
        let (la, a) = a.ok_or(InputError::Missing("A"))?;
        let (lb, b) = b.ok_or(InputError::Missing("B"))?;
        let (lc, c) = c.ok_or(InputError::Missing("C"))?;
        Ok(MetricFile { params, functions: [a, b, c], lines: [la, lb, lc], domain })
    }

    pub fn build(self) -> Result<PlaneSymmetricMetric, InputError> {
        let [la, lb, lc] = self.lines;
        let line_of = |f: &str| match f {
            "A" => la,
            "B" => lb,
            _ => lc,
        };
        let [a, b, c] = self.functions;
        PlaneSymmetricMetric::new(a, b, c, self.params, self.domain).map_err(|e| match &e {
            GeometryError::TransverseDependence(f)
            | GeometryError::UnboundParameter { func: f, .. }
            | GeometryError::Parse { func: f, .. } => line_err(line_of(f), e.to_string()),
            GeometryError::Degenerate { .. } => InputError::Metric(e.to_string()),
        })
    }
}

pub fn parse_metric(text: &str) -> Result<PlaneSymmetricMetric, InputError> {
    MetricFile::parse(text)?.build()
}

pub fn parse_metric_file(path: &Path) -> Result<PlaneSymmetricMetric, InputError> {
    parse_metric(&read(path)?)
}

/// Parses `X0..X3` lines; `params` are the names the components may use.
pub fn parse_vector(text: &str, params: &[&str]) -> Result<VectorField, InputError> {
    let mut comps: [Option<(usize, Expr)>; 4] = [None, None, None, None];
    for (n, kv) in assignments(text) {
        let (lhs, rhs) = kv?;
        let k = match lhs {
            "X0" => 0,
            "X1" => 1,
            "X2" => 2,
            "X3" => 3,
            _ => return Err(line_err(n, format!("unrecognised key `{lhs}`, expected X0..X3"))),
        };
        if let Some((first, _)) = &comps[k] {
            return Err(line_err(n, format!("{lhs} already defined on line {first}")));
        }
        let e = parse_with_params(rhs, params).map_err(|e| line_err(n, format!("{lhs}: {e}")))?;
        comps[k] = Some((n, e));
    }
    Ok(VectorField::new(comps.map(|c| c.map_or_else(Expr::zero, |(_, e)| e))))
}

pub fn parse_vector_file(path: &Path, params: &[&str]) -> Result<VectorField, InputError> {
    parse_vector(&read(path)?, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_file_round() {
        let m = parse_metric("# case 27\nA = 0\nB = 0\nC = ln(t^2)\ndomain t = [1, 3]\n").unwrap();
        assert_eq!(m.domain().interval(Var::T), (1.0, 3.0));
        assert_eq!(m.c().to_string(), crate::symexpr::parse("ln(t^2)").unwrap().simplify().to_string());
    }

    #[test]
    fn metric_file_errors() {
        assert_eq!(parse_metric("A = 0\nC = 0\n").unwrap_err(), InputError::Missing("B"));
        let e = parse_metric("A = y + t\nB = 0\nC = 0").unwrap_err();
        assert_eq!(e.to_string(), "line 1: A may depend only on t, x");
        let e = parse_metric("A = k*t\nparam k = 1\nB = 0\nC = 0").unwrap_err();
        assert!(e.to_string().starts_with("line 1: A: unknown identifier `k`"), "{e}");
        let e = parse_metric("A = 0\nB = exp(2*t\nC = 0").unwrap_err();
        assert_eq!(e.to_string(), "line 2: B: syntax error at offset 7: expected `)`");
        assert!(parse_metric("A = 0\nA = 1\nB = 0\nC = 0")
            .unwrap_err()
            .to_string()
            .contains("already defined on line 1"));
        assert!(parse_metric("A = 0\nB = 0\nC = 0\ndomain w = [0,1]").is_err());
        assert!(parse_metric("A = 0\nB = 0\nC = 0\ndomain t = [1,1]").is_err());
        assert!(parse_metric("A = 0\nB = 0\nC = ln(t)").is_err());
        assert!(parse_metric("param t = 1\nA = 0\nB = 0\nC = 0").is_err());
    }

    #[test]
    fn params_and_exclusions() {
        let m = parse_metric("param k = 2\nA = k*t\nB = 0\nC = 0\nexclude t = 0").unwrap();
        assert_eq!(m.params()["k"], 2.0);
        assert_eq!(m.domain().excluded(), &[(Var::T, 0.0)]);
    }

    #[test]
    fn vector_file() {
        let v = parse_vector("X1 = x^2 # f(x)\n", &[]).unwrap();
        assert!(v.0[0].is_zero() && v.0[2].is_zero() && v.0[3].is_zero());
        assert_eq!(v.0[1].to_string(), "x^2");
        assert!(parse_vector("X4 = 1", &[]).is_err());
        assert!(parse_vector("X0 = 1\nX0 = 2", &[]).is_err());
        assert!(parse_vector("X0 = k*t", &["k"]).is_ok());
    }
}
