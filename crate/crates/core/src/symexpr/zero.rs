//! Identical-vanishing tests by simplification and seeded sampling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::eval::{evaluate_with_scale, Bindings, Point};
use super::expr::{Expr, Var};
use super::simplify::simplify;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("interval for {var} must have positive length, got [{lo}, {hi}]")]
    EmptyInterval { var: &'static str, lo: f64, hi: f64 },
    #[error("interval bound for {0} is not finite")]
    NonFinite(&'static str),
}

/// Closed intervals for `t, x, y, z` plus excluded hyperplanes `var = value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Domain {
    intervals: [(f64, f64); 4],
    excluded: Vec<(Var, f64)>,
}

impl Default for Domain {
    fn default() -> Self {
        Domain { intervals: [(-1.0, 1.0); 4], excluded: Vec::new() }
    }
}

impl Domain {
    pub fn new(intervals: [(f64, f64); 4]) -> Result<Domain, DomainError> {
        let mut d = Domain::default();
        for v in Var::ALL {
            let (lo, hi) = intervals[v.index()];
            d = d.with_interval(v, lo, hi)?;
        }
        Ok(d)
    }

    pub fn with_interval(mut self, v: Var, lo: f64, hi: f64) -> Result<Domain, DomainError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(DomainError::NonFinite(v.name()));
        }
        if hi <= lo {
            return Err(DomainError::EmptyInterval { var: v.name(), lo, hi });
        }
        self.intervals[v.index()] = (lo, hi);
        Ok(self)
    }

    pub fn excluding(mut self, v: Var, value: f64) -> Domain {
        self.excluded.push((v, value));
        self
    }

    pub fn interval(&self, v: Var) -> (f64, f64) {
        self.intervals[v.index()]
    }

    pub fn excluded(&self) -> &[(Var, f64)] {
        &self.excluded
    }

    pub fn contains(&self, p: &Point) -> bool {
        Var::ALL.iter().all(|v| {
            let (lo, hi) = self.intervals[v.index()];
            (lo..=hi).contains(&p[v.index()])
        }) && !self.on_excluded(p)
    }

    fn on_excluded(&self, p: &Point) -> bool {
        self.excluded.iter().any(|(v, h)| {
            let (lo, hi) = self.intervals[v.index()];
            (p[v.index()] - h).abs() <= 1e-6 * (hi - lo)
        })
    }

    /// Seeded jittered-grid sample: each coordinate visits every one of the
    /// `n` strata exactly once, in a random order. Points on excluded
    /// hyperplanes are redrawn.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perms: Vec<Vec<usize>> = Vec::with_capacity(4);
        for _ in 0..4 {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            perms.push(p);
        }
        (0..n)
            .map(|i| {
                let mut pt = [0.0; 4];
                for _attempt in 0..64 {
                    for v in 0..4 {
                        let (lo, hi) = self.intervals[v];
                        let u = (perms[v][i] as f64 + rng.gen_range(0.05..0.95)) / n as f64;
                        pt[v] = lo + u * (hi - lo);
                    }
                    if !self.on_excluded(&pt) {
                        break;
                    }
                }
                pt
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroTestConfig {
    pub samples: usize,
    pub tol: f64,
    /// Weight of the round-off scale in the acceptance threshold.
    pub scale_guard: f64,
    pub seed: u64,
}

impl Default for ZeroTestConfig {
    fn default() -> Self {
        ZeroTestConfig { samples: 32, tol: 1e-9, scale_guard: 1.0, seed: 42 }
    }
}

impl ZeroTestConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.samples < 8 {
            return Err(format!("sample count must be at least 8, got {}", self.samples));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(format!("zero tolerance must be positive, got {}", self.tol));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TriState {
    Zero,
    NonZero,
    Undetermined,
}

/// Outcome of a zero test with the largest observed residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroVerdict {
    pub state: TriState,
    pub max_abs: f64,
    pub at: Option<Point>,
    /// Samples whose evaluation failed.
    pub failed_samples: usize,
}

impl ZeroVerdict {
    fn structural() -> ZeroVerdict {
        ZeroVerdict { state: TriState::Zero, max_abs: 0.0, at: None, failed_samples: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.state == TriState::Zero
    }
}

/// Tests whether `e` vanishes identically on `dom`.
pub fn zero_test(e: &Expr, dom: &Domain, params: &Bindings, cfg: &ZeroTestConfig) -> ZeroVerdict {
    let s = simplify(e);
    if s.is_zero() {
        return ZeroVerdict::structural();
    }
    zero_test_points(&s, &dom.sample(cfg.samples, cfg.seed), params, cfg)
}

/// Sampling part of [`zero_test`] over explicit points, for callers that
/// test many expressions at a shared sample.
pub fn zero_test_points(e: &Expr, points: &[Point], params: &Bindings, cfg: &ZeroTestConfig) -> ZeroVerdict {
    if e.is_zero() {
        return ZeroVerdict::structural();
    }
    let mut verdict = ZeroVerdict { state: TriState::Zero, max_abs: 0.0, at: None, failed_samples: 0 };
    let mut exceeded = false;
    for p in points {
        match evaluate_with_scale(e, p, params) {
            Ok((v, scale)) if v.is_finite() => {
                if verdict.at.is_none() || v.abs() > verdict.max_abs {
                    verdict.max_abs = v.abs();
                    verdict.at = Some(*p);
                }
                if v.abs() > cfg.tol * (1.0 + cfg.scale_guard * scale) {
                    exceeded = true;
                }
            }
            _ => verdict.failed_samples += 1,
        }
    }
    verdict.state = if exceeded {
        TriState::NonZero
    } else if verdict.failed_samples > 0 {
        TriState::Undetermined
    } else {
        TriState::Zero
    };
    verdict
}

/// Tri-state identical-vanishing decision.
pub fn is_identically_zero(e: &Expr, dom: &Domain, params: &Bindings, cfg: &ZeroTestConfig) -> TriState {
    zero_test(e, dom, params, cfg).state
}
