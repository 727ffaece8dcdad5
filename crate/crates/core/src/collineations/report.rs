use serde::Serialize;

use super::lie::{lie_derivative_02, lie_derivative_13, lie_derivative_13_covariant};
use super::vector::VectorField;
use crate::config::AnalysisConfig;
use crate::geometry::{Chart, PlaneSymmetricMetric, TensorField, TensorVerdict};
use crate::symexpr::{evaluate, Expr, TriState};

/// `h_ab = L_X g_ab`.
pub fn lie_metric(m: &PlaneSymmetricMetric, x: &VectorField) -> TensorField {
    lie_derivative_02(&Chart::spacetime(), &m.metric_tensor(), x.components())
}

/// `L_X R^a_bcd` in partial-derivative form.
pub fn lie_riemann(m: &PlaneSymmetricMetric, x: &VectorField) -> TensorField {
    lie_derivative_13(&Chart::spacetime(), m.riemann(), x.components())
}

/// `L_X R^a_bcd` from covariant derivatives of `R` and `X`.
pub fn lie_riemann_covariant(m: &PlaneSymmetricMetric, x: &VectorField) -> TensorField {
    lie_derivative_13_covariant(&Chart::spacetime(), m.christoffels(), m.riemann(), x.components())
}

fn verdict(t: &TensorField, m: &PlaneSymmetricMetric, cfg: &AnalysisConfig) -> TensorVerdict {
    t.zero_test(m.domain(), m.params(), &cfg.zero())
}

pub fn is_killing(m: &PlaneSymmetricMetric, x: &VectorField, cfg: &AnalysisConfig) -> TensorVerdict {
    verdict(&lie_metric(m, x), m, cfg)
}

/// Homothety constant with the zero test of `h − 2c g`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Homothety {
    pub c: Option<f64>,
    pub residual: TensorVerdict,
}

/// Least-squares `c` in `h = 2c g` over the sample, verified by a zero test
/// of `h − 2c g`; `c = 0` exactly for Killing fields.
pub fn homothety_constant(m: &PlaneSymmetricMetric, x: &VectorField, cfg: &AnalysisConfig) -> Homothety {
    let h = lie_metric(m, x);
    let killing = verdict(&h, m, cfg);
    if killing.is_zero() {
        return Homothety { c: Some(0.0), residual: killing };
    }
    let g = m.metric_tensor();
    let (mut num, mut den) = (0.0, 0.0);
    for p in m.domain().sample(cfg.samples, cfg.seed) {
        for i in 0..4 {
            let (Ok(hv), Ok(gv)) = (evaluate(h.get(&[i, i]), &p, m.params()), evaluate(g.get(&[i, i]), &p, m.params()))
            else {
                continue;
            };
            num += hv * gv;
            den += 2.0 * gv * gv;
        }
    }
    let c = if den > 0.0 { num / den } else { 0.0 };
    let two_c = Expr::real(2.0 * c);
    let residual = verdict(&h.zip_with(&g, |hv, gv| hv - &two_c * gv), m, cfg);
    Homothety { c: residual.is_zero().then_some(c), residual }
}

pub fn is_affine(m: &PlaneSymmetricMetric, x: &VectorField, cfg: &AnalysisConfig) -> TensorVerdict {
    verdict(&m.covariant_derivative(&lie_metric(m, x)), m, cfg)
}

pub fn is_cc(m: &PlaneSymmetricMetric, x: &VectorField, cfg: &AnalysisConfig) -> TensorVerdict {
    verdict(&lie_riemann(m, x), m, cfg)
}

pub fn is_proper_cc(m: &PlaneSymmetricMetric, x: &VectorField, cfg: &AnalysisConfig) -> bool {
    is_cc(m, x, cfg).is_zero() && !is_affine(m, x, cfg).is_zero()
}

/// Verdicts for one candidate field with the residual behind each.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollineationReport {
    pub field: VectorField,
    pub is_killing: bool,
    pub homothety_constant: Option<f64>,
    pub is_affine: bool,
    pub is_cc: bool,
    pub is_proper_cc: bool,
    /// `max |h_ab|`.
    pub killing: TensorVerdict,
    /// `max |h_ab − 2c g_ab|`.
    pub homothety: TensorVerdict,
    /// `max |h_ab;c|`.
    pub affine: TensorVerdict,
    /// `max |L_X R^a_bcd|`.
    pub cc: TensorVerdict,
    pub warnings: Vec<String>,
}

pub fn check_vector(m: &PlaneSymmetricMetric, x: &VectorField, cfg: &AnalysisConfig) -> CollineationReport {
    let killing = is_killing(m, x, cfg);
    let homothety = homothety_constant(m, x, cfg);
    let affine = is_affine(m, x, cfg);
    let cc = is_cc(m, x, cfg);
    let mut warnings = Vec::new();
    for (name, v) in [("h", &killing), ("h - 2cg", &homothety.residual), ("h_ab;c", &affine), ("L_X R", &cc)] {
        if v.state == TriState::Undetermined {
            warnings.push(format!("{name}: zero test undetermined at {} samples", v.failed_samples));
        }
    }
    CollineationReport {
        field: x.clone(),
        is_killing: killing.is_zero(),
        homothety_constant: homothety.c,
        is_affine: affine.is_zero(),
        is_cc: cc.is_zero(),
        is_proper_cc: cc.is_zero() && !affine.is_zero(),
        killing,
        homothety: homothety.residual,
        affine,
        cc,
        warnings,
    }
}

/// Largest difference between the two forms of `L_X R` over the sample.
pub fn lie_riemann_cross_check(m: &PlaneSymmetricMetric, x: &VectorField, cfg: &AnalysisConfig) -> TensorVerdict {
    let a = lie_riemann(m, x);
    let b = lie_riemann_covariant(m, x);
    verdict(&a.zip_with(&b, |u, v| u - v), m, cfg)
}
