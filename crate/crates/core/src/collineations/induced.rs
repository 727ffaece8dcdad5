//! Geometries induced on the 3D submanifolds of constant `x` and the 2D
//! submanifolds of constant `y, z`.

use serde::Serialize;
use thiserror::Error;

use super::lie::lie_derivative_02;
use crate::config::AnalysisConfig;
use crate::geometry::{Chart, Curvature, PlaneSymmetricMetric, TensorField, TensorVerdict};
use crate::symexpr::{
    evaluate, zero_test, zero_test_points, Bindings, Domain, Expr, Point, TriState, Var, ZeroVerdict,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InducedError {
    #[error("precondition {condition} ≡ 0 does not hold ({state:?})")]
    Precondition { condition: &'static str, state: TriState },
}

fn require(
    conditions: &[(&'static str, Expr)],
    m: &PlaneSymmetricMetric,
    cfg: &AnalysisConfig,
) -> Result<(), InducedError> {
    for (condition, e) in conditions {
        let v = zero_test(e, m.domain(), m.params(), &cfg.zero());
        if !v.is_zero() {
            return Err(InducedError::Precondition { condition, state: v.state });
        }
    }
    Ok(())
}

/// `−e^α dt² + e^η (dy² + dz²)` on the submanifolds of constant `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Induced3Geometry {
    pub alpha: Expr,
    pub eta: Expr,
    pub params: Bindings,
    pub domain: Domain,
}

pub fn induced_3d(m: &PlaneSymmetricMetric, cfg: &AnalysisConfig) -> Result<Induced3Geometry, InducedError> {
    require(&[("A_x", m.a().d(Var::X)), ("B_t", m.b().d(Var::T)), ("C_x", m.c().d(Var::X))], m, cfg)?;
    Ok(Induced3Geometry {
        alpha: m.a().clone(),
        eta: m.c().clone(),
        params: m.params().clone(),
        domain: m.domain().clone(),
    })
}

impl Induced3Geometry {
    /// Metric in the chart `(t, y, z)`.
    pub fn metric_tensor(&self) -> TensorField {
        let mut g = TensorField::zeros(3, 0, 2);
        g.set(&[0, 0], -self.alpha.exp());
        g.set(&[1, 1], self.eta.exp());
        g.set(&[2, 2], self.eta.exp());
        g
    }

    pub fn chart() -> Chart {
        Chart(vec![Var::T, Var::Y, Var::Z])
    }

    /// Left-hand sides of the six component equations of `L_X g = c g`,
    /// with `c` still to be subtracted from the three diagonal ones.
    pub fn homothety_equations(&self, x: &[Expr; 3]) -> [Expr; 6] {
        let (t, y, z) = (Var::T, Var::Y, Var::Z);
        let (ea, ee) = (self.alpha.exp(), self.eta.exp());
        let (ad, ed) = (self.alpha.d(t), self.eta.d(t));
        [
            &ad * &x[0] + 2 * x[0].d(t),
            -&ea * x[0].d(y) + &ee * x[1].d(t),
            -&ea * x[0].d(z) + &ee * x[2].d(t),
            &ed * &x[0] + 2 * x[1].d(y),
            x[1].d(z) + x[2].d(y),
            &ed * &x[0] + 2 * x[2].d(z),
        ]
    }
}

/// Outcome of the six homothety equations of the induced 3D geometry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Homothety3 {
    pub c: Option<f64>,
    pub residuals: Vec<ZeroVerdict>,
    /// Zero test of `L_X g − c g` computed directly, as a cross-check.
    pub generic: Option<TensorVerdict>,
}

const DIAGONAL: [usize; 3] = [0, 3, 5];

pub fn is_homothetic_3d(g3: &Induced3Geometry, x: &[Expr; 3], cfg: &AnalysisConfig) -> Homothety3 {
    let eqs = g3.homothety_equations(x);
    let zc = cfg.zero();
    let points = g3.domain.sample(zc.samples, zc.seed);
    let (mut sum, mut n) = (0.0, 0usize);
    for p in &points {
        for &i in &DIAGONAL {
            if let Ok(v) = evaluate(&eqs[i], p, &g3.params) {
                sum += v;
                n += 1;
            }
        }
    }
    let c = if n > 0 { sum / n as f64 } else { 0.0 };
    let ce = Expr::real(c);
    let residuals: Vec<ZeroVerdict> = eqs
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let r = if DIAGONAL.contains(&i) { e - &ce } else { e.clone() };
            zero_test_points(&r, &points, &g3.params, &zc)
        })
        .collect();
    let ok = residuals.iter().all(ZeroVerdict::is_zero);
    let generic = ok.then(|| {
        let g = g3.metric_tensor();
        let h = lie_derivative_02(&Induced3Geometry::chart(), &g, x);
        h.zip_with(&g, |hv, gv| hv - &ce * gv).zero_test_at(&points, &g3.params, &zc)
    });
    Homothety3 { c: ok.then_some(c), residuals, generic }
}

/// `−e^A dt² + e^B dx²` on the submanifolds of constant `y, z`, with its
/// Ricci tensor, scalar curvature and `G_ab = (R/2) g_ab`.
#[derive(Debug, Clone, PartialEq)]
pub struct Induced2Geometry {
    pub a: Expr,
    pub b: Expr,
    pub metric: TensorField,
    pub ricci: TensorField,
    pub scalar: Expr,
    pub g_tensor: TensorField,
    pub params: Bindings,
    pub domain: Domain,
    /// Zero test of the closed-form Ricci tensor minus the generic one.
    pub ricci_check: TensorVerdict,
}

pub fn induced_2d(m: &PlaneSymmetricMetric, cfg: &AnalysisConfig) -> Result<Induced2Geometry, InducedError> {
    require(&[("C_t", m.c().d(Var::T)), ("C_x", m.c().d(Var::X))], m, cfg)?;
    let (t, x) = (Var::T, Var::X);
    let (a, b) = (m.a().clone(), m.b().clone());
    let (ea, eb) = (a.exp(), b.exp());
    let k = a.d(x).powi(2) + 2 * a.d(x).d(x) - a.d(x) * b.d(x);
    let l = b.d(t).powi(2) + 2 * b.d(t).d(t) - a.d(t) * b.d(t);
    let bracket = &k * &ea - &eb * &l;
    let chart = Chart(vec![t, x]);
    let mut metric = TensorField::zeros(2, 0, 2);
    metric.set(&[0, 0], -&ea);
    metric.set(&[1, 1], eb.clone());
    let mut ricci = TensorField::zeros(2, 0, 2);
    ricci.set(&[0, 0], Expr::rat(1, 4) * (-&b).exp() * &bracket);
    ricci.set(&[1, 1], Expr::rat(-1, 4) * (-&a).exp() * &bracket);
    let scalar = Expr::rat(-1, 2) * (&k * (-&b).exp() - (-&a).exp() * &l);
    let half_r = Expr::rat(1, 2) * &scalar;
    let g_tensor = metric.map(|g| &half_r * g);
    let generic = Curvature::of_diagonal(chart, metric.clone());
    let ricci_check = ricci.zip_with(&generic.ricci, |u, v| u - v).zero_test(m.domain(), m.params(), &cfg.zero());
    Ok(Induced2Geometry {
        a,
        b,
        metric,
        ricci,
        scalar,
        g_tensor,
        params: m.params().clone(),
        domain: m.domain().clone(),
        ricci_check,
    })
}

impl Induced2Geometry {
    pub fn chart() -> Chart {
        Chart(vec![Var::T, Var::X])
    }

    pub fn g_at(&self, p: &Point) -> Result<[f64; 2], crate::symexpr::EvalError> {
        Ok([
            evaluate(self.g_tensor.get(&[0, 0]), p, &self.params)?,
            evaluate(self.g_tensor.get(&[1, 1]), p, &self.params)?,
        ])
    }

    /// The three component equations of `L_X G = 0`.
    pub fn cc_equations(&self, x: &[Expr; 2]) -> [Expr; 3] {
        let (t, xv) = (Var::T, Var::X);
        let (g00, g11) = (self.g_tensor.get(&[0, 0]), self.g_tensor.get(&[1, 1]));
        [
            g00.d(t) * &x[0] + g00.d(xv) * &x[1] + 2 * g00 * x[0].d(t),
            self.b.exp() * x[1].d(t) - self.a.exp() * x[0].d(xv),
            g11.d(t) * &x[0] + g11.d(xv) * &x[1] + 2 * g11 * x[1].d(xv),
        ]
    }
}

/// Outcome of `L_X G = 0` in the induced 2D geometry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoDimCc {
    /// The equations hold, or hold vacuously.
    pub holds: bool,
    /// `R ≡ 0`, so `G ≡ 0` and every field satisfies the equations.
    pub vacuous: bool,
    pub residuals: Vec<ZeroVerdict>,
    /// Zero test of `L_X G` computed directly.
    pub generic: TensorVerdict,
}

pub fn is_2d_cc(g2: &Induced2Geometry, x: &[Expr; 2], cfg: &AnalysisConfig) -> TwoDimCc {
    let zc = cfg.zero();
    let points = g2.domain.sample(zc.samples, zc.seed);
    let vacuous = zero_test_points(&g2.scalar, &points, &g2.params, &zc).is_zero();
    let residuals: Vec<ZeroVerdict> =
        g2.cc_equations(x).iter().map(|e| zero_test_points(e, &points, &g2.params, &zc)).collect();
    let generic = lie_derivative_02(&Induced2Geometry::chart(), &g2.g_tensor, x).zero_test_at(&points, &g2.params, &zc);
    let holds = vacuous || residuals.iter().all(ZeroVerdict::is_zero);
    TwoDimCc { holds, vacuous, residuals, generic }
}
