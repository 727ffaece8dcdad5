use std::sync::{Arc, OnceLock};

use thiserror::Error;

use super::curvature::{covariant_derivative_02, Curvature};
use super::tensor::{Chart, TensorField};
use crate::symexpr::{evaluate, parse_with_params, Bindings, Domain, Expr, ParseError, Point, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("{0} may depend only on t, x")]
    TransverseDependence(&'static str),
    #[error("parameter `{name}` used in {func} is not bound")]
    UnboundParameter { func: &'static str, name: String },
    #[error("metric is degenerate or undefined at {point:?}: e^{func} = {value}")]
    Degenerate { func: &'static str, point: Point, value: f64 },
    #[error("cannot parse {func}: {source}")]
    Parse { func: &'static str, source: ParseError },
}

/// `ds² = −e^A dt² + e^B dx² + e^C (dy² + dz²)` with `A, B, C` functions of `(t, x)`.
#[derive(Debug, Clone)]
pub struct PlaneSymmetricMetric {
    a: Expr,
    b: Expr,
    c: Expr,
    params: Bindings,
    domain: Domain,
    curvature: OnceLock<Arc<Curvature>>,
}

/// Points used to check nondegeneracy at construction.
const NONDEGENERACY_SAMPLES: usize = 16;
const NONDEGENERACY_SEED: u64 = 0x5eed;

impl PlaneSymmetricMetric {
    pub fn new(a: Expr, b: Expr, c: Expr, params: Bindings, domain: Domain) -> Result<Self, GeometryError> {
        let fs = [("A", a.simplify()), ("B", b.simplify()), ("C", c.simplify())];
        for (name, f) in &fs {
            if f.depends_on(Var::Y) || f.depends_on(Var::Z) {
                return Err(GeometryError::TransverseDependence(name));
            }
            if let Some(p) = f.params().into_iter().find(|p| !params.contains_key(p)) {
                return Err(GeometryError::UnboundParameter { func: name, name: p });
            }
        }
        for p in domain.sample(NONDEGENERACY_SAMPLES, NONDEGENERACY_SEED) {
            for (name, f) in &fs {
                let value = evaluate(&f.exp(), &p, &params).unwrap_or(f64::NAN);
                if !(value.is_finite() && value > 0.0) {
                    return Err(GeometryError::Degenerate { func: name, point: p, value });
                }
            }
        }
        let [(_, a), (_, b), (_, c)] = fs;
        Ok(PlaneSymmetricMetric { a, b, c, params, domain, curvature: OnceLock::new() })
    }

    /// Builds a metric from expression text; parameters are declared by the
    /// binding list.
    pub fn from_strs(a: &str, b: &str, c: &str, params: &[(&str, f64)], domain: Domain) -> Result<Self, GeometryError> {
        let names: Vec<&str> = params.iter().map(|(n, _)| *n).collect();
        let parse = |func, s| parse_with_params(s, &names).map_err(|source| GeometryError::Parse { func, source });
        let bindings = params.iter().map(|(n, v)| (n.to_string(), *v)).collect();
        Self::new(parse("A", a)?, parse("B", b)?, parse("C", c)?, bindings, domain)
    }

    pub fn a(&self) -> &Expr {
        &self.a
    }
    pub fn b(&self) -> &Expr {
        &self.b
    }
    pub fn c(&self) -> &Expr {
        &self.c
    }
    pub fn params(&self) -> &Bindings {
        &self.params
    }
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Same metric functions on a different domain.
    pub fn with_domain(&self, domain: Domain) -> Result<Self, GeometryError> {
        Self::new(self.a.clone(), self.b.clone(), self.c.clone(), self.params.clone(), domain)
    }

    /// Diagonal `(−e^A, e^B, e^C, e^C)`.
    pub fn metric_tensor(&self) -> TensorField {
        let mut g = TensorField::zeros(4, 0, 2);
        g.set(&[0, 0], -self.a.exp());
        g.set(&[1, 1], self.b.exp());
        g.set(&[2, 2], self.c.exp());
        g.set(&[3, 3], self.c.exp());
        g
    }

    /// Memoised curvature data; computed once and shared between threads.
    pub fn curvature(&self) -> &Curvature {
        self.curvature.get_or_init(|| Arc::new(Curvature::of_diagonal(Chart::spacetime(), self.metric_tensor())))
    }

    pub fn inverse_metric(&self) -> &TensorField {
        &self.curvature().inverse
    }

    pub fn christoffels(&self) -> &TensorField {
        &self.curvature().christoffel
    }

    /// `R^a_{bcd}`.
    pub fn riemann(&self) -> &TensorField {
        &self.curvature().riemann
    }

    /// `R_{abcd}`.
    pub fn riemann_down(&self) -> &TensorField {
        &self.curvature().riemann_down
    }

    pub fn ricci(&self) -> &TensorField {
        &self.curvature().ricci
    }

    pub fn covariant_derivative(&self, t: &TensorField) -> TensorField {
        covariant_derivative_02(&Chart::spacetime(), self.christoffels(), t)
    }

    /// Numeric metric components at `p`.
    pub fn metric_at(&self, p: &Point) -> Result<[[f64; 4]; 4], crate::symexpr::EvalError> {
        let g = self.metric_tensor().eval(p, &self.params)?;
        let mut out = [[0.0; 4]; 4];
        for (i, v) in g.into_iter().enumerate() {
            out[i / 4][i % 4] = v;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::Var;

    #[test]
    fn rejects_transverse_dependence() {
        let err = PlaneSymmetricMetric::from_strs("y + t", "0", "0", &[], Domain::default()).unwrap_err();
        assert_eq!(err.to_string(), "A may depend only on t, x");
    }

    #[test]
    fn rejects_unbound_parameter_and_singular_domain() {
        let a = parse_with_params("k*t", &["k"]).unwrap();
        let err = PlaneSymmetricMetric::new(a, Expr::zero(), Expr::zero(), Bindings::new(), Domain::default());
        assert!(matches!(err, Err(GeometryError::UnboundParameter { .. })));
        // ln(t) is undefined on half of the default domain
        let r = PlaneSymmetricMetric::from_strs("0", "0", "ln(t)", &[], Domain::default());
        assert!(matches!(r, Err(GeometryError::Degenerate { func: "C", .. })), "{r:?}");
    }

    #[test]
    fn metric_of_case27_form() {
        let dom = Domain::default().with_interval(Var::T, 1.0, 3.0).unwrap();
        let m = PlaneSymmetricMetric::from_strs("0", "0", "ln(t^2)", &[], dom).unwrap();
        let g = m.metric_at(&[2.0, 0.3, 0.1, -0.2]).unwrap();
        assert_eq!(g[0][0], -1.0);
        assert_eq!(g[1][1], 1.0);
        assert!((g[2][2] - 4.0).abs() < 1e-14);
        assert!((g[3][3] - 4.0).abs() < 1e-14);
        assert!(m.metric_tensor().get(&[0, 1]).is_zero());
        let ginv = m.inverse_metric().eval(&[2.0, 0.0, 0.0, 0.0], m.params()).unwrap();
        assert!((ginv[2 * 4 + 2] - 0.25).abs() < 1e-14);
    }
}
