use serde::Serialize;

use crate::config::AnalysisConfig;
use crate::geometry::{covariant_derivative_covector, Chart, PlaneSymmetricMetric, TensorVerdict};
use crate::symexpr::Expr;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovariantConstancy {
    pub constant: bool,
    /// Zero test of `k_{a;b}`.
    pub residual: TensorVerdict,
}

/// Tests `k_{a;b} = 0` on the metric's domain.
pub fn is_covariantly_constant(m: &PlaneSymmetricMetric, k: &[Expr; 4], cfg: &AnalysisConfig) -> CovariantConstancy {
    let dk = covariant_derivative_covector(&Chart::spacetime(), m.christoffels(), k);
    let residual = dk.zero_test(m.domain(), m.params(), &cfg.zero());
    CovariantConstancy { constant: residual.is_zero(), residual }
}

/// The gradient `dx^i` as a covector field.
pub fn coordinate_covector(i: usize) -> [Expr; 4] {
    std::array::from_fn(|j| if i == j { Expr::one() } else { Expr::zero() })
}
