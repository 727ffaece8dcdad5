//! Metric, connection and curvature of plane symmetric spacetimes.

mod closed_form;
mod curvature;
mod metric;
mod random;
mod tensor;

pub use closed_form::{
    audit_closed_forms, riemann_closed_form, AlphaAudit, Correction, RiemannComponents, ALPHA_COMPONENTS, ALPHA_SLOTS,
    CORRECTIONS,
};
pub use curvature::{
    covariant_derivative_02, covariant_derivative_13, covariant_derivative_covector, covariant_derivative_vector,
    Curvature,
};
pub use metric::{GeometryError, PlaneSymmetricMetric};
pub use random::random_metric;
pub use tensor::{Chart, ComponentValue, TensorField, TensorVerdict};
