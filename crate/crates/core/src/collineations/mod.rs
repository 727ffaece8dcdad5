//! Killing, homothetic, affine and curvature-collineation checks for
//! candidate vector fields, on the full metric and on its induced 3D and 2D
//! geometries.

mod induced;
mod lie;
mod report;
mod vector;
mod witness;

pub use induced::{
    induced_2d, induced_3d, is_2d_cc, is_homothetic_3d, Homothety3, Induced2Geometry, Induced3Geometry, InducedError,
    TwoDimCc,
};
pub use lie::{lie_derivative_02, lie_derivative_13, lie_derivative_13_covariant};
pub use report::{
    check_vector, homothety_constant, is_affine, is_cc, is_killing, is_proper_cc, lie_metric, lie_riemann,
    lie_riemann_covariant, lie_riemann_cross_check, CollineationReport, Homothety,
};
pub use vector::{killing_trio, VectorField};
pub use witness::gram_rank;
