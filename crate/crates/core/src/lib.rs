//! Curvature analysis of non-static plane symmetric spacetimes
//!
//! `ds² = −e^{A(t,x)} dt² + e^{B(t,x)} dx² + e^{C(t,x)} (dy² + dz²)`.
//!
//! The crate computes curvature symbolically, classifies the Riemann tensor
//! by the rank and kernel of its 6×6 bivector matrix, matches metrics against
//! a table of rank ≤ 3 cases, and checks candidate vector fields for Killing,
//! homothetic, affine and curvature-collineation status.

#![allow(clippy::needless_range_loop)]

pub mod casebook;
pub mod cli;
pub mod collineations;
pub mod config;
pub mod curvclass;
pub mod geometry;
pub mod symexpr;

pub use config::AnalysisConfig;
pub use geometry::PlaneSymmetricMetric;
pub use symexpr::{Expr, Var};
