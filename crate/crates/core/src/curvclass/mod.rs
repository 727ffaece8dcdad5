//! Rank, kernel and algebraic class of the Riemann tensor viewed as a
//! symmetric map on bivectors.

mod bivector;
mod classify;
mod covconst;
mod matrix;

pub use bivector::{
    bivector_dual, bivector_invariants, levi_civita, Bivector, BivectorIndex, BivectorInvariants, MetricAt,
};
pub use classify::{
    classify, classify_matrix, generic_rank, range_is_dual_pair, Classification, CurvatureClass, PointClass, RankReport,
};
pub use covconst::{coordinate_covector, is_covariantly_constant, CovariantConstancy};
pub use matrix::{
    decompose_rank1, kernel_np, kernel_np_at, range_bivectors, rank_with_tol, riemann_matrix_at, CurvClassError,
    KernelBasis, Matrix6, Rank1Decomposition, RiemannMatrix, ZERO_FLOOR,
};
