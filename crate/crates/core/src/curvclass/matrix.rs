use nalgebra::{DMatrix, SMatrix, SymmetricEigen};
use serde::Serialize;
use thiserror::Error;

use super::bivector::{Bivector, BivectorIndex, MetricAt};
use crate::geometry::PlaneSymmetricMetric;
use crate::symexpr::{evaluate, EvalError, Point};

/// Largest singular value at or below which a matrix counts as zero.
pub const ZERO_FLOOR: f64 = 1e-12;

pub type Matrix6 = SMatrix<f64, 6, 6>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurvClassError {
    #[error("expected a rank-1 curvature matrix, found rank {0}")]
    RankMismatch(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// `W[A][B] = R_abcd` for bivector positions `A = [ab]`, `B = [cd]`, together
/// with the metric at the same point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiemannMatrix {
    pub point: Point,
    pub w: [[f64; 6]; 6],
    pub g: MetricAt,
}

impl RiemannMatrix {
    pub fn matrix(&self) -> Matrix6 {
        Matrix6::from_fn(|i, j| self.w[i][j])
    }

    /// `R_abcd` recovered from the bivector layout.
    pub fn component(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        match (BivectorIndex::position(a, b), BivectorIndex::position(c, d)) {
            (Some((i, s)), Some((j, t))) => s * t * self.w[i][j],
            _ => 0.0,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.w.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn asymmetry(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..6 {
            for j in 0..6 {
                m = m.max((self.w[i][j] - self.w[j][i]).abs());
            }
        }
        m
    }

    /// Singular values, largest first.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.matrix().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }
}

pub fn riemann_matrix_at(m: &PlaneSymmetricMetric, p: &Point) -> Result<RiemannMatrix, EvalError> {
    let rd = m.riemann_down();
    let mut w = [[0.0; 6]; 6];
    for (i, &(a, b)) in BivectorIndex::PAIRS.iter().enumerate() {
        for (j, &(c, d)) in BivectorIndex::PAIRS.iter().enumerate().skip(i) {
            let v = evaluate(rd.get(&[a, b, c, d]), p, m.params())?;
            w[i][j] = v;
            w[j][i] = v;
        }
    }
    Ok(RiemannMatrix { point: *p, w, g: m.metric_at(p)? })
}

fn count_above(sv: &[f64], tau: f64) -> usize {
    let top = sv.iter().fold(0.0f64, |m, v| m.max(*v));
    if top <= ZERO_FLOOR {
        return 0;
    }
    sv.iter().filter(|s| **s > tau * top).count()
}

/// Number of singular values above `tau` times the largest one.
pub fn rank_with_tol(w: &RiemannMatrix, tau: f64) -> usize {
    count_above(&w.singular_values(), tau)
}

/// Orthonormal basis of `N_p = {k : R_abcd k^d = 0}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelBasis {
    pub dim: usize,
    /// Lowered kernel elements `k_a`, row-reduced then orthonormalised in the
    /// Euclidean sense.
    pub covectors: Vec<[f64; 4]>,
    /// The same elements with the index raised, `k^a`.
    pub vectors: Vec<[f64; 4]>,
    /// `max |R_abcd k^d|` over unit `k`, relative to `max |R_abcd|`.
    pub residual: f64,
}

impl KernelBasis {
    /// Coordinate indices `i` such that the basis is `{dx^i}`, when it is.
    pub fn coordinate_axes(&self, tol: f64) -> Option<Vec<usize>> {
        self.covectors
            .iter()
            .map(|k| {
                let i = (0..4).max_by(|a, b| k[*a].abs().total_cmp(&k[*b].abs()))?;
                let aligned = (0..4).all(|j| if j == i { (k[j] - 1.0).abs() <= tol } else { k[j].abs() <= tol });
                aligned.then_some(i)
            })
            .collect()
    }
}

/// Row-reduces `rows` in place and returns the nonzero rows.
fn rref(mut rows: Vec<[f64; 4]>, eps: f64) -> Vec<[f64; 4]> {
    let mut r = 0;
    for col in 0..4 {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).max_by(|a, b| rows[*a][col].abs().total_cmp(&rows[*b][col].abs())) else {
            break;
        };
        if rows[piv][col].abs() <= eps {
            continue;
        }
        rows.swap(r, piv);
        let p = rows[r][col];
        rows[r] = rows[r].map(|v| v / p);
        for i in 0..rows.len() {
            if i != r {
                let f = rows[i][col];
                for j in 0..4 {
                    rows[i][j] -= f * rows[r][j];
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn gram_schmidt(rows: Vec<[f64; 4]>) -> Vec<[f64; 4]> {
    let mut out: Vec<[f64; 4]> = Vec::new();
    for mut v in rows {
        for u in &out {
            let d: f64 = (0..4).map(|i| v[i] * u[i]).sum();
            for i in 0..4 {
                v[i] -= d * u[i];
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        out.push(v.map(|x| x / n));
    }
    out
}

fn matvec(g: &MetricAt, k: &[f64; 4]) -> [f64; 4] {
    let mut o = [0.0; 4];
    for (a, oa) in o.iter_mut().enumerate() {
        *oa = (0..4).map(|b| g[a][b] * k[b]).sum();
    }
    o
}

/// Kernel of the 64×4 array `R_abcd` with rows `(a,b,c)` and columns `d`.
pub fn kernel_np(w: &RiemannMatrix, tau: f64) -> KernelBasis {
    let arr = DMatrix::from_fn(64, 4, |row, d| w.component(row / 16, (row / 4) % 4, row % 4, d));
    let svd = arr.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let top = sv.iter().fold(0.0f64, |m, v| m.max(*v));
    let null: Vec<[f64; 4]> = (0..sv.len())
        .filter(|&i| top <= ZERO_FLOOR || sv[i] <= tau * top)
        .map(|i| {
            let k = [v_t[(i, 0)], v_t[(i, 1)], v_t[(i, 2)], v_t[(i, 3)]];
            matvec(&w.g, &k)
        })
        .collect();
    let covectors = gram_schmidt(rref(null, 1e-9));
    let ginv = nalgebra::Matrix4::from_fn(|i, j| w.g[i][j]).try_inverse().expect("nondegenerate metric");
    let ginv: MetricAt = std::array::from_fn(|i| std::array::from_fn(|j| ginv[(i, j)]));
    let vectors: Vec<[f64; 4]> = covectors.iter().map(|k| matvec(&ginv, k)).collect();
    let scale = w.max_abs();
    let mut residual = 0.0f64;
    if scale > 0.0 {
        for k in &vectors {
            let n = k.iter().map(|x| x * x).sum::<f64>().sqrt();
            let r = arr.clone() * nalgebra::Vector4::from_fn(|i, _| k[i] / n);
            residual = residual.max(r.amax() / scale);
        }
    }
    KernelBasis { dim: covectors.len(), covectors, vectors, residual }
}

pub fn kernel_np_at(m: &PlaneSymmetricMetric, p: &Point, tau: f64) -> Result<KernelBasis, EvalError> {
    Ok(kernel_np(&riemann_matrix_at(m, p)?, tau))
}

/// Eigen-pairs of `W` with eigenvalue above the rank threshold, largest
/// magnitude first.
fn range_eigen(w: &RiemannMatrix, tau: f64) -> Vec<(f64, [f64; 6])> {
    let eig = SymmetricEigen::new(w.matrix());
    let top = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if top <= ZERO_FLOOR {
        return Vec::new();
    }
    let mut out: Vec<(f64, [f64; 6])> = (0..6)
        .filter(|&i| eig.eigenvalues[i].abs() > tau * top)
        .map(|i| (eig.eigenvalues[i], std::array::from_fn(|r| eig.eigenvectors[(r, i)])))
        .collect();
    out.sort_by(|a, b| b.0.abs().total_cmp(&a.0.abs()));
    out
}

/// Bivectors (covariant components) spanning the column space of `W`.
pub fn range_bivectors(w: &RiemannMatrix, tau: f64) -> Vec<Bivector> {
    range_eigen(w, tau).into_iter().map(|(_, v)| Bivector::from_components(v)).collect()
}

/// `R_abcd = α F_ab F_cd` for a rank-1 matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rank1Decomposition {
    pub alpha: f64,
    pub f: Bivector,
    /// `max |W − α F Fᵀ| / max |W|`.
    pub residual: f64,
    /// `|F_[ab F_cd]|`, zero for a simple bivector.
    pub plucker: f64,
    /// `max |F_ab k^b|` over the kernel basis.
    pub blade_residual: f64,
}

pub fn decompose_rank1(w: &RiemannMatrix, tau: f64) -> Result<Rank1Decomposition, CurvClassError> {
    let rank = rank_with_tol(w, tau);
    if rank != 1 {
        return Err(CurvClassError::RankMismatch(rank));
    }
    let (alpha, v) = range_eigen(w, tau)[0];
    let f = Bivector::from_components(v);
    let scale = w.max_abs();
    let mut residual = 0.0f64;
    for i in 0..6 {
        for j in 0..6 {
            residual = residual.max((w.w[i][j] - alpha * v[i] * v[j]).abs() / scale);
        }
    }
    let kernel = kernel_np(w, tau);
    let blade_residual = kernel.vectors.iter().flat_map(|k| f.apply(k)).fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(Rank1Decomposition { alpha, f, residual, plucker: f.plucker().abs(), blade_residual })
}
