use std::fmt;

use serde::Serialize;

use super::bivector::Bivector;
use super::matrix::{kernel_np, range_bivectors, rank_with_tol, riemann_matrix_at, KernelBasis, RiemannMatrix};
use crate::config::AnalysisConfig;
use crate::geometry::PlaneSymmetricMetric;
use crate::symexpr::{Domain, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CurvatureClass {
    A,
    B,
    C,
    D,
    O,
}

impl CurvatureClass {
    pub const ALL: [CurvatureClass; 5] =
        [CurvatureClass::A, CurvatureClass::B, CurvatureClass::C, CurvatureClass::D, CurvatureClass::O];
}

impl fmt::Display for CurvatureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Classification at a single point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointClass {
    pub point: Point,
    pub class: CurvatureClass,
    pub rank: usize,
    pub kernel_dim: usize,
    pub anomaly: Option<String>,
}

/// Whether the rank-2 range of `W` is spanned by a dual pair `F, F*` of
/// non-null simple bivectors.
pub fn range_is_dual_pair(w: &RiemannMatrix, tau: f64) -> bool {
    let range = range_bivectors(w, tau);
    if range.len() != 2 {
        return false;
    }
    let g = &w.g;
    let (u, v) = (range[0], range[1]);
    // the span must be closed under duality
    for b in [u, v] {
        let d = b.dual(g).components();
        let (pu, pv) = (u.components(), v.components());
        let cu: f64 = (0..6).map(|i| d[i] * pu[i]).sum();
        let cv: f64 = (0..6).map(|i| d[i] * pv[i]).sum();
        let off = (0..6).map(|i| (d[i] - cu * pu[i] - cv * pv[i]).abs()).fold(0.0, f64::max);
        let norm = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if off > 1e-8 * norm.max(f64::MIN_POSITIVE) {
            return false;
        }
    }
    // F = a u + b v is simple when Q(a, b) = F_ab F*^ab vanishes
    let q = |x: &Bivector, y: &Bivector| x.contract(&y.dual(g), g);
    let (q11, q12, q22) = (q(&u, &u), q(&u, &v), q(&v, &v));
    let scale = q11.abs().max(q12.abs()).max(q22.abs()).max(f64::MIN_POSITIVE);
    let (a, b) = if q22.abs() <= 1e-10 * scale {
        (0.0, 1.0)
    } else {
        let disc = q12 * q12 - q11 * q22;
        if disc < -1e-10 * scale * scale {
            return false;
        }
        (1.0, (-q12 + disc.max(0.0).sqrt()) / q22)
    };
    let f = u.scale(a).add(&v.scale(b));
    let n = f.max_abs().powi(2);
    f.contract(&f, g).abs() > 1e-8 * n
}

/// Applies the class decision procedure to one matrix.
pub fn classify_matrix(w: &RiemannMatrix, tau: f64) -> PointClass {
    let rank = rank_with_tol(w, tau);
    let kernel_dim = kernel_np(w, tau).dim;
    let mut anomaly = None;
    let class = match (rank, kernel_dim) {
        (0, _) => {
            if kernel_dim != 4 {
                anomaly = Some(format!("rank 0 with dim N_p = {kernel_dim}"));
            }
            CurvatureClass::O
        }
        (1, 2) => CurvatureClass::D,
        (2 | 3, 1) => CurvatureClass::C,
        (2, 0) if range_is_dual_pair(w, tau) => CurvatureClass::B,
        _ => {
            if rank == 1 {
                anomaly = Some(format!("rank 1 with dim N_p = {kernel_dim}"));
            } else if kernel_dim > 0 {
                anomaly = Some(format!("rank {rank} with dim N_p = {kernel_dim}"));
            }
            CurvatureClass::A
        }
    };
    PointClass { point: w.point, class, rank, kernel_dim, anomaly }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub generic_rank: usize,
    /// `histogram[r]` counts the sample points of rank `r`.
    pub histogram: [usize; 7],
    /// Sample points where the curvature could not be evaluated.
    pub failed: usize,
}

/// Per-point classification at the seeded samples of `dom`.
fn sample_classes(m: &PlaneSymmetricMetric, dom: &Domain, cfg: &AnalysisConfig) -> (Vec<PointClass>, usize) {
    let mut out = Vec::new();
    let mut failed = 0;
    for p in dom.sample(cfg.samples, cfg.seed) {
        match riemann_matrix_at(m, &p) {
            Ok(w) => out.push(classify_matrix(&w, cfg.rank_tol)),
            Err(_) => failed += 1,
        }
    }
    (out, failed)
}

fn rank_report(points: &[PointClass], failed: usize) -> RankReport {
    let mut histogram = [0; 7];
    for p in points {
        histogram[p.rank] += 1;
    }
    let generic_rank = points.iter().map(|p| p.rank).max().unwrap_or(0);
    RankReport { generic_rank, histogram, failed }
}

pub fn generic_rank(m: &PlaneSymmetricMetric, dom: &Domain, cfg: &AnalysisConfig) -> RankReport {
    let mut histogram = [0; 7];
    let mut failed = 0;
    for p in dom.sample(cfg.samples, cfg.seed) {
        match riemann_matrix_at(m, &p) {
            Ok(w) => histogram[rank_with_tol(&w, cfg.rank_tol)] += 1,
            Err(_) => failed += 1,
        }
    }
    let generic_rank = (0..7).rev().find(|r| histogram[*r] > 0).unwrap_or(0);
    RankReport { generic_rank, histogram, failed }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub class: CurvatureClass,
    pub rank: RankReport,
    pub kernel_dim: usize,
    /// Kernel at the first sample point of generic rank.
    pub kernel: Option<KernelBasis>,
    /// Points of generic rank per class, in `CurvatureClass::ALL` order.
    pub class_counts: [usize; 5],
    /// Same class at every point of generic rank.
    pub stable: bool,
    pub warnings: Vec<String>,
}

pub fn classify(m: &PlaneSymmetricMetric, dom: &Domain, cfg: &AnalysisConfig) -> Classification {
    let (points, failed) = sample_classes(m, dom, cfg);
    let rank = rank_report(&points, failed);
    let generic: Vec<&PointClass> = points.iter().filter(|p| p.rank == rank.generic_rank).collect();
    let mut class_counts = [0; 5];
    for p in &generic {
        class_counts[CurvatureClass::ALL.iter().position(|c| *c == p.class).expect("listed")] += 1;
    }
    let best = (0..5).max_by_key(|i| (class_counts[*i], std::cmp::Reverse(*i))).expect("five classes");
    let class = if generic.is_empty() { CurvatureClass::O } else { CurvatureClass::ALL[best] };
    let stable = class_counts.iter().filter(|c| **c > 0).count() <= 1;
    let mut warnings = Vec::new();
    if failed > 0 {
        warnings.push(format!("curvature could not be evaluated at {failed} sample points"));
    }
    if !stable {
        warnings.push(format!("class varies between points of generic rank: {class_counts:?} (A,B,C,D,O)"));
    }
    let lower = points.len() - generic.len();
    if lower > 0 {
        warnings.push(format!("rank drops below {} at {lower} sample points", rank.generic_rank));
    }
    let mut anomalies: Vec<&str> = points.iter().filter_map(|p| p.anomaly.as_deref()).collect();
    anomalies.sort_unstable();
    anomalies.dedup();
    warnings.extend(anomalies.into_iter().map(|a| format!("anomaly: {a}")));
    let first = generic.iter().find(|p| p.class == class);
    let kernel = first.and_then(|p| riemann_matrix_at(m, &p.point).ok()).map(|w| kernel_np(&w, cfg.rank_tol));
    Classification {
        class,
        kernel_dim: first.map_or(4, |p| p.kernel_dim),
        rank,
        kernel,
        class_counts,
        stable,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLAT: [[f64; 4]; 4] =
        [[-1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]];

    fn from_sum(terms: &[(f64, Bivector)]) -> RiemannMatrix {
        let mut w = [[0.0; 6]; 6];
        for (c, f) in terms {
            let v = f.components();
            for i in 0..6 {
                for j in 0..6 {
                    w[i][j] += c * v[i] * v[j];
                }
            }
        }
        RiemannMatrix { point: [0.0; 4], w, g: FLAT }
    }

    #[test]
    fn dual_pair_is_class_b() {
        let f = Bivector::wedge([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]);
        let w = from_sum(&[(2.0, f), (-3.0, f.dual(&FLAT))]);
        let pc = classify_matrix(&w, 1e-10);
        assert_eq!((pc.rank, pc.kernel_dim, pc.class), (2, 0, CurvatureClass::B));
    }

    #[test]
    fn rank_two_with_common_kernel_is_c() {
        let f = Bivector::wedge([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]);
        let h = Bivector::wedge([1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]);
        let pc = classify_matrix(&from_sum(&[(1.0, f), (1.0, h)]), 1e-10);
        assert_eq!(pc.rank, 2);
        assert_eq!(pc.kernel_dim, 1);
        assert_eq!(pc.class, CurvatureClass::C);
    }

    #[test]
    fn zero_matrix_is_o() {
        let pc = classify_matrix(&from_sum(&[]), 1e-10);
        assert_eq!((pc.class, pc.kernel_dim, pc.anomaly), (CurvatureClass::O, 4, None));
    }
}
