use nalgebra::Matrix4;
use serde::Serialize;

use crate::geometry::PlaneSymmetricMetric;
use crate::symexpr::{EvalError, Point};

/// Numeric metric components at a point.
pub type MetricAt = [[f64; 4]; 4];

/// Fixed ordering of bivector index pairs: `[01],[02],[03],[12],[13],[23]`.
pub struct BivectorIndex;

impl BivectorIndex {
    pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    pub const LABELS: [&'static str; 6] = ["[01]", "[02]", "[03]", "[12]", "[13]", "[23]"];

    pub fn pair(pos: usize) -> (usize, usize) {
        Self::PAIRS[pos]
    }

    /// Position of `{a, b}` with the orientation sign of `(a, b)`; `None` when `a == b`.
    pub fn position(a: usize, b: usize) -> Option<(usize, f64)> {
        let (lo, hi, sign) = match a.cmp(&b) {
            std::cmp::Ordering::Less => (a, b, 1.0),
            std::cmp::Ordering::Greater => (b, a, -1.0),
            std::cmp::Ordering::Equal => return None,
        };
        Self::PAIRS.iter().position(|p| *p == (lo, hi)).map(|i| (i, sign))
    }
}

/// Sign of the permutation `(a, b, c, d)` of `(0, 1, 2, 3)`, zero on repeats.
pub fn levi_civita(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            match idx[i].cmp(&idx[j]) {
                std::cmp::Ordering::Equal => return 0.0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

fn inverse(g: &MetricAt) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| g[i][j]).try_inverse().expect("metric is nondegenerate")
}

fn det(g: &MetricAt) -> f64 {
    Matrix4::from_fn(|i, j| g[i][j]).determinant()
}

/// Antisymmetric covariant tensor `F_ab`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bivector(pub [[f64; 4]; 4]);

impl Bivector {
    pub fn zero() -> Bivector {
        Bivector([[0.0; 4]; 4])
    }

    /// Builds `F` from its six independent components in bivector order.
    pub fn from_components(c: [f64; 6]) -> Bivector {
        let mut f = [[0.0; 4]; 4];
        for (k, &(a, b)) in BivectorIndex::PAIRS.iter().enumerate() {
            f[a][b] = c[k];
            f[b][a] = -c[k];
        }
        Bivector(f)
    }

    pub fn components(&self) -> [f64; 6] {
        BivectorIndex::PAIRS.map(|(a, b)| self.0[a][b])
    }

    /// `u ∧ v` with `F_ab = u_a v_b − u_b v_a`.
    pub fn wedge(u: [f64; 4], v: [f64; 4]) -> Bivector {
        let mut f = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                f[a][b] = u[a] * v[b] - u[b] * v[a];
            }
        }
        Bivector(f)
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.0[a][b]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, s: f64) -> Bivector {
        Bivector(self.0.map(|r| r.map(|v| v * s)))
    }

    pub fn add(&self, o: &Bivector) -> Bivector {
        let mut f = self.0;
        for a in 0..4 {
            for b in 0..4 {
                f[a][b] += o.0[a][b];
            }
        }
        Bivector(f)
    }

    /// `F^ab`.
    pub fn raised(&self, g: &MetricAt) -> [[f64; 4]; 4] {
        let gi = inverse(g);
        let mut out = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let mut s = 0.0;
                for c in 0..4 {
                    for d in 0..4 {
                        s += gi[(a, c)] * gi[(b, d)] * self.0[c][d];
                    }
                }
                out[a][b] = s;
            }
        }
        out
    }

    /// `F_ab G^ab`.
    pub fn contract(&self, o: &Bivector, g: &MetricAt) -> f64 {
        let up = o.raised(g);
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                s += self.0[a][b] * up[a][b];
            }
        }
        s
    }

    /// `F*_ab = ½ ε_abcd F^cd` with `ε_0123 = √|det g|`.
    pub fn dual(&self, g: &MetricAt) -> Bivector {
        let up = self.raised(g);
        let vol = det(g).abs().sqrt();
        let mut out = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let mut s = 0.0;
                for c in 0..4 {
                    for d in 0..4 {
                        s += levi_civita([a, b, c, d]) * up[c][d];
                    }
                }
                out[a][b] = 0.5 * vol * s;
            }
        }
        Bivector(out)
    }

    /// `F_01 F_23 − F_02 F_13 + F_03 F_12`, zero exactly when `F` is simple.
    pub fn plucker(&self) -> f64 {
        let f = &self.0;
        f[0][1] * f[2][3] - f[0][2] * f[1][3] + f[0][3] * f[1][2]
    }

    /// `F_ab k^b`.
    pub fn apply(&self, k: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (a, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|b| self.0[a][b] * k[b]).sum();
        }
        out
    }

    pub fn invariants(&self, g: &MetricAt, tau: f64) -> BivectorInvariants {
        let square = self.contract(self, g);
        let dual_square = self.contract(&self.dual(g), g);
        BivectorInvariants {
            square,
            dual_square,
            simple: dual_square.abs() <= tau,
            null: square.abs() <= tau && dual_square.abs() <= tau,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BivectorInvariants {
    /// `F_ab F^ab`.
    pub square: f64,
    /// `F_ab F*^ab`.
    pub dual_square: f64,
    pub simple: bool,
    pub null: bool,
}

pub fn bivector_dual(f: &Bivector, m: &PlaneSymmetricMetric, p: &Point) -> Result<Bivector, EvalError> {
    Ok(f.dual(&m.metric_at(p)?))
}

pub fn bivector_invariants(
    f: &Bivector,
    m: &PlaneSymmetricMetric,
    p: &Point,
    tau: f64,
) -> Result<BivectorInvariants, EvalError> {
    Ok(f.invariants(&m.metric_at(p)?, tau))
}
