//! Levi-Civita connection and curvature in an arbitrary coordinate chart.
//!
//! Conventions: `Γ^a_{bc} = ½ g^{ad}(∂_b g_{dc} + ∂_c g_{db} − ∂_d g_{bc})`,
//! `R^a_{bcd} = ∂_c Γ^a_{db} − ∂_d Γ^a_{cb} + Γ^a_{ce} Γ^e_{db} − Γ^a_{de} Γ^e_{cb}`,
//! `R_{abcd} = g_{ae} R^e_{bcd}`, `R_{ab} = R^c_{acb}`.

use super::tensor::{Chart, TensorField};
use crate::symexpr::Expr;

/// Product of factors, or `None` when one of them is literally zero.
fn prod(fs: &[&Expr]) -> Option<Expr> {
    if fs.iter().any(|f| f.is_zero()) {
        return None;
    }
    Some(Expr::product(fs.iter().map(|f| (*f).clone())))
}

/// Inverse of a diagonal `(0,2)` metric.
///
/// Panics if an off-diagonal component is not literally zero.
pub fn diagonal_inverse(g: &TensorField) -> TensorField {
    let n = g.dim();
    let mut inv = TensorField::zeros(n, 2, 0);
    for a in 0..n {
        for b in 0..n {
            if a != b {
                assert!(g.get(&[a, b]).is_zero(), "metric must be diagonal");
            }
        }
        inv.set(&[a, a], g.get(&[a, a]).powi(-1));
    }
    inv
}

pub fn christoffels(chart: &Chart, g: &TensorField, ginv: &TensorField) -> TensorField {
    let n = chart.dim();
    // dg[d][b][c] = ∂_d g_{bc}
    let dg: Vec<Vec<Vec<Expr>>> =
        (0..n).map(|d| (0..n).map(|b| (0..n).map(|c| chart.d(g.get(&[b, c]), d)).collect()).collect()).collect();
    let mut gamma = TensorField::zeros(n, 1, 2);
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                let mut terms = Vec::new();
                for d in 0..n {
                    let gad = ginv.get(&[a, d]);
                    if gad.is_zero() {
                        continue;
                    }
                    let inner = &dg[b][d][c] + &dg[c][d][b] - &dg[d][b][c];
                    if let Some(t) = prod(&[gad, &inner]) {
                        terms.push(t);
                    }
                }
                let v = Expr::rat(1, 2) * Expr::sum(terms);
                gamma.set(&[a, c, b], v.clone());
                gamma.set(&[a, b, c], v);
            }
        }
    }
    gamma
}

pub fn riemann_up(chart: &Chart, gamma: &TensorField) -> TensorField {
    let n = chart.dim();
    let mut r = TensorField::zeros(n, 1, 3);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in (c + 1)..n {
                    let mut terms = vec![chart.d(gamma.get(&[a, d, b]), c), -chart.d(gamma.get(&[a, c, b]), d)];
                    for e in 0..n {
                        if let Some(t) = prod(&[gamma.get(&[a, c, e]), gamma.get(&[e, d, b])]) {
                            terms.push(t);
                        }
                        if let Some(t) = prod(&[gamma.get(&[a, d, e]), gamma.get(&[e, c, b])]) {
                            terms.push(-t);
                        }
                    }
                    let v = Expr::sum(terms);
                    r.set(&[a, b, d, c], -&v);
                    r.set(&[a, b, c, d], v);
                }
            }
        }
    }
    r
}

/// Lowers the first (upper) index of a `(1,k)` tensor.
pub fn lower_first(g: &TensorField, t: &TensorField) -> TensorField {
    let n = g.dim();
    let (up, low) = t.valence();
    assert_eq!(up, 1);
    let mut out = TensorField::zeros(n, 0, low + 1);
    for (idx, _) in t.iter() {
        let a = idx[0];
        let terms: Vec<Expr> = (0..n)
            .filter_map(|e| {
                let mut j = idx.clone();
                j[0] = e;
                prod(&[g.get(&[a, e]), t.get(&j)])
            })
            .collect();
        out.set(&idx, Expr::sum(terms));
    }
    out
}

/// Symmetric by construction: only `a ≤ b` is contracted.
pub fn ricci(r_up: &TensorField) -> TensorField {
    let n = r_up.dim();
    let mut out = TensorField::zeros(n, 0, 2);
    for a in 0..n {
        for b in a..n {
            let v = Expr::sum((0..n).map(|c| r_up.get(&[c, a, c, b]).clone()));
            out.set(&[b, a], v.clone());
            out.set(&[a, b], v);
        }
    }
    out
}

/// `T_{ab;c} = ∂_c T_{ab} − Γ^e_{ca} T_{eb} − Γ^e_{cb} T_{ae}`, index order `(a,b,c)`.
pub fn covariant_derivative_02(chart: &Chart, gamma: &TensorField, t: &TensorField) -> TensorField {
    let n = chart.dim();
    assert_eq!(t.valence(), (0, 2));
    let mut out = TensorField::zeros(n, 0, 3);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut terms = vec![chart.d(t.get(&[a, b]), c)];
                for e in 0..n {
                    if let Some(x) = prod(&[gamma.get(&[e, c, a]), t.get(&[e, b])]) {
                        terms.push(-x);
                    }
                    if let Some(x) = prod(&[gamma.get(&[e, c, b]), t.get(&[a, e])]) {
                        terms.push(-x);
                    }
                }
                out.set(&[a, b, c], Expr::sum(terms));
            }
        }
    }
    out
}

/// `k_{a;b} = ∂_b k_a − Γ^e_{ba} k_e`, index order `(a,b)`.
pub fn covariant_derivative_covector(chart: &Chart, gamma: &TensorField, k: &[Expr]) -> TensorField {
    let n = chart.dim();
    let mut out = TensorField::zeros(n, 0, 2);
    for a in 0..n {
        for b in 0..n {
            let mut terms = vec![chart.d(&k[a], b)];
            for (e, ke) in k.iter().enumerate() {
                if let Some(x) = prod(&[gamma.get(&[e, b, a]), ke]) {
                    terms.push(-x);
                }
            }
            out.set(&[a, b], Expr::sum(terms));
        }
    }
    out
}

/// `X^a_{;b} = ∂_b X^a + Γ^a_{bc} X^c`, index order `(a,b)`.
pub fn covariant_derivative_vector(chart: &Chart, gamma: &TensorField, x: &[Expr]) -> TensorField {
    let n = chart.dim();
    let mut out = TensorField::zeros(n, 1, 1);
    for a in 0..n {
        for b in 0..n {
            let mut terms = vec![chart.d(&x[a], b)];
            for (c, xc) in x.iter().enumerate() {
                if let Some(v) = prod(&[gamma.get(&[a, b, c]), xc]) {
                    terms.push(v);
                }
            }
            out.set(&[a, b], Expr::sum(terms));
        }
    }
    out
}

/// Covariant derivative of a `(1,3)` tensor, index order `(a,b,c,d,e)` for
/// `T^a_{bcd;e}`.
pub fn covariant_derivative_13(chart: &Chart, gamma: &TensorField, t: &TensorField) -> TensorField {
    let n = chart.dim();
    assert_eq!(t.valence(), (1, 3));
    let mut out = TensorField::zeros(n, 1, 4);
    for (idx, comp) in t.iter() {
        let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
        for e in 0..n {
            let mut terms = vec![chart.d(comp, e)];
            for f in 0..n {
                if let Some(v) = prod(&[gamma.get(&[a, e, f]), t.get(&[f, b, c, d])]) {
                    terms.push(v);
                }
                if let Some(v) = prod(&[gamma.get(&[f, e, b]), t.get(&[a, f, c, d])]) {
                    terms.push(-v);
                }
                if let Some(v) = prod(&[gamma.get(&[f, e, c]), t.get(&[a, b, f, d])]) {
                    terms.push(-v);
                }
                if let Some(v) = prod(&[gamma.get(&[f, e, d]), t.get(&[a, b, c, f])]) {
                    terms.push(-v);
                }
            }
            out.set(&[a, b, c, d, e], Expr::sum(terms));
        }
    }
    out
}

/// Full curvature data of a diagonal metric.
#[derive(Debug, Clone)]
pub struct Curvature {
    pub chart: Chart,
    pub metric: TensorField,
    pub inverse: TensorField,
    pub christoffel: TensorField,
    pub riemann: TensorField,
    pub riemann_down: TensorField,
    pub ricci: TensorField,
}

impl Curvature {
    pub fn of_diagonal(chart: Chart, metric: TensorField) -> Curvature {
        let inverse = diagonal_inverse(&metric);
        let christoffel = christoffels(&chart, &metric, &inverse);
        let riemann = riemann_up(&chart, &christoffel);
        let riemann_down = lower_first(&metric, &riemann);
        let ricci = ricci(&riemann);
        Curvature { chart, metric, inverse, christoffel, riemann, riemann_down, ricci }
    }
}
