//! Lie derivatives in an arbitrary chart, in connection-free form.

use crate::geometry::{covariant_derivative_13, covariant_derivative_vector, Chart, TensorField};
use crate::symexpr::Expr;

fn push_prod(terms: &mut Vec<Expr>, a: &Expr, b: &Expr, sign: i64) {
    if !a.is_zero() && !b.is_zero() {
        terms.push(sign * (a * b));
    }
}

/// `(L_X T)_ab = X^e ∂_e T_ab + T_eb ∂_a X^e + T_ae ∂_b X^e`.
pub fn lie_derivative_02(chart: &Chart, t: &TensorField, x: &[Expr]) -> TensorField {
    let n = chart.dim();
    assert_eq!(t.valence(), (0, 2));
    let dx: Vec<Vec<Expr>> = (0..n).map(|e| (0..n).map(|a| chart.d(&x[e], a)).collect()).collect();
    let mut out = TensorField::zeros(n, 0, 2);
    for a in 0..n {
        for b in 0..n {
            let mut terms = Vec::new();
            for e in 0..n {
                push_prod(&mut terms, &x[e], &chart.d(t.get(&[a, b]), e), 1);
                push_prod(&mut terms, t.get(&[e, b]), &dx[e][a], 1);
                push_prod(&mut terms, t.get(&[a, e]), &dx[e][b], 1);
            }
            out.set(&[a, b], Expr::sum(terms));
        }
    }
    out
}

/// `(L_X T)^a_bcd = X^e ∂_e T^a_bcd − T^e_bcd ∂_e X^a + T^a_ecd ∂_b X^e
/// + T^a_bed ∂_c X^e + T^a_bce ∂_d X^e`.
pub fn lie_derivative_13(chart: &Chart, t: &TensorField, x: &[Expr]) -> TensorField {
    let n = chart.dim();
    assert_eq!(t.valence(), (1, 3));
    let dx: Vec<Vec<Expr>> = (0..n).map(|e| (0..n).map(|a| chart.d(&x[e], a)).collect()).collect();
    let mut out = TensorField::zeros(n, 1, 3);
    for (idx, comp) in t.iter() {
        let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
        let mut terms = Vec::new();
        for e in 0..n {
            push_prod(&mut terms, &x[e], &chart.d(comp, e), 1);
            push_prod(&mut terms, t.get(&[e, b, c, d]), &dx[a][e], -1);
            push_prod(&mut terms, t.get(&[a, e, c, d]), &dx[e][b], 1);
            push_prod(&mut terms, t.get(&[a, b, e, d]), &dx[e][c], 1);
            push_prod(&mut terms, t.get(&[a, b, c, e]), &dx[e][d], 1);
        }
        out.set(&idx, Expr::sum(terms));
    }
    out
}

/// `R^a_bcd;e X^e + R^a_ecd X^e_;b + R^a_bed X^e_;c + R^a_bce X^e_;d − R^e_bcd X^a_;e`.
pub fn lie_derivative_13_covariant(chart: &Chart, gamma: &TensorField, r: &TensorField, x: &[Expr]) -> TensorField {
    let n = chart.dim();
    let dr = covariant_derivative_13(chart, gamma, r);
    let dx = covariant_derivative_vector(chart, gamma, x);
    let mut out = TensorField::zeros(n, 1, 3);
    for (idx, _) in r.iter() {
        let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
        let mut terms = Vec::new();
        for e in 0..n {
            push_prod(&mut terms, dr.get(&[a, b, c, d, e]), &x[e], 1);
            push_prod(&mut terms, r.get(&[a, e, c, d]), dx.get(&[e, b]), 1);
            push_prod(&mut terms, r.get(&[a, b, e, d]), dx.get(&[e, c]), 1);
            push_prod(&mut terms, r.get(&[a, b, c, e]), dx.get(&[e, d]), 1);
            push_prod(&mut terms, r.get(&[e, b, c, d]), dx.get(&[a, e]), -1);
        }
        out.set(&idx, Expr::sum(terms));
    }
    out
}
