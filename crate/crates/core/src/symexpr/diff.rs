//! Symbolic partial derivatives.

use super::expr::{Expr, Func, Node, Var};
use super::simplify::{add, div, mul, neg, pow};

/// `∂e/∂v`, canonical. Parameters and constants differentiate to zero.
pub fn differentiate(e: &Expr, v: Var) -> Expr {
    if !e.depends_on(v) {
        return Expr::zero();
    }
    match e.node() {
        Node::Const(_) | Node::Param(_) => Expr::zero(),
        Node::Var(w) => {
            if *w == v {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Node::Add(ts) => add(ts.iter().map(|t| differentiate(t, v)).collect()),
        Node::Mul(fs) => {
            let mut terms = Vec::with_capacity(fs.len());
            for (i, f) in fs.iter().enumerate() {
                let df = differentiate(f, v);
                if df.is_zero() {
                    continue;
                }
                let mut factors: Vec<Expr> = Vec::with_capacity(fs.len());
                factors.extend(fs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()));
                factors.push(df);
                terms.push(mul(factors));
            }
            add(terms)
        }
        Node::Div(a, b) => {
            let (da, db) = (differentiate(a, v), differentiate(b, v));
            let a_c = super::simplify::simplify(a);
            let b_c = super::simplify::simplify(b);
            div(&add(vec![mul(vec![da, b_c.clone()]), neg(&mul(vec![a_c, db]))]), &pow(&b_c, &Expr::int(2)))
        }
        Node::Neg(a) => neg(&differentiate(a, v)),
        Node::Pow(b, x) => {
            let b_c = super::simplify::simplify(b);
            let x_c = super::simplify::simplify(x);
            let db = differentiate(b, v);
            if !x.depends_on(v) {
                // x * b^(x-1) * b'
                mul(vec![x_c.clone(), pow(&b_c, &add(vec![x_c, Expr::int(-1)])), db])
            } else {
                // b^x = exp(x ln b)
                let dx = differentiate(x, v);
                let inner = add(vec![mul(vec![dx, b_c.ln()]), mul(vec![x_c.clone(), db, pow(&b_c, &Expr::int(-1))])]);
                mul(vec![pow(&b_c, &x_c), inner])
            }
        }
        Node::Func(f, a) => {
            let da = differentiate(a, v);
            if da.is_zero() {
                return Expr::zero();
            }
            let a = super::simplify::simplify(a);
            let outer = match f {
                Func::Exp => a.exp(),
                Func::Ln => pow(&a, &Expr::int(-1)),
                Func::Sqrt => mul(vec![Expr::rat(1, 2), pow(&a.sqrt(), &Expr::int(-1))]),
                Func::Sin => a.cos(),
                Func::Cos => neg(&a.sin()),
                Func::Sinh => a.cosh(),
                Func::Cosh => a.sinh(),
            };
            mul(vec![outer, da])
        }
    }
}
