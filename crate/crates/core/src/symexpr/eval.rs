//! Numeric evaluation.

use std::collections::BTreeMap;

use thiserror::Error;

use super::expr::{Expr, Func, Node};

/// A point `(t, x, y, z)`.
pub type Point = [f64; 4];

/// Parameter name to value.
pub type Bindings = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{func} of {arg} is outside its domain")]
    Domain { func: &'static str, arg: f64 },
    #[error("parameter `{0}` is not bound")]
    UnboundParameter(String),
    #[error("non-finite intermediate value")]
    NonFinite,
}

fn finite(v: f64) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite)
    }
}

fn pow_value(b: f64, x: f64) -> Result<f64, EvalError> {
    if b == 0.0 && x < 0.0 {
        return Err(EvalError::DivisionByZero);
    }
    if x.fract() == 0.0 && x.abs() < 2_147_483_648.0 {
        return finite(b.powi(x as i32));
    }
    if b < 0.0 {
        return Err(EvalError::Domain { func: "pow", arg: b });
    }
    finite(b.powf(x))
}

fn func_value(f: Func, a: f64) -> Result<f64, EvalError> {
    let v = match f {
        Func::Exp => a.exp(),
        Func::Ln => {
            if a <= 0.0 {
                return Err(EvalError::Domain { func: "ln", arg: a });
            }
            a.ln()
        }
        Func::Sqrt => {
            if a < 0.0 {
                return Err(EvalError::Domain { func: "sqrt", arg: a });
            }
            a.sqrt()
        }
        Func::Sin => a.sin(),
        Func::Cos => a.cos(),
        Func::Sinh => a.sinh(),
        Func::Cosh => a.cosh(),
    };
    finite(v)
}

/// Evaluates `e` at `p`. Domain violations are errors, never NaN.
pub fn evaluate(e: &Expr, p: &Point, params: &Bindings) -> Result<f64, EvalError> {
    match e.node() {
        Node::Const(n) => Ok(n.to_f64()),
        Node::Var(v) => Ok(p[v.index()]),
        Node::Param(name) => {
            params.get(name.as_ref()).copied().ok_or_else(|| EvalError::UnboundParameter(name.to_string()))
        }
        Node::Add(ts) => {
            let mut acc = 0.0;
            for (i, t) in ts.iter().enumerate() {
                let v = evaluate(t, p, params)?;
                acc = if i == 0 { v } else { acc + v };
            }
            finite(acc)
        }
        Node::Mul(fs) => {
            let mut acc = 1.0;
            for (i, f) in fs.iter().enumerate() {
                let v = evaluate(f, p, params)?;
                acc = if i == 0 { v } else { acc * v };
            }
            finite(acc)
        }
        Node::Div(a, b) => {
            let den = evaluate(b, p, params)?;
            if den == 0.0 {
                return Err(EvalError::DivisionByZero);
            }
            finite(evaluate(a, p, params)? / den)
        }
        Node::Neg(a) => Ok(-evaluate(a, p, params)?),
        Node::Pow(b, x) => pow_value(evaluate(b, p, params)?, evaluate(x, p, params)?),
        Node::Func(f, a) => func_value(*f, evaluate(a, p, params)?),
    }
}

/// Value together with a round-off scale: the magnitude the result would have
/// if no cancellation happened anywhere in the tree.
pub(crate) fn evaluate_with_scale(e: &Expr, p: &Point, params: &Bindings) -> Result<(f64, f64), EvalError> {
    match e.node() {
        Node::Const(_) | Node::Var(_) | Node::Param(_) => {
            let v = evaluate(e, p, params)?;
            Ok((v, v.abs()))
        }
        Node::Add(ts) => {
            let (mut acc, mut mag) = (0.0, 0.0);
            for t in ts {
                let (v, m) = evaluate_with_scale(t, p, params)?;
                acc += v;
                mag += m;
            }
            Ok((finite(acc)?, mag))
        }
        Node::Mul(fs) => {
            let (mut acc, mut mag) = (1.0, 1.0);
            for f in fs {
                let (v, m) = evaluate_with_scale(f, p, params)?;
                acc *= v;
                mag *= m;
            }
            Ok((finite(acc)?, mag))
        }
        Node::Div(a, b) => {
            let (va, ma) = evaluate_with_scale(a, p, params)?;
            let (vb, mb) = evaluate_with_scale(b, p, params)?;
            if vb == 0.0 {
                return Err(EvalError::DivisionByZero);
            }
            let v = finite(va / vb)?;
            Ok((v, ma / vb.abs() + v.abs() * mb / vb.abs()))
        }
        Node::Neg(a) => {
            let (v, m) = evaluate_with_scale(a, p, params)?;
            Ok((-v, m))
        }
        Node::Pow(b, x) => {
            let (vb, mb) = evaluate_with_scale(b, p, params)?;
            let (vx, mx) = evaluate_with_scale(x, p, params)?;
            let v = pow_value(vb, vx)?;
            // relative perturbation of the base, amplified by the exponent
            let rel_b = if vb != 0.0 { mb / vb.abs() } else { 1.0 };
            let log_b = if vb > 0.0 { vb.ln().abs() } else { 0.0 };
            Ok((v, v.abs() * (1.0 + vx.abs() * rel_b + mx * log_b)))
        }
        Node::Func(f, a) => {
            let (va, ma) = evaluate_with_scale(a, p, params)?;
            let v = func_value(*f, va)?;
            let m = match f {
                Func::Exp => v.abs() * (1.0 + ma),
                Func::Ln => v.abs() + ma / va.abs(),
                Func::Sqrt => v.abs() + if va > 0.0 { ma / (2.0 * v) } else { ma.sqrt() },
                Func::Sin | Func::Cos => 1.0 + ma,
                Func::Sinh | Func::Cosh => va.cosh() * (1.0 + ma),
            };
            Ok((v, m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse;

    fn at(text: &str, p: Point) -> Result<f64, EvalError> {
        evaluate(&parse(text).unwrap(), &p, &Bindings::new())
    }

    #[test]
    fn basic_values() {
        assert_eq!(at("(t+2*x)^2", [1.0, 1.0, 0.0, 0.0]), Ok(9.0));
        assert_eq!(at("exp(2*t)", [0.0; 4]), Ok(1.0));
        assert_eq!(at("ln((t+1)^2)", [0.0; 4]), Ok(0.0));
    }

    #[test]
    fn domain_errors_are_reported() {
        assert_eq!(at("1/t", [0.0; 4]), Err(EvalError::DivisionByZero));
        assert!(matches!(at("ln(t)", [-1.0, 0.0, 0.0, 0.0]), Err(EvalError::Domain { func: "ln", .. })));
        assert!(matches!(at("sqrt(t)", [-1.0, 0.0, 0.0, 0.0]), Err(EvalError::Domain { .. })));
        assert_eq!(at("t^-1", [0.0; 4]), Err(EvalError::DivisionByZero));
        assert!(matches!(at("t^(1/2)", [-4.0, 0.0, 0.0, 0.0]), Err(EvalError::Domain { .. })));
    }

    #[test]
    fn unbound_parameter() {
        let e = crate::symexpr::parse_with_params("a*t", &["a"]).unwrap();
        assert_eq!(evaluate(&e, &[1.0; 4], &Bindings::new()), Err(EvalError::UnboundParameter("a".into())));
    }
}
