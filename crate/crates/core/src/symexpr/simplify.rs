//! Canonicalising constructors.
//!
//! Every constructor here assumes its operands are already canonical and
//! returns a canonical tree:
//!
//! * no `Div` or `Neg` nodes (`a/b` is `a*b^-1`, `-a` is `-1*a`);
//! * sums and products are flat, have at least two operands, and carry at most
//!   one numeric operand, which comes first;
//! * sum terms are collected by their non-numeric part, product factors by
//!   base (exponents add), `exp` factors merge into a single `exp`;
//! * `u^0`, `u^1`, `0*u`, `1*u`, `u+0` never survive.

use std::ops;

use super::expr::{Expr, Func, Node, Num, Var};

/// Value-preserving rewrite of an arbitrary tree into canonical form.
pub fn simplify(e: &Expr) -> Expr {
    match e.node() {
        Node::Const(_) | Node::Var(_) | Node::Param(_) => e.clone(),
        Node::Add(cs) => add(cs.iter().map(simplify).collect()),
        Node::Mul(cs) => mul(cs.iter().map(simplify).collect()),
        Node::Div(a, b) => mul(vec![simplify(a), pow(&simplify(b), &Expr::int(-1))]),
        Node::Neg(a) => neg(&simplify(a)),
        Node::Pow(b, x) => pow(&simplify(b), &simplify(x)),
        Node::Func(f, a) => func(*f, &simplify(a)),
    }
}

/// Splits a canonical term into numeric coefficient and remainder.
fn split_coeff(e: &Expr) -> (Num, Option<Expr>) {
    match e.node() {
        Node::Const(n) => (*n, None),
        Node::Mul(fs) => match fs[0].as_const() {
            Some(c) if fs.len() == 2 => (c, Some(fs[1].clone())),
            Some(c) => (c, Some(Expr::raw(Node::Mul(fs[1..].to_vec())))),
            None => (Num::int(1), Some(e.clone())),
        },
        _ => (Num::int(1), Some(e.clone())),
    }
}

/// `c * rest` where `rest` is canonical and non-numeric.
fn scale(c: Num, rest: Expr) -> Expr {
    if c.is_zero() {
        return Expr::zero();
    }
    if c.is_one() {
        return rest;
    }
    match rest.node() {
        Node::Mul(fs) => {
            let mut v = Vec::with_capacity(fs.len() + 1);
            v.push(Expr::num(c));
            v.extend(fs.iter().cloned());
            Expr::raw(Node::Mul(v))
        }
        Node::Add(ts) => add(ts.iter().map(|t| mul(vec![Expr::num(c), t.clone()])).collect()),
        _ => Expr::raw(Node::Mul(vec![Expr::num(c), rest])),
    }
}

pub fn add(terms: Vec<Expr>) -> Expr {
    let mut constant = Num::int(0);
    let mut parts: Vec<(Expr, Num)> = Vec::with_capacity(terms.len());
    let push = |t: &Expr, constant: &mut Num, parts: &mut Vec<(Expr, Num)>| {
        let (c, rest) = split_coeff(t);
        match rest {
            None => *constant = *constant + c,
            Some(r) => parts.push((r, c)),
        }
    };
    for t in &terms {
        match t.node() {
            Node::Add(inner) => inner.iter().for_each(|u| push(u, &mut constant, &mut parts)),
            _ => push(t, &mut constant, &mut parts),
        }
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<Expr> = Vec::with_capacity(parts.len() + 1);
    if !constant.is_zero() {
        out.push(Expr::num(constant));
    }
    let mut i = 0;
    while i < parts.len() {
        let mut c = parts[i].1;
        let mut j = i + 1;
        while j < parts.len() && parts[j].0 == parts[i].0 {
            c = c + parts[j].1;
            j += 1;
        }
        if !c.is_zero() {
            let term = scale(c, parts[i].0.clone());
            // scaling a sum may fan out into several terms
            match term.node() {
                Node::Add(ts) => out.extend(ts.iter().cloned()),
                _ => out.push(term),
            }
        }
        i = j;
    }
    if out.iter().any(|t| matches!(t.node(), Node::Add(_))) || needs_resort(&out) {
        return add(out);
    }
    match out.len() {
        0 => Expr::zero(),
        1 => out.pop().unwrap(),
        _ => Expr::raw(Node::Add(out)),
    }
}

/// True when the assembled terms are not strictly increasing by remainder.
fn needs_resort(out: &[Expr]) -> bool {
    let keys: Vec<_> = out.iter().filter_map(|t| split_coeff(t).1).collect();
    keys.windows(2).any(|w| w[0] >= w[1]) || out.iter().skip(1).any(|t| t.as_const().is_some())
}

/// Splits a canonical factor into base and exponent.
fn split_pow(e: &Expr) -> (Expr, Expr) {
    match e.node() {
        Node::Pow(b, x) => (b.clone(), x.clone()),
        _ => (e.clone(), Expr::one()),
    }
}

pub fn mul(factors: Vec<Expr>) -> Expr {
    let mut coeff = Num::int(1);
    let mut bases: Vec<(Expr, Expr)> = Vec::with_capacity(factors.len());
    let mut exp_args: Vec<Expr> = Vec::new();
    let push = |f: &Expr, coeff: &mut Num, bases: &mut Vec<(Expr, Expr)>, ea: &mut Vec<Expr>| match f.node() {
        Node::Const(n) => *coeff = *coeff * *n,
        Node::Func(Func::Exp, a) => ea.push(a.clone()),
        _ => bases.push(split_pow(f)),
    };
    for f in &factors {
        match f.node() {
            Node::Mul(inner) => inner.iter().for_each(|u| push(u, &mut coeff, &mut bases, &mut exp_args)),
            _ => push(f, &mut coeff, &mut bases, &mut exp_args),
        }
    }
    if coeff.is_zero() {
        return Expr::zero();
    }
    bases.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<Expr> = Vec::with_capacity(bases.len() + 1);
    let mut i = 0;
    let mut reflatten = false;
    while i < bases.len() {
        let mut exps = vec![bases[i].1.clone()];
        let mut j = i + 1;
        while j < bases.len() && bases[j].0 == bases[i].0 {
            exps.push(bases[j].1.clone());
            j += 1;
        }
        let exponent = if exps.len() == 1 { exps.pop().unwrap() } else { add(exps) };
        let f = pow(&bases[i].0, &exponent);
        match f.node() {
            Node::Const(n) => coeff = coeff * *n,
            Node::Mul(_) | Node::Func(Func::Exp, _) => {
                reflatten = true;
                out.push(f);
            }
            _ => out.push(f),
        }
        i = j;
    }
    if !exp_args.is_empty() {
        let arg = if exp_args.len() == 1 { exp_args.pop().unwrap() } else { add(exp_args) };
        let f = func(Func::Exp, &arg);
        match f.node() {
            Node::Const(n) => coeff = coeff * *n,
            _ => out.push(f),
        }
    }
    if reflatten {
        out.push(Expr::num(coeff));
        return mul(out);
    }
    if coeff.is_zero() {
        return Expr::zero();
    }
    out.sort();
    match out.len() {
        0 => Expr::num(coeff),
        1 if coeff.is_one() => out.pop().unwrap(),
        _ => {
            let rest = if out.len() == 1 { out.pop().unwrap() } else { Expr::raw(Node::Mul(out)) };
            scale(coeff, rest)
        }
    }
}

pub fn neg(e: &Expr) -> Expr {
    mul(vec![Expr::int(-1), e.clone()])
}

pub fn sub(a: &Expr, b: &Expr) -> Expr {
    add(vec![a.clone(), neg(b)])
}

pub fn div(a: &Expr, b: &Expr) -> Expr {
    mul(vec![a.clone(), pow(b, &Expr::int(-1))])
}

pub fn pow(base: &Expr, exponent: &Expr) -> Expr {
    if exponent.is_zero() {
        return Expr::one();
    }
    if exponent.is_one() {
        return base.clone();
    }
    if base.is_one() {
        return Expr::one();
    }
    let n = exponent.as_const().and_then(Num::as_integer);
    if let (Some(b), Some(k)) = (base.as_const(), exponent.as_const()) {
        if let Some(k) = k.as_integer() {
            if let Some(v) = b.powi(k) {
                return Expr::num(v);
            }
        } else if let (Num::Real(bv), kv) = (b, k.to_f64()) {
            let v = bv.powf(kv);
            if v.is_finite() {
                return Expr::num(Num::Real(v));
            }
        }
    }
    if base.is_zero() && exponent.as_const().is_some_and(|k| !k.is_negative()) {
        return Expr::zero();
    }
    if let Some(k) = n {
        match base.node() {
            Node::Mul(fs) => {
                return mul(fs.iter().map(|f| pow(f, exponent)).collect());
            }
            Node::Pow(b, e) => return pow(b, &mul(vec![e.clone(), Expr::int(k)])),
            Node::Func(Func::Exp, a) => return func(Func::Exp, &mul(vec![Expr::int(k), a.clone()])),
            Node::Func(Func::Sqrt, a) if k % 2 == 0 => return pow(a, &Expr::int(k / 2)),
            _ => {}
        }
    }
    Expr::raw(Node::Pow(base.clone(), exponent.clone()))
}

pub fn func(f: Func, a: &Expr) -> Expr {
    if let Some(c) = a.as_const() {
        match f {
            Func::Exp | Func::Cos | Func::Cosh if c.is_zero() => return Expr::one(),
            Func::Sin | Func::Sinh | Func::Sqrt if c.is_zero() => return Expr::zero(),
            Func::Ln if c.is_one() => return Expr::zero(),
            Func::Sqrt if c.is_one() => return Expr::one(),
            _ => {}
        }
    }
    match (f, a.node()) {
        (Func::Ln, Node::Func(Func::Exp, u)) => u.clone(),
        _ => Expr::raw(Node::Func(f, a.clone())),
    }
}

impl Expr {
    pub fn simplify(&self) -> Expr {
        simplify(self)
    }

    pub fn pow(&self, e: &Expr) -> Expr {
        pow(self, e)
    }

    pub fn powi(&self, k: i64) -> Expr {
        pow(self, &Expr::int(k))
    }

    pub fn exp(&self) -> Expr {
        func(Func::Exp, self)
    }

    pub fn ln(&self) -> Expr {
        func(Func::Ln, self)
    }

    pub fn sqrt(&self) -> Expr {
        func(Func::Sqrt, self)
    }

    pub fn sin(&self) -> Expr {
        func(Func::Sin, self)
    }

    pub fn cos(&self) -> Expr {
        func(Func::Cos, self)
    }

    pub fn sinh(&self) -> Expr {
        func(Func::Sinh, self)
    }

    pub fn cosh(&self) -> Expr {
        func(Func::Cosh, self)
    }

    /// Partial derivative, canonical.
    pub fn d(&self, v: Var) -> Expr {
        super::diff::differentiate(self, v)
    }

    pub fn sum<I: IntoIterator<Item = Expr>>(terms: I) -> Expr {
        add(terms.into_iter().collect())
    }

    pub fn product<I: IntoIterator<Item = Expr>>(factors: I) -> Expr {
        mul(factors.into_iter().collect())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                $f(&self, &o)
            }
        }
        impl ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                $f(&self, o)
            }
        }
        impl ops::$tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                $f(self, &o)
            }
        }
        impl ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                $f(self, o)
            }
        }
        impl ops::$tr<i64> for Expr {
            type Output = Expr;
            fn $m(self, o: i64) -> Expr {
                $f(&self, &Expr::int(o))
            }
        }
        impl ops::$tr<i64> for &Expr {
            type Output = Expr;
            fn $m(self, o: i64) -> Expr {
                $f(self, &Expr::int(o))
            }
        }
        impl ops::$tr<Expr> for i64 {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                $f(&Expr::int(self), &o)
            }
        }
        impl ops::$tr<&Expr> for i64 {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                $f(&Expr::int(self), o)
            }
        }
    };
}

binop!(Add, add, |a: &Expr, b: &Expr| add(vec![a.clone(), b.clone()]));
binop!(Sub, sub, sub);
binop!(Mul, mul, |a: &Expr, b: &Expr| mul(vec![a.clone(), b.clone()]));
binop!(Div, div, div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        neg(&self)
    }
}

impl ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        neg(self)
    }
}
