//! Expression tree types.
//!
//! An [`Expr`] is an immutable, reference-counted tree. Nodes built through the
//! smart constructors in [`super::simplify`] (and therefore through the
//! operator impls below) are kept in canonical simplified form; raw trees
//! straight out of the parser may still contain `Div` and `Neg` nodes.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::Serialize;

/// Spacetime coordinate. The discriminant is the coordinate index
/// `(x^0, x^1, x^2, x^3) = (t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    T = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::T, Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "t" => Some(Var::T),
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            _ => None,
        }
    }

    fn mask(self) -> u8 {
        1 << (self as u8)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Ln,
    Sqrt,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            _ => return None,
        })
    }
}

/// Literal constant: exact rational where possible, IEEE double otherwise.
#[derive(Debug, Clone, Copy)]
pub enum Num {
    Rat(Rational64),
    Real(f64),
}

impl Num {
    pub fn int(n: i64) -> Num {
        Num::Rat(Rational64::from_integer(n))
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Num::Rat(r) => *r.numer() as f64 / *r.denom() as f64,
            Num::Real(v) => v,
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Num::Rat(r) => *r.numer() == 0,
            Num::Real(v) => v == 0.0,
        }
    }

    pub fn is_one(self) -> bool {
        match self {
            Num::Rat(r) => *r.numer() == 1 && *r.denom() == 1,
            Num::Real(v) => v == 1.0,
        }
    }

    pub fn is_negative(self) -> bool {
        match self {
            Num::Rat(r) => *r.numer() < 0,
            Num::Real(v) => v < 0.0,
        }
    }

    /// Integer value if this is an exact integer.
    pub fn as_integer(self) -> Option<i64> {
        match self {
            Num::Rat(r) if *r.denom() == 1 => Some(*r.numer()),
            _ => None,
        }
    }

    /// `None` for zero.
    pub fn recip(self) -> Option<Num> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Num::Rat(r) => Num::Rat(r.recip()),
            Num::Real(v) => Num::Real(1.0 / v),
        })
    }

    /// Integer power; `None` for `0^negative` or overflow into non-finite values.
    pub fn powi(self, n: i64) -> Option<Num> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        match self {
            Num::Rat(r) if n <= 64 => {
                let mut acc = Num::int(1);
                for _ in 0..n {
                    acc = acc * Num::Rat(r);
                }
                Some(acc)
            }
            _ => {
                let v = self.to_f64().powf(n as f64);
                v.is_finite().then_some(Num::Real(v))
            }
        }
    }

    fn total_cmp(&self, o: &Num) -> Ordering {
        match (self, o) {
            (Num::Rat(a), Num::Rat(b)) => a.cmp(b),
            (Num::Rat(_), Num::Real(_)) => Ordering::Less,
            (Num::Real(_), Num::Rat(_)) => Ordering::Greater,
            (Num::Real(a), Num::Real(b)) => a.total_cmp(b),
        }
    }
}

impl std::ops::Add for Num {
    type Output = Num;

    fn add(self, o: Num) -> Num {
        match (self, o) {
            (Num::Rat(a), Num::Rat(b)) => rat_op(a, b, |x, y| {
                let n = x.numer().checked_mul(*y.denom())?.checked_add(y.numer().checked_mul(*x.denom())?)?;
                let d = x.denom().checked_mul(*y.denom())?;
                Some(Rational64::new(n, d))
            })
            .unwrap_or(Num::Real(a_f(a) + a_f(b))),
            _ => Num::Real(self.to_f64() + o.to_f64()),
        }
    }
}

impl std::ops::Mul for Num {
    type Output = Num;

    fn mul(self, o: Num) -> Num {
        match (self, o) {
            (Num::Rat(a), Num::Rat(b)) => rat_op(a, b, |x, y| {
                let n = x.numer().checked_mul(*y.numer())?;
                let d = x.denom().checked_mul(*y.denom())?;
                Some(Rational64::new(n, d))
            })
            .unwrap_or(Num::Real(a_f(a) * a_f(b))),
            _ => Num::Real(self.to_f64() * o.to_f64()),
        }
    }
}

impl std::ops::Neg for Num {
    type Output = Num;

    fn neg(self) -> Num {
        match self {
            Num::Rat(r) => match r.numer().checked_neg() {
                Some(n) => Num::Rat(Rational64::new_raw(n, *r.denom())),
                None => Num::Real(-a_f(r)),
            },
            Num::Real(v) => Num::Real(-v),
        }
    }
}

fn a_f(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn rat_op(a: Rational64, b: Rational64, f: impl FnOnce(Rational64, Rational64) -> Option<Rational64>) -> Option<Num> {
    f(a, b).map(Num::Rat)
}

impl PartialEq for Num {
    fn eq(&self, o: &Num) -> bool {
        self.total_cmp(o) == Ordering::Equal
    }
}
impl Eq for Num {}

#[derive(Debug, Clone)]
pub enum Node {
    Const(Num),
    Var(Var),
    Param(Arc<str>),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Div(Expr, Expr),
    Neg(Expr),
    Pow(Expr, Expr),
    Func(Func, Expr),
}

impl Node {
    fn rank(&self) -> u8 {
        match self {
            Node::Const(_) => 0,
            Node::Var(_) => 1,
            Node::Param(_) => 2,
            Node::Func(..) => 3,
            Node::Pow(..) => 4,
            Node::Mul(_) => 5,
            Node::Add(_) => 6,
            Node::Div(..) => 7,
            Node::Neg(_) => 8,
        }
    }
}

#[derive(Debug)]
struct Inner {
    node: Node,
    vars: u8,
    size: u32,
}

/// Immutable symbolic expression.
#[derive(Clone)]
pub struct Expr(Arc<Inner>);

impl Expr {
    /// Wraps a node without any simplification.
    pub fn raw(node: Node) -> Expr {
        let (vars, size) = match &node {
            Node::Const(_) | Node::Param(_) => (0, 1),
            Node::Var(v) => (v.mask(), 1),
            Node::Add(cs) | Node::Mul(cs) => {
                cs.iter().fold((0, 1u32), |(m, s), c| (m | c.0.vars, s.saturating_add(c.0.size)))
            }
            Node::Div(a, b) | Node::Pow(a, b) => (a.0.vars | b.0.vars, 1 + a.0.size.saturating_add(b.0.size)),
            Node::Neg(a) | Node::Func(_, a) => (a.0.vars, 1 + a.0.size),
        };
        Expr(Arc::new(Inner { node, vars, size }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn num(n: Num) -> Expr {
        Expr::raw(Node::Const(n))
    }

    pub fn int(n: i64) -> Expr {
        Expr::num(Num::int(n))
    }

    pub fn rat(n: i64, d: i64) -> Expr {
        Expr::num(Num::Rat(Rational64::new(n, d)))
    }

    pub fn real(v: f64) -> Expr {
        Expr::num(Num::Real(v))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn var(v: Var) -> Expr {
        Expr::raw(Node::Var(v))
    }

    pub fn t() -> Expr {
        Expr::var(Var::T)
    }
    pub fn x() -> Expr {
        Expr::var(Var::X)
    }
    pub fn y() -> Expr {
        Expr::var(Var::Y)
    }
    pub fn z() -> Expr {
        Expr::var(Var::Z)
    }

    pub fn param(name: &str) -> Expr {
        Expr::raw(Node::Param(Arc::from(name)))
    }

    pub fn as_const(&self) -> Option<Num> {
        match self.node() {
            Node::Const(n) => Some(*n),
            _ => None,
        }
    }

    /// True for a literal zero constant.
    pub fn is_zero(&self) -> bool {
        self.as_const().is_some_and(Num::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_const().is_some_and(Num::is_one)
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.0.vars & v.mask() != 0
    }

    /// Coordinates that occur anywhere in the tree.
    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|v| self.depends_on(*v)).collect()
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        self.0.size as usize
    }

    /// Names of all parameters, sorted and deduplicated.
    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match self.node() {
            Node::Param(p) => out.push(p.to_string()),
            Node::Const(_) | Node::Var(_) => {}
            Node::Add(cs) | Node::Mul(cs) => cs.iter().for_each(|c| c.collect_params(out)),
            Node::Div(a, b) | Node::Pow(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Node::Neg(a) | Node::Func(_, a) => a.collect_params(out),
        }
    }

    pub fn ptr_eq(&self, o: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
    }
}

impl Ord for Expr {
    fn cmp(&self, o: &Expr) -> Ordering {
        if self.ptr_eq(o) {
            return Ordering::Equal;
        }
        let (a, b) = (self.node(), o.node());
        match a.rank().cmp(&b.rank()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match (a, b) {
            (Node::Const(x), Node::Const(y)) => x.total_cmp(y),
            (Node::Var(x), Node::Var(y)) => x.cmp(y),
            (Node::Param(x), Node::Param(y)) => x.cmp(y),
            (Node::Func(f, x), Node::Func(g, y)) => f.cmp(g).then_with(|| x.cmp(y)),
            (Node::Pow(b1, e1), Node::Pow(b2, e2)) | (Node::Div(b1, e1), Node::Div(b2, e2)) => {
                b1.cmp(b2).then_with(|| e1.cmp(e2))
            }
            (Node::Add(xs), Node::Add(ys)) | (Node::Mul(xs), Node::Mul(ys)) => {
                for (x, y) in xs.iter().zip(ys) {
                    match x.cmp(y) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                xs.len().cmp(&ys.len())
            }
            (Node::Neg(x), Node::Neg(y)) => x.cmp(y),
            _ => unreachable!("rank equality implies same variant"),
        }
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, o: &Expr) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl PartialEq for Expr {
    fn eq(&self, o: &Expr) -> bool {
        self.0.vars == o.0.vars && self.0.size == o.0.size && self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Expr {}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

// Precedence levels used by the printer.
const P_ADD: u8 = 1;
const P_MUL: u8 = 2;
const P_NEG: u8 = 3;
const P_POW: u8 = 4;
const P_ATOM: u8 = 5;

fn prec(e: &Expr) -> u8 {
    match e.node() {
        Node::Add(_) => P_ADD,
        Node::Mul(_) | Node::Div(..) => P_MUL,
        Node::Neg(_) => P_NEG,
        Node::Pow(..) => P_POW,
        // write_num parenthesises everything that is not a bare literal
        Node::Const(_) => P_ATOM,
        Node::Var(_) | Node::Param(_) | Node::Func(..) => P_ATOM,
    }
}

fn write_num(f: &mut fmt::Formatter<'_>, n: Num) -> fmt::Result {
    match n {
        Num::Rat(r) if *r.denom() == 1 => {
            if *r.numer() < 0 {
                write!(f, "(-{})", r.numer().unsigned_abs())
            } else {
                write!(f, "{}", r.numer())
            }
        }
        Num::Rat(r) => {
            if *r.numer() < 0 {
                write!(f, "(-{}/{})", r.numer().unsigned_abs(), r.denom())
            } else {
                write!(f, "({}/{})", r.numer(), r.denom())
            }
        }
        Num::Real(v) => {
            if v < 0.0 {
                write!(f, "(-{:?})", -v)
            } else if v.fract() == 0.0 && v.abs() < 1e15 {
                write!(f, "{v:?}")
            } else {
                write!(f, "({v:?})")
            }
        }
    }
}

/// Writes `e`, parenthesised when its precedence is below `min`.
fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// `c·u₁·u₂…` with a negative leading constant, as `(|c|, [u₁, u₂, …])`.
fn negative_coefficient(e: &Expr) -> Option<(Num, &[Expr])> {
    let Node::Mul(cs) = e.node() else { return None };
    let (first, rest) = cs.split_first()?;
    match first.node() {
        Node::Const(Num::Rat(r)) if *r.numer() < 0 && !rest.is_empty() => Some((Num::Rat(-*r), rest)),
        Node::Const(Num::Real(v)) if *v < 0.0 && !rest.is_empty() => Some((Num::Real(-*v), rest)),
        _ => None,
    }
}

/// Writes `k·u₁·u₂…` for a positive `k`, omitting a unit coefficient.
fn write_scaled(f: &mut fmt::Formatter<'_>, k: Num, rest: &[Expr]) -> fmt::Result {
    let unit = matches!(k, Num::Rat(r) if r == Rational64::from_integer(1));
    if !unit {
        write_num(f, k)?;
    }
    for (i, c) in rest.iter().enumerate() {
        if i > 0 || !unit {
            f.write_str("*")?;
        }
        write_child(f, c, P_MUL + 1)?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    /// Prints in the input grammar. Parsing the output of a raw tree yields a
    /// tree with identical evaluation order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(n) => write_num(f, *n),
            Node::Var(v) => f.write_str(v.name()),
            Node::Param(p) => f.write_str(p),
            Node::Func(func, a) => write!(f, "{}({a})", func.name()),
            Node::Add(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i == 0 {
                        write_child(f, c, P_ADD + 1)?;
                    } else if let Node::Neg(u) = c.node() {
                        f.write_str(" - ")?;
                        write_child(f, u, P_MUL)?;
                    } else if let Some((k, rest)) = negative_coefficient(c) {
                        f.write_str(" - ")?;
                        write_scaled(f, k, rest)?;
                    } else {
                        f.write_str(" + ")?;
                        write_child(f, c, P_ADD + 1)?;
                    }
                }
                Ok(())
            }
            Node::Mul(cs) => {
                if let Some((k, rest)) = negative_coefficient(self) {
                    f.write_str("-")?;
                    return write_scaled(f, k, rest);
                }
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write_child(f, c, P_MUL + 1)?;
                }
                Ok(())
            }
            Node::Div(a, b) => {
                write_child(f, a, P_MUL + 1)?;
                f.write_str("/")?;
                write_child(f, b, P_MUL + 1)
            }
            Node::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, P_POW)
            }
            Node::Pow(b, e) => {
                write_child(f, b, P_ATOM)?;
                f.write_str("^")?;
                write_child(f, e, P_ATOM)
            }
        }
    }
}
