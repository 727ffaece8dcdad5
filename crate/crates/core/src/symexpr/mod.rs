//! Symbolic expressions in `t, x, y, z` and named parameters.

mod diff;
mod eval;
mod expr;
mod parse;
mod simplify;
mod zero;

pub use diff::differentiate;
pub use eval::{evaluate, Bindings, EvalError, Point};
pub use expr::{Expr, Func, Node, Num, Var};
pub use parse::{parse, parse_with_params, ParseError};
pub use simplify::simplify;
pub use zero::{
    is_identically_zero, zero_test, zero_test_points, Domain, DomainError, TriState, ZeroTestConfig, ZeroVerdict,
};
