use std::fmt;

use serde::{Serialize, Serializer};

use crate::symexpr::{parse_with_params, Expr, ParseError};

/// Candidate symmetry `X = X^a ∂_a` in coordinates `(t, x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField(pub [Expr; 4]);

impl VectorField {
    pub fn new(c: [Expr; 4]) -> VectorField {
        VectorField(c.map(|e| e.simplify()))
    }

    pub fn zero() -> VectorField {
        VectorField(std::array::from_fn(|_| Expr::zero()))
    }

    pub fn from_strs(c: [&str; 4], params: &[&str]) -> Result<VectorField, ParseError> {
        let mut out = VectorField::zero();
        for (slot, s) in out.0.iter_mut().zip(c) {
            *slot = parse_with_params(s, params)?.simplify();
        }
        Ok(out)
    }

    /// `∂_i`.
    pub fn coordinate(i: usize) -> VectorField {
        let mut v = VectorField::zero();
        v.0[i] = Expr::one();
        v
    }

    pub fn components(&self) -> &[Expr; 4] {
        &self.0
    }

    pub fn add(&self, o: &VectorField) -> VectorField {
        VectorField(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Expr::is_zero)
    }
}

impl Serialize for VectorField {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|e| e.to_string()))
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// `∂_y`, `∂_z` and `y ∂_z − z ∂_y`, Killing for every metric of the family.
pub fn killing_trio() -> [VectorField; 3] {
    let rot = VectorField::new([Expr::zero(), Expr::zero(), -Expr::z(), Expr::y()]);
    [VectorField::coordinate(2), VectorField::coordinate(3), rot]
}
