#![allow(dead_code)]

use planesym::geometry::PlaneSymmetricMetric;
use planesym::symexpr::{Domain, Var};

pub fn dom(t: (f64, f64), x: (f64, f64)) -> Domain {
    Domain::default().with_interval(Var::T, t.0, t.1).unwrap().with_interval(Var::X, x.0, x.1).unwrap()
}

pub fn case1() -> PlaneSymmetricMetric {
    PlaneSymmetricMetric::from_strs("t", "0", "2*t", &[], Domain::default()).unwrap()
}
pub fn case6() -> PlaneSymmetricMetric {
    PlaneSymmetricMetric::from_strs("0", "ln((t+x)^2)", "ln(t^2)", &[], dom((1.0, 2.0), (1.0, 2.0))).unwrap()
}
pub fn case14() -> PlaneSymmetricMetric {
    PlaneSymmetricMetric::from_strs("2*t + 2*x", "t + x", "0", &[], Domain::default()).unwrap()
}
pub fn case27() -> PlaneSymmetricMetric {
    PlaneSymmetricMetric::from_strs("0", "0", "ln(t^2)", &[], dom((1.0, 3.0), (-1.0, 1.0))).unwrap()
}
pub fn case28() -> PlaneSymmetricMetric {
    PlaneSymmetricMetric::from_strs("0", "0", "ln((t+2*x)^2)", &[], dom((1.0, 2.0), (1.0, 2.0))).unwrap()
}
pub fn flat() -> PlaneSymmetricMetric {
    PlaneSymmetricMetric::from_strs("0", "0", "0", &[], Domain::default()).unwrap()
}

pub fn fixtures() -> Vec<PlaneSymmetricMetric> {
    vec![case1(), case6(), case14(), case27(), case28(), flat()]
}

pub fn generic_rank4() -> PlaneSymmetricMetric {
    PlaneSymmetricMetric::from_strs("2*t + 2*x", "t - x", "t + 2*x", &[], Domain::default()).unwrap()
}
