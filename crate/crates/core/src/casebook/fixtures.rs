use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::geometry::PlaneSymmetricMetric;
use crate::symexpr::{Domain, Var};

/// Built-in metrics representing the analysed cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureId {
    Case1,
    Case6,
    Case14,
    Case27,
    Case28,
    HomothetyContradiction,
    Flat,
    GenericRank4,
}

impl FixtureId {
    pub const ALL: [FixtureId; 8] = [
        FixtureId::Case1,
        FixtureId::Case6,
        FixtureId::Case14,
        FixtureId::Case27,
        FixtureId::Case28,
        FixtureId::HomothetyContradiction,
        FixtureId::Flat,
        FixtureId::GenericRank4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FixtureId::Case1 => "Case1",
            FixtureId::Case6 => "Case6",
            FixtureId::Case14 => "Case14",
            FixtureId::Case27 => "Case27",
            FixtureId::Case28 => "Case28",
            FixtureId::HomothetyContradiction => "HomothetyContradiction",
            FixtureId::Flat => "Flat",
            FixtureId::GenericRank4 => "GenericRank4",
        }
    }

    /// The table case the fixture represents.
    pub fn case_id(self) -> Option<u8> {
        match self {
            FixtureId::Case1 => Some(1),
            FixtureId::Case6 => Some(6),
            FixtureId::Case14 => Some(14),
            FixtureId::Case27 | FixtureId::HomothetyContradiction => Some(27),
            FixtureId::Case28 => Some(28),
            FixtureId::Flat | FixtureId::GenericRank4 => None,
        }
    }

    /// `(A, B, C)` source text.
    pub fn functions(self) -> [&'static str; 3] {
        match self {
            FixtureId::Case1 => ["t", "0", "2*t"],
            FixtureId::Case6 => ["0", "ln((t + x)^2)", "ln(t^2)"],
            FixtureId::Case14 => ["2*t + 2*x", "t + x", "0"],
            FixtureId::Case27 | FixtureId::HomothetyContradiction => ["0", "0", "ln(t^2)"],
            FixtureId::Case28 => ["0", "0", "ln((t + 2*x)^2)"],
            FixtureId::Flat => ["0", "0", "0"],
            FixtureId::GenericRank4 => ["2*t + 2*x", "t - x", "t + 2*x"],
        }
    }

    pub fn domain(self) -> Domain {
        let with = |t: (f64, f64), x: (f64, f64)| {
            Domain::default()
                .with_interval(Var::T, t.0, t.1)
                .and_then(|d| d.with_interval(Var::X, x.0, x.1))
                .expect("fixture intervals are valid")
        };
        match self {
            FixtureId::Case6 | FixtureId::Case28 => with((1.0, 2.0), (1.0, 2.0)),
            FixtureId::Case27 | FixtureId::HomothetyContradiction => with((1.0, 3.0), (-1.0, 1.0)),
            _ => Domain::default(),
        }
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for FixtureId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for FixtureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FixtureId::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown fixture `{s}`"))
    }
}

pub fn paper_fixture(id: FixtureId) -> PlaneSymmetricMetric {
    let [a, b, c] = id.functions();
    PlaneSymmetricMetric::from_strs(a, b, c, &[], id.domain()).expect("built-in fixture is valid")
}
