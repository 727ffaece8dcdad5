use serde::Serialize;

use crate::collineations::{killing_trio, CollineationReport, VectorField};

/// Verdict a family member is expected to receive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Killing,
    /// CC and not affine.
    ProperCc,
    /// CC and affine, not Killing.
    AffineCc,
    NotCc,
}

impl Expected {
    pub fn agrees(self, r: &CollineationReport) -> bool {
        match self {
            Expected::Killing => r.is_killing && r.is_cc,
            Expected::ProperCc => r.is_proper_cc,
            Expected::AffineCc => r.is_cc && r.is_affine && !r.is_killing,
            Expected::NotCc => !r.is_cc,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Expected::Killing => "Killing",
            Expected::ProperCc => "proper CC",
            Expected::AffineCc => "affine CC",
            Expected::NotCc => "not CC",
        }
    }
}

/// Where an expectation comes from: asserted for the case, or worked out
/// independently of the case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Stated,
    Derived,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMember {
    pub field: VectorField,
    pub expected: Expected,
    pub basis: Basis,
    pub family: &'static str,
}

fn member(c: [&str; 4], expected: Expected, basis: Basis, family: &'static str) -> FamilyMember {
    FamilyMember { field: VectorField::from_strs(c, &[]).expect("family field parses"), expected, basis, family }
}

/// Polynomial members of the CC family claimed for `case_id`, then the
/// Killing trio. `None` for cases without a built-in family.
pub fn known_cc_family(case_id: u8) -> Option<Vec<FamilyMember>> {
    use Basis::*;
    use Expected::*;
    let mut out = match case_id {
        1 => {
            let f = "(0, f(x), 0, 0)";
            vec![
                member(["0", "x^2", "0", "0"], ProperCc, Stated, f),
                member(["0", "x^3 - x", "0", "0"], ProperCc, Stated, f),
                member(["0", "x", "0", "0"], AffineCc, Derived, f),
            ]
        }
        6 => vec![member(["0", "x", "0", "0"], NotCc, Derived, "Killing fields only")],
        14 => {
            let f = "(0, 0, f(y,z), g(y,z))";
            vec![
                member(["0", "0", "y^2 + z", "z - y^3"], ProperCc, Stated, f),
                member(["0", "0", "y*z", "exp(y)"], ProperCc, Stated, f),
                member(["0", "0", "y", "0"], AffineCc, Derived, f),
            ]
        }
        27 => {
            let f = "(f(t,x), g(t,x), 0, 0)";
            vec![
                member(["t^2", "t*x", "0", "0"], ProperCc, Stated, f),
                member(["x^2", "t", "0", "0"], ProperCc, Stated, f),
                member(["t^3", "0", "0", "0"], ProperCc, Stated, f),
            ]
        }
        28 => vec![member(["t^2", "0", "0", "0"], NotCc, Stated, "Killing fields only")],
        _ => return None,
    };
    out.extend(killing_trio().into_iter().map(|field| FamilyMember {
        field,
        expected: Expected::Killing,
        basis: Basis::Stated,
        family: "Killing trio",
    }));
    Some(out)
}
