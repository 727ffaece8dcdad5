//! The table of non-static cases with Riemann matrix rank at most three.
//!
//! Each case is a list of requirements `(condition, vanishes)`, transcribed
//! as published. `C_u` and `B_u` in the source are read as `C_tt`, `B_tt`.

use serde::Serialize;

use super::conditions::{Condition, ConditionVector};
use crate::symexpr::TriState;

use Condition::*;

/// `(condition, true)` means the condition vanishes identically;
/// `(condition, false)` means it does not.
pub type Requirement = (Condition, bool);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseSpec {
    pub id: u8,
    pub rank: usize,
    #[serde(serialize_with = "ser_reqs")]
    pub requires: &'static [Requirement],
    pub note: Option<&'static str>,
}

fn ser_reqs<S: serde::Serializer>(r: &&'static [Requirement], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|(c, z)| format!("{} {} 0", c.label(), if *z { "=" } else { "!=" })))
}

const Z: bool = true;
const N: bool = false;

macro_rules! case {
    ($id:expr, $rank:expr, [$($c:ident $z:ident),* $(,)?]) => {
        CaseSpec { id: $id, rank: $rank, requires: &[$(($c, $z)),*], note: None }
    };
    ($id:expr, $rank:expr, [$($c:ident $z:ident),* $(,)?], $note:expr) => {
        CaseSpec { id: $id, rank: $rank, requires: &[$(($c, $z)),*], note: Some($note) }
    };
}

pub const CASES: [CaseSpec; 28] = [
    case!(1, 3, [Ax Z, Bt Z, Cx Z, At N, Bx N, Ct N, CtSq N]),
    case!(2, 3, [Ax Z, Bt Z, Bx Z, Cx Z, At N, Ct N, CtSq N]),
    case!(3, 3, [Ax Z, Bt Z, Cx Z, At N, Bx N, Ct N, CtSq Z]),
    case!(4, 3, [Ax Z, At Z, Bt Z, Cx Z, Bx N, Ct N, CtSq N]),
    case!(5, 3, [Ax Z, At Z, Bt Z, Bx Z, Cx Z, Ct N, CtSq N]),
    case!(6, 3, [Ax Z, At Z, Cx Z, Bt N, Bx N, Ct N, CtSq Z, BtSq Z]),
    case!(7, 3, [Ax Z, At Z, Bx Z, Cx Z, Bt N, Ct N, CtSq Z, BtSq Z]),
    case!(8, 3, [Ax Z, At Z, Bt Z, Bx N, Cx N, Ct N, CtSq Z, CtCx Z, CxSq N]),
    case!(9, 3, [Ax Z, At Z, Bt Z, Bx N, Cx N, Ct N, CtSq Z, CtCx Z, CxSq Z]),
    case!(10, 3, [Ax Z, At Z, Bt Z, Bx Z, Cx N, Ct N, CtSq Z, CtCx Z, CxSq N]),
    case!(11, 3, [Ax Z, Bt Z, Bx Z, At N, Cx N, Ct N, CxSq Z, CtCx Z, CtSq Z]),
    case!(12, 3, [Ax Z, Bt Z, Bx Z, At N, Cx N, Ct N, CtSq N, CtCx Z, CxSq Z]),
    case!(13, 3, [Ax Z, At Z, Bx Z, Bt Z, Cx N, Ct N, CtSq N, CtCx Z, CxSq Z]),
    case!(14, 1, [Ct Z, Cx Z, Ax N, At N, Bt N, Bx N, AxSqAB N, BtSqAB N]),
    case!(15, 1, [Ax Z, Ct Z, Cx Z, At N, Bt N, Bx N, BtSqAB N]),
    case!(16, 1, [Ax Z, Bx Z, Ct Z, Cx Z, At N, Bt N, BtSqAB N]),
    case!(
        17,
        1,
        [Ct Z, Cx Z, Ax N, At N, Bx N, Bt N, BtSqAB N, AxSqAB Z],
        "near-duplicate of case 19, which has A_x^2 + 2A_xx = 0 in place of A_x^2 + 2A_xx - A_x B_x = 0"
    ),
    case!(18, 1, [Ct Z, Cx Z, Ax N, At N, Bt N, Bx N, AxSqAB N, BtSqAB Z]),
    case!(
        19,
        1,
        [Ct Z, Cx Z, Ax N, At N, Bx N, Bt N, AxSq Z, BtSqAB N],
        "near-duplicate of case 17, which has A_x^2 + 2A_xx - A_x B_x = 0 in place of A_x^2 + 2A_xx = 0"
    ),
    case!(20, 1, [Ct Z, Cx Z, Ax N, At N, Bx N, Bt N, AxSqAB N, BtSq Z]),
    case!(21, 1, [At Z, Bx Z, Cx Z, Ct Z, Ax N, Bt N, AxSq N, BtSq N]),
    case!(22, 1, [At Z, Bx Z, Cx Z, Ct Z, Ax N, Bt N, AxSq Z, BtSq N]),
    case!(23, 1, [Ax Z, At Z, Bx Z, Ct Z, Cx Z, Bt N, BtSq N]),
    case!(24, 1, [Ax Z, Bx Z, Ct Z, Cx Z, At N, Bt N, BtSq Z]),
    case!(25, 1, [Ax Z, Bx N, Ct Z, Cx Z, At N, Bt N, BtSq Z]),
    case!(26, 1, [Ct Z, Cx Z, Ax N, At N, Bx N, Bt N, AxSq Z, BtSq Z]),
    case!(27, 1, [Ax Z, At Z, Bt Z, Bx Z, Cx Z, Ct N, CtSq Z]),
    case!(
        28,
        1,
        [Ax Z, At Z, Bt Z, Bx Z, Ct N, Cx N, CxSq Z, CxSq Z, CtCx Z],
        "C_x^2 + 2C_xx = 0 is listed twice; the second occurrence presumably reads C_t^2 + 2C_tt = 0"
    ),
];

/// Extra requirements under the presumed reading of a printed typo.
pub fn presumed_reading(id: u8) -> &'static [Requirement] {
    match id {
        28 => &[(CtSq, Z)],
        _ => &[],
    }
}

pub fn case_spec(id: u8) -> Option<&'static CaseSpec> {
    CASES.iter().find(|c| c.id == id)
}

pub(crate) fn state_meets(state: TriState, vanishes: bool) -> bool {
    match state {
        TriState::Zero => vanishes,
        TriState::NonZero => !vanishes,
        TriState::Undetermined => false,
    }
}

impl CaseSpec {
    /// Requirements not met by `v`.
    pub fn unmet(&self, v: &ConditionVector) -> Vec<Requirement> {
        let mut out: Vec<Requirement> =
            self.requires.iter().copied().filter(|(c, z)| !state_meets(v.get(*c), *z)).collect();
        out.dedup();
        out
    }

    /// Requirements that a rescaling of `x` (when `B = B(x)`) or of `t`
    /// (when `A = A(t)`) can change, so that `B_x ≠ 0` or `A_t ≠ 0` is a
    /// statement about the chart rather than the geometry.
    pub fn chart_dependent(&self, v: &ConditionVector) -> Vec<Requirement> {
        let x_free = !self.requires.iter().any(|(c, _)| c.x_composite());
        let t_free = !self.requires.iter().any(|(c, _)| c.t_composite());
        let mut out = Vec::new();
        if x_free && v.get(Bt) == TriState::Zero {
            out.push((Bx, N));
        }
        if t_free && v.get(Ax) == TriState::Zero {
            out.push((At, N));
        }
        out.retain(|r| self.requires.contains(r));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_complete_and_ordered() {
        assert!(CASES.iter().enumerate().all(|(i, c)| c.id as usize == i + 1));
        assert!(CASES[..13].iter().all(|c| c.rank == 3));
        assert!(CASES[13..].iter().all(|c| c.rank == 1));
        assert_eq!(case_spec(28).unwrap().requires.iter().filter(|r| r.0 == CxSq).count(), 2);
        assert!(case_spec(17).unwrap().note.is_some() && case_spec(19).unwrap().note.is_some());
    }
}
