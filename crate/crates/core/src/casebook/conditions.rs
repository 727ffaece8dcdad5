use std::fmt;

use serde::{Serialize, Serializer};

use crate::config::AnalysisConfig;
use crate::geometry::PlaneSymmetricMetric;
use crate::symexpr::{zero_test_points, Expr, Point, TriState, Var};

/// Primitive and composite vanishing conditions on `A, B, C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    At,
    Ax,
    Bt,
    Bx,
    Ct,
    Cx,
    /// `C_t² + 2C_tt`
    CtSq,
    /// `C_x² + 2C_xx`
    CxSq,
    /// `C_t C_x + 2C_tx`
    CtCx,
    /// `B_t² + 2B_tt`
    BtSq,
    /// `B_t² + 2B_tt − A_t B_t`
    BtSqAB,
    /// `A_x² + 2A_xx`
    AxSq,
    /// `A_x² + 2A_xx − A_x B_x`
    AxSqAB,
}

impl Condition {
    pub const ALL: [Condition; 13] = [
        Condition::At,
        Condition::Ax,
        Condition::Bt,
        Condition::Bx,
        Condition::Ct,
        Condition::Cx,
        Condition::CtSq,
        Condition::CxSq,
        Condition::CtCx,
        Condition::BtSq,
        Condition::BtSqAB,
        Condition::AxSq,
        Condition::AxSqAB,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Condition::At => "A_t",
            Condition::Ax => "A_x",
            Condition::Bt => "B_t",
            Condition::Bx => "B_x",
            Condition::Ct => "C_t",
            Condition::Cx => "C_x",
            Condition::CtSq => "C_t^2 + 2C_tt",
            Condition::CxSq => "C_x^2 + 2C_xx",
            Condition::CtCx => "C_t C_x + 2C_tx",
            Condition::BtSq => "B_t^2 + 2B_tt",
            Condition::BtSqAB => "B_t^2 + 2B_tt - A_t B_t",
            Condition::AxSq => "A_x^2 + 2A_xx",
            Condition::AxSqAB => "A_x^2 + 2A_xx - A_x B_x",
        }
    }

    /// The expression whose identical vanishing the condition asserts.
    pub fn expr(self, m: &PlaneSymmetricMetric) -> Expr {
        let (t, x) = (Var::T, Var::X);
        let (a, b, c) = (m.a(), m.b(), m.c());
        let sq = |f: &Expr, v: Var| f.d(v).powi(2) + 2 * f.d(v).d(v);
        match self {
            Condition::At => a.d(t),
            Condition::Ax => a.d(x),
            Condition::Bt => b.d(t),
            Condition::Bx => b.d(x),
            Condition::Ct => c.d(t),
            Condition::Cx => c.d(x),
            Condition::CtSq => sq(c, t),
            Condition::CxSq => sq(c, x),
            Condition::CtCx => c.d(t) * c.d(x) + 2 * c.d(t).d(x),
            Condition::BtSq => sq(b, t),
            Condition::BtSqAB => sq(b, t) - a.d(t) * b.d(t),
            Condition::AxSq => sq(a, x),
            Condition::AxSqAB => sq(a, x) - a.d(x) * b.d(x),
        }
    }

    /// Whether the condition involves second `x` derivatives, which are not
    /// preserved by a rescaling of `x`.
    pub fn x_composite(self) -> bool {
        matches!(self, Condition::CxSq | Condition::CtCx | Condition::AxSq | Condition::AxSqAB)
    }

    /// Whether the condition involves second `t` derivatives, which are not
    /// preserved by a rescaling of `t`.
    pub fn t_composite(self) -> bool {
        matches!(self, Condition::CtSq | Condition::CtCx | Condition::BtSq | Condition::BtSqAB)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionEntry {
    pub condition: Condition,
    pub state: TriState,
    pub max_abs: f64,
    pub at: Option<Point>,
    pub failed_samples: usize,
}

/// Tri-state value of every condition, from one seeded sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionVector {
    pub seed: u64,
    pub entries: Vec<ConditionEntry>,
}

impl ConditionVector {
    pub fn get(&self, c: Condition) -> TriState {
        self.entries.iter().find(|e| e.condition == c).map_or(TriState::Undetermined, |e| e.state)
    }

    pub fn undetermined(&self) -> Vec<&ConditionEntry> {
        self.entries.iter().filter(|e| e.state == TriState::Undetermined).collect()
    }
}

pub fn evaluate_conditions(m: &PlaneSymmetricMetric, cfg: &AnalysisConfig) -> ConditionVector {
    let zc = cfg.zero();
    let points = m.domain().sample(zc.samples, zc.seed);
    let entries = Condition::ALL
        .iter()
        .map(|&condition| {
            let v = zero_test_points(&condition.expr(m).simplify(), &points, m.params(), &zc);
            ConditionEntry { condition, state: v.state, max_abs: v.max_abs, at: v.at, failed_samples: v.failed_samples }
        })
        .collect();
    ConditionVector { seed: zc.seed, entries }
}
