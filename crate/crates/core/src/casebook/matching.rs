use serde::Serialize;

use super::conditions::{evaluate_conditions, ConditionVector};
use super::table::{presumed_reading, state_meets, CaseSpec, Requirement, CASES};
use crate::config::AnalysisConfig;
use crate::curvclass::{generic_rank, RankReport};
use crate::geometry::PlaneSymmetricMetric;
use crate::symexpr::TriState;

use super::conditions::Condition::{At, Bt, Ct};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseVerdict {
    Matched,
    Static,
    Unclassified,
}

/// A requirement as text, e.g. `B_x != 0`.
pub fn requirement_text((c, vanishes): Requirement) -> String {
    format!("{} {} 0", c.label(), if vanishes { "=" } else { "!=" })
}

/// A case matched only after dropping requirements a coordinate rescaling
/// can change.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RescaledMatch {
    pub case: u8,
    pub relaxed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseDiagnostic {
    pub case: u8,
    pub unmet: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseMatch {
    pub verdict: CaseVerdict,
    /// Every matching case, literal or up to rescaling, ascending.
    pub cases: Vec<u8>,
    /// Cases whose printed requirements all hold literally.
    pub printed: Vec<u8>,
    pub up_to_rescaling: Vec<RescaledMatch>,
    pub rank: RankReport,
    pub conditions: ConditionVector,
    /// Closest cases with the requirements they miss, when nothing matched
    /// literally.
    pub diagnostics: Vec<CaseDiagnostic>,
    pub notes: Vec<String>,
}

impl CaseMatch {
    pub fn includes(&self, case: u8) -> bool {
        self.cases.contains(&case)
    }
}

fn is_static(v: &ConditionVector) -> bool {
    [At, Bt, Ct].iter().all(|c| v.get(*c) == TriState::Zero)
}

pub fn match_conditions(v: &ConditionVector, rank: RankReport) -> CaseMatch {
    let mut printed = Vec::new();
    let mut up_to_rescaling = Vec::new();
    let mut unmet_all: Vec<(&CaseSpec, Vec<Requirement>)> = Vec::new();
    let mut notes = Vec::new();
    if !is_static(v) {
        for case in &CASES {
            let unmet = case.unmet(v);
            if unmet.is_empty() {
                printed.push(case.id);
            } else {
                let relaxable = case.chart_dependent(v);
                if unmet.iter().all(|r| relaxable.contains(r)) {
                    up_to_rescaling.push(RescaledMatch {
                        case: case.id,
                        relaxed: unmet.iter().copied().map(requirement_text).collect(),
                    });
                }
            }
            unmet_all.push((case, unmet));
        }
    }
    let mut cases: Vec<u8> = printed.iter().copied().chain(up_to_rescaling.iter().map(|r| r.case)).collect();
    cases.sort_unstable();
    for &id in &cases {
        let case = &CASES[id as usize - 1];
        if let Some(n) = case.note {
            notes.push(format!("case {id}: {n}"));
        }
        for r in presumed_reading(id) {
            let holds = case_requirement_holds(v, *r);
            notes.push(format!(
                "case {id}: presumed reading {} {}",
                requirement_text(*r),
                if holds { "also holds" } else { "fails" }
            ));
        }
        if case.rank != rank.generic_rank {
            notes.push(format!("case {id} lists rank {}, sampled generic rank is {}", case.rank, rank.generic_rank));
        }
    }
    let diagnostics = if printed.is_empty() {
        let best = unmet_all.iter().map(|(_, u)| u.len()).min().unwrap_or(0);
        unmet_all
            .iter()
            .filter(|(_, u)| u.len() == best)
            .map(|(c, u)| CaseDiagnostic { case: c.id, unmet: u.iter().copied().map(requirement_text).collect() })
            .collect()
    } else {
        Vec::new()
    };
    for e in v.undetermined() {
        notes.push(format!("{} undetermined: {} samples failed to evaluate", e.condition, e.failed_samples));
    }
    let verdict = if is_static(v) {
        CaseVerdict::Static
    } else if cases.is_empty() {
        CaseVerdict::Unclassified
    } else {
        CaseVerdict::Matched
    };
    CaseMatch { verdict, cases, printed, up_to_rescaling, rank, conditions: v.clone(), diagnostics, notes }
}

fn case_requirement_holds(v: &ConditionVector, (c, vanishes): Requirement) -> bool {
    state_meets(v.get(c), vanishes)
}

pub fn classify_case(m: &PlaneSymmetricMetric, cfg: &AnalysisConfig) -> CaseMatch {
    let v = evaluate_conditions(m, cfg);
    match_conditions(&v, generic_rank(m, m.domain(), cfg))
}
