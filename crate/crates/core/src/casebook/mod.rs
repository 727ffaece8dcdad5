//! The case table, the built-in fixtures and known CC families, and the
//! verification harness that checks every stated claim against them.

mod conditions;
mod families;
mod fixtures;
mod matching;
mod table;
mod verify;

pub use conditions::{evaluate_conditions, Condition, ConditionEntry, ConditionVector};
pub use families::{known_cc_family, Basis, Expected, FamilyMember};
pub use fixtures::{paper_fixture, FixtureId};
pub use matching::{
    classify_case, match_conditions, requirement_text, CaseDiagnostic, CaseMatch, CaseVerdict, RescaledMatch,
};
pub use table::{case_spec, presumed_reading, CaseSpec, Requirement, CASES};
pub use verify::{
    rank_advisory, verify_closed_forms, verify_fixture, verify_paper, Agreement, Claim, ClosedFormSection,
    FieldVerdict, FixtureReport, KernelConstancy, Tally, VerificationReport, CLOSED_FORM_POINTS,
    CLOSED_FORM_RANDOM_METRICS, CLOSED_FORM_TOL, COORD_COVECTORS, PROPER_CC_MAX_RANK,
};
