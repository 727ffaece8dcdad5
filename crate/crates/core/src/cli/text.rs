//! Line-oriented `key: value` rendering of an analysis.

use std::fmt::Write;

use super::{Analysis, CheckOutcome, MetricSummary, PointAnalysis};
use crate::casebook::{Agreement, CaseMatch, CaseVerdict, Claim, VerificationReport, COORD_COVECTORS};
use crate::curvclass::{BivectorIndex, KernelBasis};
use crate::geometry::TensorVerdict;
use crate::symexpr::{Point, TriState};

fn num(v: f64) -> String {
    format!("{v:.6e}")
}

fn point(p: &Point) -> String {
    format!("({:.6}, {:.6}, {:.6}, {:.6})", p[0], p[1], p[2], p[3])
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn metric(s: &mut String, m: &MetricSummary) {
    let _ = writeln!(s, "source: {}", m.source);
    let _ = writeln!(s, "A = {}", m.a);
    let _ = writeln!(s, "B = {}", m.b);
    let _ = writeln!(s, "C = {}", m.c);
    for (k, v) in &m.params {
        let _ = writeln!(s, "param {k} = {v}");
    }
}

fn kernel(k: &KernelBasis) -> String {
    if k.dim == 0 {
        return "none".into();
    }
    match k.coordinate_axes(1e-8) {
        Some(ax) => join(ax.iter().map(|i| COORD_COVECTORS[*i])),
        None => join(k.covectors.iter().map(|c| format!("({:.6}, {:.6}, {:.6}, {:.6})", c[0], c[1], c[2], c[3]))),
    }
}

fn case_lines(s: &mut String, c: &CaseMatch) {
    match c.verdict {
        CaseVerdict::Matched => {
            let _ = writeln!(s, "case: {}", join(&c.cases));
            if !c.up_to_rescaling.is_empty() {
                let _ = writeln!(
                    s,
                    "case_printed: {}",
                    if c.printed.is_empty() { "none".into() } else { join(&c.printed) }
                );
                for r in &c.up_to_rescaling {
                    let _ = writeln!(s, "case_up_to_rescaling: {} (relaxed {})", r.case, r.relaxed.join(", "));
                }
            }
        }
        CaseVerdict::Static => {
            let _ = writeln!(s, "case: static");
        }
        CaseVerdict::Unclassified => {
            let _ = writeln!(s, "case: unclassified");
        }
    }
    for d in &c.diagnostics {
        let _ = writeln!(s, "nearest_case: {} (unmet: {})", d.case, d.unmet.join(", "));
    }
    for n in &c.notes {
        let _ = writeln!(s, "note: {n}");
    }
}

fn verdict(s: &mut String, key: &str, holds: bool, v: &TensorVerdict) {
    let _ = write!(s, "{key}: {holds}");
    if v.at.is_none() && v.state == TriState::Zero {
        s.push_str(" (identically zero)");
    }
    if let Some(at) = &v.at {
        let _ = write!(s, " (max residual {} at {})", num(v.max_abs), point(at));
    }
    if v.state == TriState::Undetermined {
        let _ = write!(s, " [undetermined at {} samples]", v.failed_samples);
    }
    s.push('\n');
}

fn check(s: &mut String, c: &CheckOutcome) {
    let r = &c.report;
    let _ = writeln!(s, "field: {}", r.field);
    verdict(s, "killing", r.is_killing, &r.killing);
    match r.homothety_constant {
        Some(k) => {
            let _ = writeln!(s, "homothety_constant: {k}");
        }
        None => {
            let _ = writeln!(s, "homothety_constant: none");
        }
    }
    verdict(s, "affine", r.is_affine, &r.affine);
    verdict(s, "cc", r.is_cc, &r.cc);
    let _ = writeln!(s, "proper_cc: {}", r.is_proper_cc);
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    if let (Some(e), Some(met)) = (&c.expected, c.expectation_met) {
        let _ = writeln!(s, "expected: {e} ({})", if met { "met" } else { "NOT met" });
    }
}

fn riemann(s: &mut String, p: &PointAnalysis) {
    let _ = writeln!(s, "point: {}", point(&p.point));
    if !p.in_domain {
        let _ = writeln!(s, "warning: point lies outside the metric's domain");
    }
    for (name, v) in p.alpha_components.iter().zip(p.alpha) {
        let _ = writeln!(s, "{name}: {}", num(v));
    }
    let _ = writeln!(s, "matrix: [{}]", BivectorIndex::LABELS.join(", "));
    for (label, row) in BivectorIndex::LABELS.iter().zip(&p.matrix) {
        let _ = writeln!(s, "  {label}: {}", join(row.iter().map(|v| format!("{v:>14.6e}"))));
    }
    let _ = writeln!(s, "singular_values: {}", join(p.singular_values.iter().map(|v| num(*v))));
    let _ = writeln!(s, "rank: {}", p.rank);
    let _ = writeln!(s, "class: {}", p.class);
    let _ = writeln!(s, "kernel_dim: {}", p.kernel.dim);
    let _ = writeln!(s, "kernel: {}", kernel(&p.kernel));
}

fn claim(s: &mut String, c: &Claim) {
    let tag = match c.status {
        Agreement::Agree => "AGREE",
        Agreement::Disagree => "DISAGREE",
    };
    let _ = write!(s, "{tag:<9} {}: {} (expected {}, observed {}", c.id, c.statement, c.expected, c.observed);
    if let Some(r) = c.residual {
        let _ = write!(s, "; residual {}", num(r));
    }
    if c.status == Agreement::Disagree {
        if let Some(p) = &c.probe {
            let _ = write!(s, " at {}", point(p));
        }
    }
    s.push_str(")\n");
}

fn verification(s: &mut String, r: &VerificationReport) {
    let cf = &r.closed_form;
    let _ = writeln!(
        s,
        "closed_form: {} metrics x {} points, adopted forms within {}: {}",
        cf.metrics,
        cf.points,
        num(cf.tolerance),
        cf.consistent
    );
    for c in &cf.corrections {
        let _ = writeln!(s, "correction: α{} ({}) printed {} adopted {}", c.alpha, c.component, c.printed, c.adopted);
    }
    for c in &cf.claims {
        claim(s, c);
    }
    for f in &r.fixtures {
        let k = f.kernel.as_ref().map_or("-".to_string(), kernel);
        let _ = writeln!(
            s,
            "fixture {}: rank {}, class {}, kernel {}, case {}",
            f.fixture,
            f.rank.generic_rank,
            f.class,
            k,
            if f.case_match.cases.is_empty() {
                format!("{:?}", f.case_match.verdict).to_lowercase()
            } else {
                join(&f.case_match.cases)
            }
        );
        for c in &f.claims {
            claim(s, c);
        }
        for a in &f.advisories {
            let _ = writeln!(s, "advisory: {a}");
        }
    }
    let _ = writeln!(s, "summary: {} AGREE, {} DISAGREE", r.tally.agree, r.tally.disagree);
}

pub fn render(a: &Analysis) -> String {
    let mut s = String::new();
    match a {
        Analysis::Classify { metric: m, classification: c, case_match, advisories } => {
            metric(&mut s, m);
            let _ = writeln!(s, "rank: {}", c.rank.generic_rank);
            let _ = writeln!(s, "rank_histogram: [{}]", join(c.rank.histogram));
            let _ = writeln!(s, "class: {}", c.class);
            let _ = writeln!(s, "kernel_dim: {}", c.kernel_dim);
            if let Some(k) = &c.kernel {
                let _ = writeln!(s, "kernel: {}", kernel(k));
            }
            case_lines(&mut s, case_match);
            for a in advisories {
                let _ = writeln!(s, "advisory: {a}");
            }
            for w in &c.warnings {
                let _ = writeln!(s, "warning: {w}");
            }
        }
        Analysis::Riemann { metric: m, at } => {
            metric(&mut s, m);
            riemann(&mut s, at);
        }
        Analysis::Check { metric: m, check: c } => {
            metric(&mut s, m);
            check(&mut s, c);
        }
        Analysis::Case { metric: m, case_match } => {
            metric(&mut s, m);
            for e in &case_match.conditions.entries {
                let state = match e.state {
                    TriState::Zero => "= 0",
                    TriState::NonZero => "!= 0",
                    TriState::Undetermined => "undetermined",
                };
                let _ = writeln!(s, "condition: {} {state}", e.condition);
            }
            let _ = writeln!(s, "rank: {}", case_match.rank.generic_rank);
            case_lines(&mut s, case_match);
        }
        Analysis::VerifyPaper { report } => verification(&mut s, report),
    }
    s
}
