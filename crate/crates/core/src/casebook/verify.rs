use serde::Serialize;

use super::families::{known_cc_family, Basis, Expected};
use super::fixtures::{paper_fixture, FixtureId};
use super::matching::{classify_case, CaseMatch};
use crate::collineations::{
    check_vector, gram_rank, induced_2d, induced_3d, is_2d_cc, is_homothetic_3d, CollineationReport, VectorField,
};
use crate::config::AnalysisConfig;
use crate::curvclass::{
    classify, coordinate_covector, is_covariantly_constant, CovariantConstancy, CurvatureClass, KernelBasis, RankReport,
};
use crate::geometry::{audit_closed_forms, random_metric, riemann_closed_form, AlphaAudit, Correction, CORRECTIONS};
use crate::symexpr::{evaluate, Expr, Point};

/// Relative tolerance of the closed-form audit.
pub const CLOSED_FORM_TOL: f64 = 1e-9;
pub const CLOSED_FORM_POINTS: usize = 100;
pub const CLOSED_FORM_RANDOM_METRICS: u64 = 20;

/// Above this generic rank no proper CC exists.
pub const PROPER_CC_MAX_RANK: usize = 3;

pub const COORD_COVECTORS: [&str; 4] = ["dt", "dx", "dy", "dz"];

/// Advisory attached to any metric whose generic rank exceeds three.
pub fn rank_advisory(rank: usize) -> Option<String> {
    (rank > PROPER_CC_MAX_RANK).then(|| {
        format!("no proper CC possible: the Riemann matrix has rank {rank} > 3, and there exists no proper CCS")
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Agreement {
    #[serde(rename = "AGREE")]
    Agree,
    #[serde(rename = "DISAGREE")]
    Disagree,
}

impl Agreement {
    pub fn of(ok: bool) -> Agreement {
        if ok {
            Agreement::Agree
        } else {
            Agreement::Disagree
        }
    }
}

/// One checked assertion with the evidence behind the verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub expected: String,
    pub observed: String,
    pub status: Agreement,
    pub basis: Basis,
    pub residual: Option<f64>,
    pub probe: Option<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelConstancy {
    pub covector: &'static str,
    pub constant: bool,
    pub residual: f64,
    pub probe: Option<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldVerdict {
    pub family: &'static str,
    pub expected: Expected,
    pub basis: Basis,
    pub status: Agreement,
    pub report: CollineationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureReport {
    pub fixture: FixtureId,
    /// `A, B, C`.
    pub functions: [String; 3],
    pub rank: RankReport,
    pub class: CurvatureClass,
    pub kernel_dim: usize,
    pub kernel: Option<KernelBasis>,
    pub kernel_constancy: Vec<KernelConstancy>,
    pub case_match: CaseMatch,
    pub fields: Vec<FieldVerdict>,
    pub claims: Vec<Claim>,
    pub advisories: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormSection {
    pub metrics: usize,
    pub points: usize,
    pub tolerance: f64,
    pub audits: Vec<AlphaAudit>,
    pub corrections: Vec<Correction>,
    /// Every adopted form within tolerance.
    pub consistent: bool,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub agree: usize,
    pub disagree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub closed_form: ClosedFormSection,
    pub fixtures: Vec<FixtureReport>,
    pub tally: Tally,
}

impl VerificationReport {
    pub fn claims(&self) -> impl Iterator<Item = &Claim> {
        self.closed_form.claims.iter().chain(self.fixtures.iter().flat_map(|f| f.claims.iter()))
    }

    pub fn all_agree(&self) -> bool {
        self.tally.disagree == 0 && self.closed_form.consistent
    }

    pub fn fixture(&self, id: FixtureId) -> Option<&FixtureReport> {
        self.fixtures.iter().find(|f| f.fixture == id)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims().find(|c| c.id == id)
    }
}

/// Collects claims for one fixture; evidence defaults to the first sample
/// point so every entry carries a probe.
struct Claims {
    prefix: String,
    default_probe: Option<Point>,
    out: Vec<Claim>,
}

impl Claims {
    fn push(
        &mut self,
        key: &str,
        statement: impl Into<String>,
        expected: impl Into<String>,
        observed: impl Into<String>,
        ok: bool,
    ) -> &mut Claim {
        self.out.push(Claim {
            id: format!("{}.{key}", self.prefix),
            statement: statement.into(),
            expected: expected.into(),
            observed: observed.into(),
            status: Agreement::of(ok),
            basis: Basis::Stated,
            residual: None,
            probe: self.default_probe,
        });
        self.out.last_mut().expect("just pushed")
    }
}

trait Evidence {
    fn evidence(&mut self, residual: f64, probe: Option<Point>) -> &mut Self;
    fn derived(&mut self) -> &mut Self;
}

impl Evidence for Claim {
    fn evidence(&mut self, residual: f64, probe: Option<Point>) -> &mut Self {
        self.residual = Some(residual);
        if probe.is_some() {
            self.probe = probe;
        }
        self
    }

    fn derived(&mut self) -> &mut Self {
        self.basis = Basis::Derived;
        self
    }
}

fn kernel_names(axes: &Option<Vec<usize>>) -> String {
    match axes {
        Some(ax) => format!("{{{}}}", ax.iter().map(|i| COORD_COVECTORS[*i]).collect::<Vec<_>>().join(", ")),
        None => "not coordinate-aligned".into(),
    }
}

fn vf(c: [&str; 4]) -> VectorField {
    VectorField::from_strs(c, &[]).expect("built-in field parses")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn verify_fixture(id: FixtureId, cfg: &AnalysisConfig) -> FixtureReport {
    let m = paper_fixture(id);
    let cls = classify(&m, m.domain(), cfg);
    let rank = cls.rank.generic_rank;
    let axes = cls.kernel.as_ref().and_then(|k| k.coordinate_axes(1e-8));
    let constancy: Vec<(usize, CovariantConstancy)> =
        axes.iter().flatten().map(|&i| (i, is_covariantly_constant(&m, &coordinate_covector(i), cfg))).collect();
    let kernel_constancy = constancy
        .iter()
        .map(|(i, c)| KernelConstancy {
            covector: COORD_COVECTORS[*i],
            constant: c.constant,
            residual: c.residual.max_abs,
            probe: c.residual.at,
        })
        .collect();
    let case_match = classify_case(&m, cfg);
    let fields: Vec<FieldVerdict> = id
        .case_id()
        .filter(|_| id != FixtureId::HomothetyContradiction)
        .and_then(known_cc_family)
        .unwrap_or_default()
        .into_iter()
        .map(|fm| {
            let report = check_vector(&m, &fm.field, cfg);
            FieldVerdict {
                family: fm.family,
                expected: fm.expected,
                basis: fm.basis,
                status: Agreement::of(fm.expected.agrees(&report)),
                report,
            }
        })
        .collect();

    let mut c = Claims {
        prefix: id.name().to_lowercase(),
        default_probe: m.domain().sample(1, cfg.seed).first().copied(),
        out: Vec::new(),
    };

    let rank_claim = |c: &mut Claims, want: usize| {
        c.push(
            "rank",
            format!("generic rank of the Riemann matrix is {want}"),
            want.to_string(),
            rank.to_string(),
            rank == want,
        );
    };
    let class_claim = |c: &mut Claims, want: CurvatureClass| {
        c.push("class", format!("curvature class {want}"), want.to_string(), cls.class.to_string(), cls.class == want);
    };
    let kernel_claim = |c: &mut Claims, want: &[usize]| {
        let ok = axes.as_deref() == Some(want);
        c.push("kernel", "kernel of the curvature map", kernel_names(&Some(want.to_vec())), kernel_names(&axes), ok)
            .evidence(cls.kernel.as_ref().map_or(f64::NAN, |k| k.residual), None);
    };
    let constancy_claim = |c: &mut Claims, i: usize, want: bool| {
        let name = COORD_COVECTORS[i];
        match constancy.iter().find(|(j, _)| *j == i) {
            Some((_, cc)) => {
                c.push(
                    &format!("{name}_constant"),
                    format!("{name} is {}covariantly constant", if want { "" } else { "not " }),
                    yes(want),
                    yes(cc.constant),
                    cc.constant == want,
                )
                .evidence(cc.residual.max_abs, cc.residual.at);
            }
            None => {
                c.push(
                    &format!("{name}_constant"),
                    format!("{name} lies in the kernel"),
                    "in kernel",
                    "not in kernel",
                    false,
                );
            }
        }
    };
    let case_claim = |c: &mut Claims, k: u8| {
        let how = if case_match.printed.contains(&k) {
            "printed conditions hold".to_string()
        } else if let Some(r) = case_match.up_to_rescaling.iter().find(|r| r.case == k) {
            format!("holds up to coordinate rescaling ({} relaxed)", r.relaxed.join(", "))
        } else {
            format!("matched {:?}", case_match.cases)
        };
        c.push(
            "case",
            format!("metric satisfies the conditions of case {k}"),
            format!("case {k}"),
            how,
            case_match.includes(k),
        );
    };
    let gram_claim = |c: &mut Claims, make: &dyn Fn(&str) -> [String; 4], key: &str, basis: [&str; 5]| {
        let fs: Vec<VectorField> = basis
            .iter()
            .map(|p| {
                let s = make(p);
                vf([s[0].as_str(), s[1].as_str(), s[2].as_str(), s[3].as_str()])
            })
            .collect();
        let reports: Vec<CollineationReport> = fs.iter().map(|f| check_vector(&m, f, cfg)).collect();
        let worst = reports.iter().map(|r| r.cc.max_abs).fold(0.0, f64::max);
        let all_cc = reports.iter().all(|r| r.is_cc);
        let g = gram_rank(&fs, m.domain(), m.params(), cfg.samples, cfg.seed, 1e-12);
        c.push(
            key,
            format!("CC family is infinite dimensional: {} independent members", basis.len()),
            format!("{} independent CCs", basis.len()),
            format!("Gram rank {g}, all CC: {}", yes(all_cc)),
            all_cc && g == basis.len(),
        )
        .evidence(worst, None)
        .derived();
    };
    let s = |v: &str| v.to_string();

    match id {
        FixtureId::Case1 => {
            rank_claim(&mut c, 3);
            class_claim(&mut c, CurvatureClass::C);
            kernel_claim(&mut c, &[1]);
            constancy_claim(&mut c, 1, true);
            case_claim(&mut c, 1);
            gram_claim(
                &mut c,
                &|f| [s("0"), s(f), s("0"), s("0")],
                "family_dimension",
                ["1", "x", "x^2", "x^3", "x^4"],
            );
        }
        FixtureId::Case6 => {
            rank_claim(&mut c, 3);
            class_claim(&mut c, CurvatureClass::C);
            kernel_claim(&mut c, &[0]);
            constancy_claim(&mut c, 0, false);
            case_claim(&mut c, 6);
        }
        FixtureId::Case14 => {
            rank_claim(&mut c, 1);
            class_claim(&mut c, CurvatureClass::D);
            kernel_claim(&mut c, &[2, 3]);
            constancy_claim(&mut c, 2, true);
            constancy_claim(&mut c, 3, true);
            case_claim(&mut c, 14);
            let a1 = riemann_closed_form(&m).eval(&[0.0; 4], m.params()).map(|a| a[0]).unwrap_or(f64::NAN);
            c.push("alpha1_origin", "R_0101 at t = x = 0", "0.75", a1.to_string(), (a1 - 0.75).abs() <= 1e-12)
                .evidence((a1 - 0.75).abs(), Some([0.0; 4]))
                .derived();
            match induced_2d(&m, cfg) {
                Ok(g2) => {
                    let g00 = evaluate(g2.g_tensor.get(&[0, 0]), &[0.0; 4], &g2.params).unwrap_or(f64::NAN);
                    c.push(
                        "induced_2d_g00",
                        "G_00 of the induced 2D geometry at the origin",
                        "0.75",
                        g00.to_string(),
                        (g00 - 0.75).abs() <= 1e-12,
                    )
                    .evidence((g00 - 0.75).abs(), Some([0.0; 4]))
                    .derived();
                    let v = is_2d_cc(&g2, &[Expr::one(), Expr::zero()], cfg);
                    c.push(
                        "induced_2d_trivial",
                        "the 2D CC equations admit only the trivial solution; X' = (1, 0) fails",
                        "fails",
                        if v.holds { "holds" } else { "fails" },
                        !v.holds,
                    )
                    .evidence(v.generic.max_abs, v.generic.at);
                }
                Err(e) => {
                    c.push("induced_2d", "induced 2D geometry exists", "exists", e.to_string(), false);
                }
            }
        }
        FixtureId::Case27 => {
            rank_claim(&mut c, 1);
            class_claim(&mut c, CurvatureClass::D);
            kernel_claim(&mut c, &[0, 1]);
            constancy_claim(&mut c, 0, false);
            constancy_claim(&mut c, 1, true);
            let n = constancy.iter().filter(|(_, cc)| cc.constant).count();
            c.push("one_constant", "exactly one kernel covector is covariantly constant", "1", n.to_string(), n == 1);
            case_claim(&mut c, 27);
            let p = [2.0, 0.0, 0.0, 0.0];
            let r = evaluate(m.riemann_down().get(&[2, 3, 2, 3]), &p, m.params()).unwrap_or(f64::NAN);
            c.push("r2323", "R_2323 at t = 2", "4", r.to_string(), (r - 4.0).abs() <= 1e-12)
                .evidence((r - 4.0).abs(), Some(p))
                .derived();
            gram_claim(
                &mut c,
                &|f| [s(f), s("0"), s("0"), s("0")],
                "family_dimension",
                ["1", "t", "t^2", "t^3", "t^4"],
            );
        }
        FixtureId::Case28 => {
            rank_claim(&mut c, 1);
            class_claim(&mut c, CurvatureClass::D);
            kernel_claim(&mut c, &[0, 1]);
            constancy_claim(&mut c, 0, false);
            constancy_claim(&mut c, 1, false);
            case_claim(&mut c, 28);
        }
        FixtureId::HomothetyContradiction => {
            let x3 = [Expr::t(), Expr::zero(), Expr::zero()];
            match induced_3d(&m, cfg) {
                Ok(g3) => {
                    let h = is_homothetic_3d(&g3, &x3, cfg);
                    let observed = h.c.map_or("not homothetic".to_string(), |v| format!("c = {v}"));
                    let ok = h.c.is_some_and(|v| (v - 2.0).abs() <= 1e-12);
                    let res = h.generic.as_ref().map_or(f64::NAN, |g| g.max_abs);
                    c.push(
                        "homothety_constant",
                        "t d/dt is a proper homothety of the induced 3D geometry",
                        "c = 2",
                        observed,
                        ok,
                    )
                    .evidence(res, h.generic.as_ref().and_then(|g| g.at))
                    .derived();
                }
                Err(e) => {
                    c.push("homothety_constant", "induced 3D geometry exists", "exists", e.to_string(), false);
                }
            }
            c.push(
                "rank_drops",
                "a proper homothety on the 3D factor reduces the rank to one, contradicting rank three",
                "1",
                rank.to_string(),
                rank == 1,
            );
        }
        FixtureId::GenericRank4 => {
            c.push("rank_exceeds_three", "generic rank exceeds three", "> 3", rank.to_string(), rank > 3).derived();
            let candidates =
                [vf(["0", "x^2", "0", "0"]), vf(["t^2", "t*x", "0", "0"]), vf(["0", "0", "y^2 + z", "z - y^3"])];
            let proper: Vec<String> =
                candidates.iter().filter(|x| check_vector(&m, x, cfg).is_proper_cc).map(|x| format!("{x}")).collect();
            c.push(
                "no_proper_cc",
                "no proper CC exists when the rank exceeds three",
                "none of the probe fields is a proper CC",
                if proper.is_empty() { "none".to_string() } else { proper.join("; ") },
                proper.is_empty(),
            );
        }
        FixtureId::Flat => {
            rank_claim(&mut c, 0);
            class_claim(&mut c, CurvatureClass::O);
        }
    }

    for f in &fields {
        let key = format!("field[{}]", f.report.field);
        let observed = observed_status(&f.report);
        let v = if f.expected == Expected::Killing { &f.report.killing } else { &f.report.cc };
        let claim = c
            .push(
                &key,
                format!("{} is {} ({})", f.report.field, f.expected.label(), f.family),
                f.expected.label(),
                observed,
                f.status == Agreement::Agree,
            )
            .evidence(v.max_abs, v.at);
        if f.basis == Basis::Derived {
            claim.derived();
        }
    }

    let advisories = rank_advisory(rank).into_iter().collect();
    let mut warnings = cls.warnings.clone();
    warnings.extend(case_match.notes.iter().cloned());
    FixtureReport {
        fixture: id,
        functions: [m.a().to_string(), m.b().to_string(), m.c().to_string()],
        rank: cls.rank.clone(),
        class: cls.class,
        kernel_dim: cls.kernel_dim,
        kernel: cls.kernel.clone(),
        kernel_constancy,
        case_match,
        fields,
        claims: c.out,
        advisories,
        warnings,
    }
}

fn observed_status(r: &CollineationReport) -> String {
    if r.is_killing {
        "Killing".into()
    } else if r.is_proper_cc {
        "proper CC".into()
    } else if r.is_cc && r.is_affine {
        "affine CC".into()
    } else if r.is_cc {
        "CC".into()
    } else {
        "not CC".into()
    }
}

pub fn verify_closed_forms(cfg: &AnalysisConfig) -> ClosedFormSection {
    let metrics: Vec<_> = [FixtureId::Case1, FixtureId::Case6, FixtureId::Case14, FixtureId::Case27, FixtureId::Case28]
        .into_iter()
        .map(paper_fixture)
        .chain((0..CLOSED_FORM_RANDOM_METRICS).map(|k| random_metric(cfg.seed.wrapping_add(k))))
        .collect();
    let audits = audit_closed_forms(&metrics, CLOSED_FORM_POINTS, cfg.seed, CLOSED_FORM_TOL);
    let consistent = audits.iter().all(|a| a.adopted_max_rel_error <= CLOSED_FORM_TOL);
    let claims = audits
        .iter()
        .map(|a| Claim {
            id: format!("closed_form.alpha{}", a.alpha),
            statement: format!("closed form of α{} ({}) as printed", a.alpha, a.component),
            expected: "agrees with the generic computation".into(),
            observed: if a.printed_agrees {
                "agrees".into()
            } else {
                format!("disagrees; matching readings: {}", a.matching.join(", "))
            },
            status: Agreement::of(a.printed_agrees),
            basis: Basis::Stated,
            residual: Some(a.printed_max_rel_error),
            probe: a.printed_worst_at,
        })
        .collect();
    ClosedFormSection {
        metrics: metrics.len(),
        points: CLOSED_FORM_POINTS,
        tolerance: CLOSED_FORM_TOL,
        audits,
        corrections: CORRECTIONS.to_vec(),
        consistent,
        claims,
    }
}

pub fn verify_paper(cfg: &AnalysisConfig) -> VerificationReport {
    let closed_form = verify_closed_forms(cfg);
    let fixtures: Vec<FixtureReport> = FixtureId::ALL.iter().map(|id| verify_fixture(*id, cfg)).collect();
    let mut tally = Tally { agree: 0, disagree: 0 };
    for c in closed_form.claims.iter().chain(fixtures.iter().flat_map(|f| f.claims.iter())) {
        match c.status {
            Agreement::Agree => tally.agree += 1,
            Agreement::Disagree => tally.disagree += 1,
        }
    }
    VerificationReport { closed_form, fixtures, tally }
}
