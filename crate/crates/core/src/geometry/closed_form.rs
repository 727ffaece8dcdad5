//! Closed-form Riemann components of the plane symmetric metric.
//!
//! The five independent lowered components are
//! `α1 = R_0101`, `α2 = R_0202 = R_0303`, `α3 = R_1212 = R_1313`,
//! `α4 = R_2323`, `α5 = R_0212 = R_0313`.
//! Every formula is audited against the generic computation; two of the
//! published forms needed correction, recorded in [`CORRECTIONS`].

use serde::Serialize;

use super::metric::PlaneSymmetricMetric;
use crate::symexpr::{evaluate, Bindings, EvalError, Expr, Point, Var};

/// Index of the lowered Riemann component represented by each α.
pub const ALPHA_SLOTS: [[usize; 4]; 5] = [[0, 1, 0, 1], [0, 2, 0, 2], [1, 2, 1, 2], [2, 3, 2, 3], [0, 2, 1, 2]];

pub const ALPHA_COMPONENTS: [&str; 5] = ["R_0101", "R_0202", "R_1212", "R_2323", "R_0212"];

#[derive(Debug, Clone, PartialEq)]
pub struct RiemannComponents {
    pub alpha: [Expr; 5],
}

impl RiemannComponents {
    pub fn eval(&self, p: &Point, params: &Bindings) -> Result<[f64; 5], EvalError> {
        let mut out = [0.0; 5];
        for (o, a) in out.iter_mut().zip(&self.alpha) {
            *o = evaluate(a, p, params)?;
        }
        Ok(out)
    }
}

/// A published α formula that disagrees with the generic computation, with
/// the form adopted instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Correction {
    pub alpha: usize,
    pub component: &'static str,
    pub printed: &'static str,
    pub adopted: &'static str,
}

pub const CORRECTIONS: [Correction; 2] = [
    Correction {
        alpha: 4,
        component: "R_2323",
        printed: "-1/4 e^(A+B+2C) [e^A C_x^2 - e^B C_t^2]",
        adopted: "-1/4 e^(2C-A-B) [e^A C_x^2 - e^B C_t^2]",
    },
    Correction {
        alpha: 5,
        component: "R_0212",
        printed: "1/4 e^C [(C_t C_x + 2 C_tx - A_x C_t) - B_t C_x]",
        adopted: "-1/4 e^C [(C_t C_x + 2 C_tx - A_x C_t) - B_t C_x]",
    },
];

/// First and second partial derivatives of `A, B, C`.
struct Partials {
    a: Expr,
    b: Expr,
    c: Expr,
    at: Expr,
    ax: Expr,
    axx: Expr,
    bt: Expr,
    bx: Expr,
    btt: Expr,
    ct: Expr,
    cx: Expr,
    ctt: Expr,
    cxx: Expr,
    ctx: Expr,
}

impl Partials {
    fn of(m: &PlaneSymmetricMetric) -> Partials {
        let (t, x) = (Var::T, Var::X);
        let (a, b, c) = (m.a().clone(), m.b().clone(), m.c().clone());
        Partials {
            at: a.d(t),
            ax: a.d(x),
            axx: a.d(x).d(x),
            bt: b.d(t),
            bx: b.d(x),
            btt: b.d(t).d(t),
            ct: c.d(t),
            cx: c.d(x),
            ctt: c.d(t).d(t),
            cxx: c.d(x).d(x),
            ctx: c.d(t).d(x),
            a,
            b,
            c,
        }
    }

    fn alpha1(&self) -> Expr {
        let p = self;
        let xs = &p.ax * &p.ax + 2 * &p.axx - &p.ax * &p.bx;
        let ts = &p.bt * &p.bt + 2 * &p.btt - &p.at * &p.bt;
        Expr::rat(1, 4) * (p.a.exp() * xs - p.b.exp() * ts)
    }

    fn alpha2(&self) -> Expr {
        let p = self;
        let inner = p.b.exp() * (&p.ct * &p.ct + 2 * &p.ctt - &p.at * &p.ct) - p.a.exp() * &p.ax * &p.cx;
        Expr::rat(-1, 4) * (&p.c - &p.b).exp() * inner
    }

    fn alpha3(&self) -> Expr {
        let p = self;
        let inner = p.a.exp() * (&p.cx * &p.cx + 2 * &p.cxx - &p.bx * &p.cx) - p.b.exp() * &p.bt * &p.ct;
        Expr::rat(-1, 4) * (&p.c - &p.a).exp() * inner
    }

    fn alpha4_bracket(&self) -> Expr {
        let p = self;
        p.a.exp() * &p.cx * &p.cx - p.b.exp() * &p.ct * &p.ct
    }

    fn alpha5_bracket(&self) -> Expr {
        let p = self;
        &p.ct * &p.cx + 2 * &p.ctx - &p.ax * &p.ct - &p.bt * &p.cx
    }

    /// Candidate readings of each published formula, the printed one first.
    fn candidates(&self, k: usize) -> Vec<(&'static str, Expr)> {
        let p = self;
        let quarter = Expr::rat(1, 4);
        let printed = match k {
            0 => self.alpha1(),
            1 => self.alpha2(),
            2 => self.alpha3(),
            3 => -&quarter * (&p.a + &p.b + 2 * &p.c).exp() * self.alpha4_bracket(),
            _ => &quarter * p.c.exp() * self.alpha5_bracket(),
        };
        let mut out = vec![("printed", printed.clone()), ("printed, opposite sign", -printed)];
        if k == 3 {
            let br = self.alpha4_bracket();
            let prefactors = [
                ("prefactor e^(2C-A-B)", 2 * &p.c - &p.a - &p.b),
                ("prefactor e^(2C)", 2 * &p.c),
                ("prefactor e^(C-A-B)", &p.c - &p.a - &p.b),
                ("prefactor e^(2C-A)", 2 * &p.c - &p.a),
                ("prefactor e^(2C-B)", 2 * &p.c - &p.b),
            ];
            for (label, e) in prefactors {
                out.push((label, -&quarter * e.exp() * &br));
            }
        }
        out
    }
}

/// The α components in their adopted (audited) form.
pub fn riemann_closed_form(m: &PlaneSymmetricMetric) -> RiemannComponents {
    let p = Partials::of(m);
    let quarter = Expr::rat(1, 4);
    let alpha4 = -&quarter * (2 * &p.c - &p.a - &p.b).exp() * p.alpha4_bracket();
    let alpha5 = -&quarter * p.c.exp() * p.alpha5_bracket();
    RiemannComponents { alpha: [p.alpha1(), p.alpha2(), p.alpha3(), alpha4, alpha5] }
}

/// Outcome of comparing the candidate readings of one α against the generic
/// Riemann tensor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaAudit {
    pub alpha: usize,
    pub component: &'static str,
    pub printed_agrees: bool,
    /// Largest deviation of the printed form, on the same scale.
    pub printed_max_rel_error: f64,
    pub printed_worst_at: Option<Point>,
    /// Candidate readings that agree at every probe point.
    pub matching: Vec<&'static str>,
    /// Largest deviation of the adopted form, relative to the largest α at
    /// the same point.
    pub adopted_max_rel_error: f64,
}

/// Deviation `|a − b|` measured against the curvature scale at the point.
fn rel_dev(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / scale.max(f64::MIN_POSITIVE)
}

/// Compares every candidate reading of α1..α5 and the adopted forms with the
/// generic computation at `points` seeded samples of each metric.
pub fn audit_closed_forms(metrics: &[PlaneSymmetricMetric], points: usize, seed: u64, tol: f64) -> Vec<AlphaAudit> {
    let mut ok: Vec<Vec<bool>> = Vec::new();
    let mut labels: Vec<Vec<&'static str>> = Vec::new();
    let mut worst = [0.0f64; 5];
    let mut worst_printed = [0.0f64; 5];
    let mut worst_at: [Option<Point>; 5] = [None; 5];
    for (mi, m) in metrics.iter().enumerate() {
        let p = Partials::of(m);
        let cands: Vec<_> = (0..5).map(|k| p.candidates(k)).collect();
        if labels.is_empty() {
            labels = cands.iter().map(|c| c.iter().map(|(l, _)| *l).collect()).collect();
            ok = labels.iter().map(|l| vec![true; l.len()]).collect();
        }
        let adopted = riemann_closed_form(m);
        let rd = m.riemann_down();
        for pt in m.domain().sample(points, seed.wrapping_add(mi as u64)) {
            let Ok(generic) =
                ALPHA_SLOTS.iter().map(|s| evaluate(rd.get(s), &pt, m.params())).collect::<Result<Vec<f64>, _>>()
            else {
                continue;
            };
            let scale = generic.iter().fold(0.0f64, |s, v| s.max(v.abs()));
            if scale == 0.0 {
                continue;
            }
            let Ok(ad) = adopted.eval(&pt, m.params()) else {
                continue;
            };
            for k in 0..5 {
                worst[k] = worst[k].max(rel_dev(ad[k], generic[k], scale));
                for (j, (_, e)) in cands[k].iter().enumerate() {
                    let v = evaluate(e, &pt, m.params()).unwrap_or(f64::NAN);
                    let dev = rel_dev(v, generic[k], scale);
                    let dev_or_inf = if dev.is_nan() { f64::INFINITY } else { dev };
                    if j == 0 && (worst_at[k].is_none() || dev_or_inf > worst_printed[k]) {
                        worst_printed[k] = dev_or_inf;
                        worst_at[k] = Some(pt);
                    }
                    if dev.is_nan() || dev > tol {
                        ok[k][j] = false;
                    }
                }
            }
        }
    }
    (0..5)
        .map(|k| AlphaAudit {
            alpha: k + 1,
            component: ALPHA_COMPONENTS[k],
            printed_agrees: ok[k][0],
            printed_max_rel_error: worst_printed[k],
            printed_worst_at: worst_at[k],
            matching: labels[k].iter().zip(&ok[k]).filter(|(_, o)| **o).map(|(l, _)| *l).collect(),
            adopted_max_rel_error: worst[k],
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::Domain;

    #[test]
    fn case27_form_has_only_alpha4() {
        let dom = Domain::default().with_interval(Var::T, 1.0, 3.0).unwrap();
        let m = PlaneSymmetricMetric::from_strs("0", "0", "ln(t^2)", &[], dom).unwrap();
        let a = riemann_closed_form(&m).eval(&[2.0, 0.5, 0.0, 0.0], m.params()).unwrap();
        assert!((a[3] - 4.0).abs() < 1e-12);
        assert_eq!([a[0], a[1], a[2], a[4]], [0.0; 4]);
    }

    #[test]
    fn case14_form_alpha1() {
        let m = PlaneSymmetricMetric::from_strs("2*t + 2*x", "t + x", "0", &[], Domain::default()).unwrap();
        let a = riemann_closed_form(&m).eval(&[0.0; 4], m.params()).unwrap();
        assert!((a[0] - 0.75).abs() < 1e-14);
        assert_eq!(&a[1..], &[0.0; 4]);
    }
}
