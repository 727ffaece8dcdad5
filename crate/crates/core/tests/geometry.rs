#![allow(clippy::needless_range_loop)]

use planesym::geometry::{
    audit_closed_forms, random_metric, riemann_closed_form, PlaneSymmetricMetric, TensorField, ALPHA_SLOTS,
};
use planesym::symexpr::{evaluate, Bindings, Point};

mod common;
use common::*;

fn at(t: &TensorField, idx: &[usize], p: &Point, m: &PlaneSymmetricMetric) -> f64 {
    evaluate(t.get(idx), p, m.params()).unwrap()
}

/// Christoffel symbols from central differences of the numeric metric.
fn christoffel_fd(m: &PlaneSymmetricMetric, p: &Point) -> [[[f64; 4]; 4]; 4] {
    let h = 1e-5;
    let g = m.metric_at(p).unwrap();
    let mut dg = [[[0.0; 4]; 4]; 4];
    for d in 0..4 {
        let (mut pp, mut pm) = (*p, *p);
        pp[d] += h;
        pm[d] -= h;
        let (gp, gm) = (m.metric_at(&pp).unwrap(), m.metric_at(&pm).unwrap());
        for a in 0..4 {
            for b in 0..4 {
                dg[d][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
            }
        }
    }
    let mut gam = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                gam[a][b][c] = 0.5 / g[a][a] * (dg[b][a][c] + dg[c][a][b] - dg[a][b][c]);
            }
        }
    }
    gam
}

#[test]
fn christoffels_match_finite_differences() {
    for m in fixtures().into_iter().chain((0..3).map(random_metric)) {
        let gam = m.christoffels();
        for p in m.domain().sample(10, 3) {
            let fd = christoffel_fd(&m, &p);
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        let v = at(gam, &[a, b, c], &p, &m);
                        assert!((v - fd[a][b][c]).abs() <= 1e-6 * (1.0 + v.abs()), "{a}{b}{c}: {v} vs {}", fd[a][b][c]);
                        assert_eq!(gam.get(&[a, b, c]), gam.get(&[a, c, b]));
                    }
                }
            }
        }
    }
}

#[test]
fn case27_christoffels_and_riemann() {
    let m = case27();
    let p = [2.0, 0.3, 0.0, 0.0];
    assert!((at(m.christoffels(), &[0, 2, 2], &p, &m) - 2.0).abs() < 1e-14);
    assert!((at(m.christoffels(), &[2, 0, 2], &p, &m) - 0.5).abs() < 1e-14);
    assert!((at(m.riemann_down(), &[2, 3, 2, 3], &p, &m) - 4.0).abs() < 1e-12);
    assert!((at(m.inverse_metric(), &[2, 2], &p, &m) - 0.25).abs() < 1e-14);
    assert!((at(m.inverse_metric(), &[0, 0], &p, &m) + 1.0).abs() < 1e-14);
}

#[test]
fn case1_components() {
    let m = case1();
    for t in [-0.7, 0.0, 0.4] {
        let p = [t, 0.2, 0.0, 0.0];
        let r0202 = at(m.riemann_down(), &[0, 2, 0, 2], &p, &m);
        let r2323 = at(m.riemann_down(), &[2, 3, 2, 3], &p, &m);
        assert!((r0202 + 0.5 * (2.0 * t).exp()).abs() < 1e-12);
        assert!((r2323 - (3.0 * t).exp()).abs() < 1e-12);
    }
}

#[test]
fn flat_metric_is_flat() {
    let m = flat();
    assert_eq!(m.christoffels().nonzero_count(), 0);
    assert_eq!(m.riemann_down().nonzero_count(), 0);
    assert_eq!(m.ricci().nonzero_count(), 0);
    assert!(riemann_closed_form(&m).alpha.iter().all(|a| a.is_zero()));
}

#[test]
fn riemann_symmetries_and_bianchi() {
    for m in fixtures().into_iter().chain((0..10).map(random_metric)) {
        let r = m.riemann_down();
        for p in m.domain().sample(100, 11) {
            let v = r.eval(&p, m.params()).unwrap();
            let c = |a: usize, b: usize, cc: usize, d: usize| v[((a * 4 + b) * 4 + cc) * 4 + d];
            let scale = 1.0 + v.iter().fold(0.0f64, |s, x| s.max(x.abs()));
            for a in 0..4 {
                for b in 0..4 {
                    for cc in 0..4 {
                        for d in 0..4 {
                            assert!((c(a, b, cc, d) + c(b, a, cc, d)).abs() <= 1e-10 * scale);
                            assert!((c(a, b, cc, d) + c(a, b, d, cc)).abs() <= 1e-10 * scale);
                            assert!((c(a, b, cc, d) - c(cc, d, a, b)).abs() <= 1e-10 * scale);
                            let bianchi = c(a, b, cc, d) + c(a, cc, d, b) + c(a, d, b, cc);
                            assert!(bianchi.abs() <= 1e-10 * scale);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn odd_transverse_components_vanish_structurally() {
    for m in [case1(), case28(), random_metric(5)] {
        for (idx, e) in m.riemann_down().iter() {
            let ys = idx.iter().filter(|i| **i == 2).count();
            let zs = idx.iter().filter(|i| **i == 3).count();
            if ys % 2 == 1 || zs % 2 == 1 {
                assert!(e.is_zero(), "{idx:?} = {e}");
            }
        }
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(m.ricci().get(&[a, b]), m.ricci().get(&[b, a]));
            }
        }
    }
}

#[test]
fn metric_compatibility() {
    for m in fixtures().into_iter().chain((0..3).map(random_metric)) {
        let dg = m.covariant_derivative(&m.metric_tensor());
        for p in m.domain().sample(50, 5) {
            let v = dg.eval(&p, m.params()).unwrap();
            assert!(v.iter().all(|x| x.abs() <= 1e-10), "{v:?}");
        }
    }
}

#[test]
fn inverse_times_metric_is_identity() {
    for m in fixtures() {
        for p in m.domain().sample(20, 1) {
            let g = m.metric_at(&p).unwrap();
            for a in 0..4 {
                let gi = at(m.inverse_metric(), &[a, a], &p, &m);
                assert!((gi * g[a][a] - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn covariant_derivative_of_lie_metric_on_case1() {
    let m = case1();
    let mut h = TensorField::zeros(4, 0, 2);
    h.set(&[1, 1], 4 * planesym::Expr::x());
    let dh = m.covariant_derivative(&h);
    for p in m.domain().sample(20, 2) {
        for (idx, e) in dh.iter() {
            let v = evaluate(e, &p, m.params()).unwrap();
            let expect = if idx == [1, 1, 1] { 4.0 } else { 0.0 };
            assert!((v - expect).abs() < 1e-12, "{idx:?}");
        }
    }
    let zero = m.covariant_derivative(&TensorField::zeros(4, 0, 2));
    assert_eq!(zero.nonzero_count(), 0);
}

#[test]
fn case14_ricci_matches_two_dimensional_formula() {
    // R_00 = e^(-B) α1, R_11 = -e^(-A) α1, other components zero
    let m = case14();
    let r = m.ricci();
    let alpha1 = &riemann_closed_form(&m).alpha[0];
    for p in m.domain().sample(30, 9) {
        let g = m.metric_at(&p).unwrap();
        let a1 = evaluate(alpha1, &p, m.params()).unwrap();
        let r00 = at(r, &[0, 0], &p, &m);
        let r11 = at(r, &[1, 1], &p, &m);
        assert!((r00 - a1 / g[1][1]).abs() <= 1e-10 * (1.0 + r00.abs()));
        assert!((r11 - a1 / g[0][0]).abs() <= 1e-10 * (1.0 + r11.abs()));
        assert!(at(r, &[0, 1], &p, &m).abs() <= 1e-10);
        assert!(at(r, &[2, 2], &p, &m).abs() <= 1e-10);
    }
}

#[test]
fn closed_forms_agree_with_generic_riemann() {
    let mut metrics = fixtures();
    metrics.extend((0..10).map(random_metric));
    let audit = audit_closed_forms(&metrics, 100, 7, 1e-9);
    for a in &audit {
        assert!(a.adopted_max_rel_error <= 1e-9, "{a:?}");
    }
    let printed: Vec<bool> = audit.iter().map(|a| a.printed_agrees).collect();
    assert_eq!(printed, [true, true, true, false, false]);
    assert_eq!(audit[3].matching, ["prefactor e^(2C-A-B)"]);
    assert_eq!(audit[4].matching, ["printed, opposite sign"]);
}

#[test]
fn closed_form_components_evaluate_like_generic() {
    let m = case1();
    let cf = riemann_closed_form(&m);
    let p = [0.0, 0.0, 0.0, 0.0];
    let a = cf.eval(&p, &Bindings::new()).unwrap();
    for (k, s) in ALPHA_SLOTS.iter().enumerate() {
        assert!((a[k] - at(m.riemann_down(), s, &p, &m)).abs() < 1e-14);
    }
    assert!((a[1] + 0.5).abs() < 1e-14 && (a[3] - 1.0).abs() < 1e-14);
}
