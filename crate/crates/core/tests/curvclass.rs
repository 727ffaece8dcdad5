#![allow(clippy::needless_range_loop)]

use planesym::curvclass::{
    classify, coordinate_covector, decompose_rank1, generic_rank, is_covariantly_constant, kernel_np, range_bivectors,
    rank_with_tol, riemann_matrix_at, Bivector, BivectorIndex, CurvClassError, CurvatureClass,
};
use planesym::geometry::random_metric;
use planesym::AnalysisConfig;

mod common;
use common::*;

const TAU: f64 = 1e-10;

fn cfg() -> AnalysisConfig {
    AnalysisConfig::default()
}

#[test]
fn case27_matrix_at_t2() {
    let m = case27();
    let w = riemann_matrix_at(&m, &[2.0, 0.1, 0.0, 0.0]).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            let expect = if (i, j) == (5, 5) { 4.0 } else { 0.0 };
            assert!((w.w[i][j] - expect).abs() < 1e-12, "W[{i}][{j}] = {}", w.w[i][j]);
        }
    }
    assert_eq!(rank_with_tol(&w, TAU), 1);
    let d = decompose_rank1(&w, TAU).unwrap();
    let c = d.f.components();
    assert!(c[..5].iter().all(|v| v.abs() < 1e-12));
    assert!((d.alpha * c[5] * c[5] - 4.0).abs() < 1e-12);
    assert!(d.residual <= 1e-9 && d.plucker <= 1e-12 && d.blade_residual <= 1e-12);
}

#[test]
fn case1_matrix_at_origin() {
    let m = case1();
    let w = riemann_matrix_at(&m, &[0.0; 4]).unwrap();
    let mut expect = [[0.0; 6]; 6];
    expect[1][1] = -0.5;
    expect[2][2] = -0.5;
    expect[5][5] = 1.0;
    for i in 0..6 {
        for j in 0..6 {
            assert!((w.w[i][j] - expect[i][j]).abs() < 1e-14);
        }
    }
    assert_eq!(rank_with_tol(&w, TAU), 3);
    assert_eq!(decompose_rank1(&w, TAU).unwrap_err(), CurvClassError::RankMismatch(3));
}

#[test]
fn flat_is_class_o() {
    let m = flat();
    let w = riemann_matrix_at(&m, &[0.1, 0.2, 0.3, 0.4]).unwrap();
    assert_eq!(w.max_abs(), 0.0);
    assert_eq!(rank_with_tol(&w, TAU), 0);
    assert_eq!(kernel_np(&w, TAU).dim, 4);
    let c = classify(&m, m.domain(), &cfg());
    assert_eq!(c.class, CurvatureClass::O);
    assert_eq!(c.rank.generic_rank, 0);
}

#[test]
fn sparsity_pattern_holds_for_random_metrics() {
    // nonzero slots: α1 (0,0); α2 (1,1),(2,2); α3 (3,3),(4,4); α4 (5,5); α5 (1,3),(2,4)
    let allowed = |i: usize, j: usize| i == j || matches!((i.min(j), i.max(j)), (1, 3) | (2, 4));
    for seed in 0..5 {
        let m = random_metric(seed);
        for p in m.domain().sample(20, seed) {
            let w = riemann_matrix_at(&m, &p).unwrap();
            assert!(w.asymmetry() <= 1e-12);
            for i in 0..6 {
                for j in 0..6 {
                    if !allowed(i, j) {
                        assert!(w.w[i][j].abs() <= 1e-12);
                    }
                }
            }
            assert!((w.w[1][1] - w.w[2][2]).abs() <= 1e-10 * (1.0 + w.w[1][1].abs()));
            assert!((w.w[1][3] - w.w[2][4]).abs() <= 1e-10 * (1.0 + w.w[1][3].abs()));
        }
    }
}

#[test]
fn fixture_ranks_kernels_and_classes() {
    let cases = [
        ("case1", case1(), 3, 1, CurvatureClass::C, Some(vec![1])),
        ("case6", case6(), 3, 1, CurvatureClass::C, Some(vec![0])),
        ("case14", case14(), 1, 2, CurvatureClass::D, Some(vec![2, 3])),
        ("case27", case27(), 1, 2, CurvatureClass::D, Some(vec![0, 1])),
        ("case28", case28(), 1, 2, CurvatureClass::D, Some(vec![0, 1])),
    ];
    for (name, m, rank, dim, class, axes) in cases {
        let c = classify(&m, m.domain(), &cfg());
        assert_eq!(c.rank.generic_rank, rank, "{name}");
        assert_eq!(c.rank.histogram.iter().sum::<usize>(), cfg().samples, "{name}");
        assert_eq!(c.kernel_dim, dim, "{name}");
        assert_eq!(c.class, class, "{name}: {c:?}");
        assert!(c.stable && c.warnings.is_empty(), "{name}: {:?}", c.warnings);
        let k = c.kernel.unwrap();
        assert_eq!(k.coordinate_axes(1e-8), axes, "{name}: {k:?}");
        assert!(k.residual <= TAU, "{name}");
        let gr = generic_rank(&m, m.domain(), &cfg());
        assert_eq!(gr.generic_rank, rank);
    }
}

#[test]
fn generic_rank4_exceeds_three() {
    let m = generic_rank4();
    let r = generic_rank(&m, m.domain(), &cfg());
    assert!(r.generic_rank >= 4, "{r:?}");
    assert_eq!(classify(&m, m.domain(), &cfg()).class, CurvatureClass::A);
}

#[test]
fn class_c_range_bivectors_annihilate_kernel() {
    for m in [case1(), case6()] {
        for p in m.domain().sample(32, 4) {
            let w = riemann_matrix_at(&m, &p).unwrap();
            let k = kernel_np(&w, TAU);
            assert_eq!(k.dim, 1);
            for f in range_bivectors(&w, TAU) {
                let fk = f.apply(&k.vectors[0]);
                assert!(fk.iter().all(|v| v.abs() <= 1e-9), "{fk:?}");
            }
        }
    }
}

#[test]
fn rank1_round_trip_on_rank1_fixtures() {
    for m in [case14(), case27(), case28()] {
        for p in m.domain().sample(32, 8) {
            let w = riemann_matrix_at(&m, &p).unwrap();
            let d = decompose_rank1(&w, TAU).unwrap();
            assert!(d.residual <= 1e-9 && d.plucker <= 1e-9 && d.blade_residual <= 1e-9, "{d:?}");
        }
    }
}

#[test]
fn covariant_constancy_of_kernel_covectors() {
    let c = cfg();
    let cc = |m: &planesym::PlaneSymmetricMetric, i| is_covariantly_constant(m, &coordinate_covector(i), &c);
    assert!(cc(&case1(), 1).constant);
    assert!(!cc(&case6(), 0).constant);
    let (y, z) = (cc(&case14(), 2), cc(&case14(), 3));
    assert!(y.constant && z.constant);
    assert!(y.residual.max_abs <= 1e-12 && z.residual.max_abs <= 1e-12);
    assert!(!cc(&case27(), 0).constant);
    assert!(cc(&case27(), 1).constant);
    assert!(!cc(&case28(), 0).constant && !cc(&case28(), 1).constant);
}

#[test]
fn bivector_positions_match_matrix_layout() {
    let f = Bivector::wedge([0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]);
    assert_eq!(BivectorIndex::position(2, 3), Some((5, 1.0)));
    assert_eq!(f.components(), [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
}
