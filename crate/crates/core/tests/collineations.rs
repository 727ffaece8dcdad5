use planesym::collineations::{
    check_vector, gram_rank, homothety_constant, induced_2d, induced_3d, is_2d_cc, is_affine, is_cc, is_homothetic_3d,
    is_killing, is_proper_cc, killing_trio, lie_metric, lie_riemann, lie_riemann_cross_check, InducedError,
    VectorField,
};
use planesym::geometry::random_metric;
use planesym::symexpr::{evaluate, parse, Expr};
use planesym::AnalysisConfig;

mod common;
use common::*;

fn cfg() -> AnalysisConfig {
    AnalysisConfig::default()
}

fn vf(c: [&str; 4]) -> VectorField {
    VectorField::from_strs(c, &[]).unwrap()
}

#[test]
fn killing_trio_on_fixtures_and_random_metrics() {
    let metrics: Vec<_> = [case1(), case6(), case14(), case27(), case28(), flat()]
        .into_iter()
        .chain((0..10).map(random_metric))
        .collect();
    for m in &metrics {
        for x in killing_trio() {
            assert_eq!(lie_metric(m, &x).nonzero_count(), 0);
            assert!(is_killing(m, &x, &cfg()).is_zero());
            assert!(is_cc(m, &x, &cfg()).is_zero());
            assert!(!is_proper_cc(m, &x, &cfg()));
            assert_eq!(homothety_constant(m, &x, &cfg()).c, Some(0.0));
        }
    }
}

#[test]
fn lie_metric_of_case1_field() {
    let m = case1();
    let h = lie_metric(&m, &vf(["0", "x^2", "0", "0"]));
    for (idx, e) in h.iter() {
        if idx == [1, 1] {
            assert_eq!(*e, 4 * Expr::x());
        } else {
            assert!(e.is_zero(), "{idx:?}");
        }
    }
}

#[test]
fn flat_dilation_is_homothetic_with_unit_constant() {
    let m = flat();
    let x = vf(["t", "x", "y", "z"]);
    let c = homothety_constant(&m, &x, &cfg()).c.unwrap();
    assert!((c - 1.0).abs() < 1e-12);
    assert!(!is_killing(&flat(), &vf(["t", "0", "0", "0"]), &cfg()).is_zero());
    assert_eq!(homothety_constant(&case1(), &vf(["0", "x^2", "0", "0"]), &cfg()).c, None);
}

#[test]
fn case1_field_is_proper_cc() {
    let m = case1();
    let r = check_vector(&m, &vf(["0", "x^2", "0", "0"]), &cfg());
    assert!(r.is_cc && !r.is_affine && r.is_proper_cc && !r.is_killing);
    assert!(r.cc.max_abs <= 1e-9);
    assert!(r.affine.max_abs >= 1.0);
    assert_eq!(r.affine.component, Some(vec![1, 1, 1]));
}

#[test]
fn case6_field_is_not_cc() {
    let m = case6();
    let x = vf(["0", "x", "0", "0"]);
    assert!(!is_killing(&m, &x, &cfg()).is_zero());
    let cc = is_cc(&m, &x, &cfg());
    assert!(!cc.is_zero());
    assert!(cc.max_abs > 1e-3);
}

#[test]
fn case14_fields() {
    let m = case14();
    let proper = check_vector(&m, &vf(["0", "0", "y^2 + z", "z - y^3"]), &cfg());
    assert!(proper.is_cc && proper.is_proper_cc);
    let affine = check_vector(&m, &vf(["0", "0", "y", "0"]), &cfg());
    assert!(affine.is_cc && affine.is_affine && !affine.is_proper_cc);
    assert!(!affine.is_killing);
}

#[test]
fn case27_field_is_proper_cc() {
    let m = case27();
    let r = check_vector(&m, &vf(["t^2", "t*x", "0", "0"]), &cfg());
    assert!(r.is_cc && r.is_proper_cc, "{r:?}");
    assert_eq!(lie_riemann(&m, &vf(["t^2", "t*x", "0", "0"])).nonzero_count(), 0);
}

#[test]
fn case28_time_field_against_oracle() {
    let m = case28();
    let r = check_vector(&m, &vf(["t^2", "0", "0", "0"]), &cfg());
    assert!(r.is_cc, "{:?}", r.cc);
    assert!(r.is_proper_cc);
}

#[test]
fn flat_metric_any_field_is_cc() {
    assert!(is_cc(&flat(), &vf(["sin(t*x)", "y^3", "exp(z)", "t"]), &cfg()).is_zero());
}

#[test]
fn partial_and_covariant_forms_agree() {
    let fields = [vf(["0", "x^2", "0", "0"]), vf(["t^2", "t*x", "y", "0"]), vf(["x", "t*y", "z^2", "sin(t)"])];
    for m in [case1(), case6(), case14(), case27(), case28()] {
        for x in &fields {
            let v = lie_riemann_cross_check(&m, x, &AnalysisConfig { samples: 50, tol: 1e-10, ..cfg() });
            assert!(v.is_zero(), "{v:?}");
        }
    }
}

#[test]
fn induced_3d_extraction_and_preconditions() {
    let g = induced_3d(&case1(), &cfg()).unwrap();
    assert_eq!(g.alpha, Expr::t());
    assert_eq!(g.eta, 2 * Expr::t());
    let g = induced_3d(&case27(), &cfg()).unwrap();
    assert!(g.alpha.is_zero());
    assert_eq!(g.eta, parse("ln(t^2)").unwrap().simplify());
    let err = induced_3d(&case14(), &cfg()).unwrap_err();
    assert!(matches!(err, InducedError::Precondition { condition: "A_x", .. }));
}

#[test]
fn induced_3d_homothety() {
    let three = |s: [&str; 3]| s.map(|e| parse(e).unwrap().simplify());
    let g = induced_3d(&case27(), &cfg()).unwrap();
    let h = is_homothetic_3d(&g, &three(["t", "0", "0"]), &cfg());
    assert!((h.c.unwrap() - 2.0).abs() < 1e-12);
    assert!(h.generic.unwrap().is_zero());
    let h = is_homothetic_3d(&g, &three(["0", "z", "-y"]), &cfg());
    assert_eq!(h.c, Some(0.0));
    let g1 = induced_3d(&case1(), &cfg()).unwrap();
    let h = is_homothetic_3d(&g1, &three(["1", "0", "0"]), &cfg());
    assert_eq!(h.c, None);
}

#[test]
fn induced_2d_geometry() {
    let g = induced_2d(&case14(), &cfg()).unwrap();
    assert!(g.ricci_check.is_zero(), "{:?}", g.ricci_check);
    let g00 = evaluate(g.g_tensor.get(&[0, 0]), &[0.0; 4], &g.params).unwrap();
    assert!((g00 - 0.75).abs() < 1e-14);
    let two = |s: [&str; 2]| s.map(|e| parse(e).unwrap().simplify());
    let zero = is_2d_cc(&g, &two(["0", "0"]), &cfg());
    assert!(zero.holds && !zero.vacuous);
    let r = is_2d_cc(&g, &two(["1", "0"]), &cfg());
    assert!(!r.holds && !r.residuals[0].is_zero() && !r.generic.is_zero());
    assert!(!is_2d_cc(&g, &two(["t", "-t"]), &cfg()).holds);

    let f = induced_2d(&flat(), &cfg()).unwrap();
    assert!(f.scalar.is_zero() && f.g_tensor.nonzero_count() == 0);
    let v = is_2d_cc(&f, &two(["t", "x^2"]), &cfg());
    assert!(v.holds && v.vacuous);

    assert!(matches!(induced_2d(&case27(), &cfg()), Err(InducedError::Precondition { condition: "C_t", .. })));
}

#[test]
fn infinite_dimensionality_witnesses() {
    let fam = |m: &planesym::PlaneSymmetricMetric, make: &dyn Fn(&str) -> [String; 4], powers: [&str; 5]| {
        let fields: Vec<VectorField> = powers
            .iter()
            .map(|p| {
                let c = make(p);
                vf([c[0].as_str(), c[1].as_str(), c[2].as_str(), c[3].as_str()])
            })
            .collect();
        for f in &fields {
            assert!(is_cc(m, f, &cfg()).is_zero(), "{f:?}");
        }
        gram_rank(&fields, m.domain(), m.params(), 32, 1, 1e-12)
    };
    let xs = ["1", "x", "x^2", "x^3", "x^4"];
    let ts = ["1", "t", "t^2", "t^3", "t^4"];
    let ys = ["1", "y", "y^2", "y^3", "y^4"];
    let s = |v: &str| v.to_string();
    assert_eq!(fam(&case1(), &|f| [s("0"), s(f), s("0"), s("0")], xs), 5);
    assert_eq!(fam(&case14(), &|f| [s("0"), s("0"), s(f), s("0")], ys), 5);
    assert_eq!(fam(&case27(), &|f| [s(f), s("0"), s("0"), s("0")], ts), 5);
}

#[test]
fn affine_checks() {
    assert!(is_affine(&case14(), &vf(["0", "0", "y", "0"]), &cfg()).is_zero());
    assert!(!is_affine(&case1(), &vf(["0", "x^2", "0", "0"]), &cfg()).is_zero());
    for x in killing_trio() {
        assert!(is_affine(&case6(), &x, &cfg()).is_zero());
    }
}
