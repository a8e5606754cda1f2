use std::f64::consts::PI;

use proptest::prelude::*;
use zetaquad::complexfn::{c64, gamma, BranchedConstant, ComplexScalar};
use zetaquad::hurwitz::ZetaConfig;
use zetaquad::identities::{
    catalan_case, contour_cauchy_check, lhs_integral, lhs_integral_direct, loggamma_case,
    rhs_contour, rhs_series, rhs_zeta, rhs_zeta_dk, sweep, verify, IdentityCase, ResidualRule,
    Route, Verdict, DEFAULT_FD_STEP, DEFAULT_SERIES_CAP,
};
use zetaquad::quad::QuadConfig;
use zetaquad::Error;

fn case(k: ComplexScalar, a: BranchedConstant) -> IdentityCase {
    IdentityCase::new(k, a).unwrap()
}

fn polar(r: f64, theta: f64) -> BranchedConstant {
    BranchedConstant::new(r, theta).unwrap()
}

fn rel(x: ComplexScalar, y: ComplexScalar) -> f64 {
    (x - y).norm() / x.norm().max(y.norm()).max(1e-300)
}

#[test]
fn all_four_routes_agree_off_axis() {
    let c = case(c64(0.5, 0.3), polar(2.0, 3.0 * PI / 4.0));
    let lhs = lhs_integral(&c).unwrap().value;
    let zeta = rhs_zeta(&c).unwrap();
    let series = rhs_series(&c, DEFAULT_SERIES_CAP).unwrap();
    let contour = rhs_contour(&c).unwrap().value;
    for other in [zeta, series, contour] {
        assert!(rel(lhs, other) < 1e-8, "{lhs} vs {other}");
    }
}

#[test]
fn known_values_at_a_one() {
    let one = BranchedConstant::one();
    for (k, expected) in [(1.0, -PI / 2.0), (2.0, 0.0), (3.0, -3.0 * PI.powi(3) / 8.0)] {
        let c = case(c64(k, 0.0), one);
        let lhs = lhs_integral(&c).unwrap().value;
        let zeta = rhs_zeta(&c).unwrap();
        assert!((lhs - expected).norm() < 1e-8, "k = {k}: lhs {lhs}");
        assert!((zeta - expected).norm() < 1e-8, "k = {k}: zeta {zeta}");
    }
}

#[test]
fn substitution_agrees_with_direct_quadrature() {
    for (k, r) in [(1.0, 1.0), (3.0, 1.0), (0.5, 2.0)] {
        let c = case(c64(k, 0.0), polar(r, 0.0));
        let u = lhs_integral(&c).unwrap().value;
        let y = lhs_integral_direct(&c).unwrap().value;
        assert!((u - y).norm() < 1e-8, "(k, a) = ({k}, {r})");
    }
}

#[test]
fn odd_integrand_vanishes_for_even_k() {
    for k in [2.0, 4.0, 6.0] {
        let c = case(c64(k, 0.0), BranchedConstant::one());
        assert!(lhs_integral(&c).unwrap().value.norm() <= 1e-9);
        assert!(rhs_zeta(&c).unwrap().norm() <= 1e-9);
    }
}

#[test]
fn zero_k_is_zero() {
    let c = case(c64(0.0, 0.0), polar(1.5, 1.0));
    assert_eq!(rhs_zeta(&c).unwrap(), c64(0.0, 0.0));
    assert!(lhs_integral(&c).unwrap().value.norm() < 1e-12);
}

#[test]
fn contour_matches_zeta_on_noninteger_grid() {
    for k in [-1.5, -0.5, 0.5] {
        for a in [BranchedConstant::one(), polar(2.0, 0.0), polar(1.0, PI / 3.0)] {
            let Ok(c) = IdentityCase::new(c64(k, 0.0), a) else { continue };
            let contour = rhs_contour(&c).unwrap().value;
            let zeta = rhs_zeta(&c).unwrap();
            assert!(rel(contour, zeta) <= 1e-6, "k = {k}, a = {a:?}");
        }
    }
}

#[test]
fn cauchy_kernel() {
    for k in 0..=6u32 {
        for y in [c64(1.0, 0.0), c64(2.0, 0.0), c64(0.5, 0.5)] {
            let got = contour_cauchy_check(y, k).unwrap();
            let expected = y.powu(k) / gamma(c64(k as f64 + 1.0, 0.0)).unwrap();
            assert!((got - expected).norm() < 1e-10, "k = {k}, y = {y}");
        }
    }
}

#[test]
fn derivative_of_closed_form_matches_difference() {
    let at = |k: f64| case(c64(k, 0.0), polar(1.3, 2.0));
    let h = 1e-5;
    let fd = (rhs_zeta(&at(1.7 + h)).unwrap() - rhs_zeta(&at(1.7 - h)).unwrap()) / (2.0 * h);
    let analytic = rhs_zeta_dk(&at(1.7)).unwrap();
    assert!(rel(fd, analytic) < 1e-7, "{fd} vs {analytic}");
}

#[test]
fn region_errors() {
    let one = BranchedConstant::one();
    assert!(matches!(IdentityCase::new(c64(-0.5, 0.0), polar(2.0, 0.0)), Err(Error::Region(_))));
    assert!(matches!(rhs_series(&case(c64(1.0, 0.0), one), 256), Err(Error::Region(_))));
    assert!(matches!(rhs_contour(&case(c64(-1.0, 0.0), one)), Err(Error::Region(_))));
    assert!(matches!(lhs_integral(&case(c64(-2.5, 0.0), one)), Err(Error::Region(_))));
}

#[test]
fn verify_route_selection() {
    let one = BranchedConstant::one();
    let r = verify(&case(c64(-1.0, 0.0), one));
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.routes.len(), 3);

    let r = verify(&case(c64(3.0, 0.0), one));
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.routes.len(), 2);
    assert!((r.lhs().unwrap() + 3.0 * PI.powi(3) / 8.0).norm() < 1e-8);

    let r = verify(&case(c64(0.5, 0.3), polar(2.0, 3.0 * PI / 4.0)));
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.routes.len(), 4);
    assert_eq!(r.residuals.len(), 6);
    assert!(r.residual("lhs~contour").is_some());
}

#[test]
fn starved_quadrature_gives_partial() {
    let tiny = QuadConfig::default().with_max_evals(10).unwrap();
    let r = verify(&case(c64(0.5, 0.0), polar(2.0, 0.0)).with_quad(tiny));
    assert_eq!(r.verdict, Verdict::Partial);
    assert!(r.notes.iter().any(|n| n.starts_with("lhs:")));
}

#[test]
fn absurd_tolerance_fails() {
    let c = case(c64(-1.0, 0.0), BranchedConstant::one()).with_check(ResidualRule::new(1e-18, 0.0));
    assert_eq!(verify(&c).verdict, Verdict::Fail);
}

#[test]
fn sweep_order_and_filtering() {
    let ks = [c64(-0.5, 0.0), c64(0.5, 0.0)];
    let as_ = [BranchedConstant::one(), polar(2.0, 0.0)];
    let result = sweep(&ks, &as_, QuadConfig::default(), ZetaConfig::default(), ResidualRule::default());
    assert_eq!(result.reports.len(), 3);
    assert_eq!(result.notes.len(), 1);
    let order: Vec<_> = result.reports.iter().map(|r| (r.k.re, r.a.r())).collect();
    assert_eq!(order, vec![(-0.5, 1.0), (0.5, 1.0), (0.5, 2.0)]);
    assert!(result.all_pass());

    let empty = sweep(&[c64(-1.0, 0.0)], &[polar(2.0, 0.0)], QuadConfig::default(), ZetaConfig::default(), ResidualRule::default());
    assert!(empty.reports.is_empty());
    assert!(empty.notes.iter().any(|n| n.contains("no valid")));

    let single = sweep(&[c64(0.5, 0.3)], &[polar(1.0, PI / 3.0)], QuadConfig::default(), ZetaConfig::default(), ResidualRule::default());
    assert_eq!(single.reports[0], verify(&case(c64(0.5, 0.3), polar(1.0, PI / 3.0))));
}

#[test]
fn special_cases() {
    let c = catalan_case(QuadConfig::default()).unwrap();
    assert_eq!(c.verdict, Verdict::Pass);
    let reference = c.route(Route::Reference).unwrap().value;
    assert!((reference.re + 1.166_243_616_123_275).abs() < 1e-12);

    let l = loggamma_case(QuadConfig::default(), DEFAULT_FD_STEP).unwrap();
    assert_eq!(l.verdict, Verdict::Pass);
    assert_eq!(l.route(Route::ClosedForm).unwrap().value.im, -PI * PI / 4.0);
    assert!(matches!(loggamma_case(QuadConfig::default(), 1.0), Err(Error::Config(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_equals_zeta_form(kr in -1.8f64..0.9, ki in -0.5f64..0.5, r in 0.3f64..3.0, theta in 0.05f64..6.2) {
        let c = case(c64(kr, ki), polar(r, theta));
        let z = rhs_zeta(&c).unwrap();
        let s = rhs_series(&c, DEFAULT_SERIES_CAP).unwrap();
        prop_assert!(rel(s, z) <= 1e-9, "k = {}, a = {r}@{theta}: {s} vs {z}", c.k());
    }

    #[test]
    fn lhs_equals_zeta_form(kr in -0.9f64..2.5, ki in -0.5f64..0.5, r in 0.3f64..3.0, theta in 0.05f64..6.2) {
        let c = case(c64(kr, ki), polar(r, theta));
        let lhs = lhs_integral(&c).unwrap();
        prop_assume!(lhs.converged);
        let z = rhs_zeta(&c).unwrap();
        prop_assert!(ResidualRule::default().accepts(lhs.value, z), "k = {}, a = {r}@{theta}: {} vs {z}", c.k(), lhs.value);
    }
}
