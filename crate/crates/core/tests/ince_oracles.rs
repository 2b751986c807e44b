//! Ince polynomials checked against the differential equation itself.

use ince_vortex::ince::{build_eigensystem, IncePolynomial, Parity};
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn residual(poly: &IncePolynomial, eta: f64) -> f64 {
    let (f, df, d2f) = poly.derivatives(eta);
    let (eps, p) = (poly.index.epsilon, poly.index.p as f64);
    d2f + eps * (2.0 * eta).sin() * df + (poly.eigenvalue - p * eps * (2.0 * eta).cos()) * f
}

/// Residual with derivatives replaced by centered second-order differences.
fn fd_residual(poly: &IncePolynomial, points: usize) -> f64 {
    let h = TAU / points as f64;
    let (eps, p) = (poly.index.epsilon, poly.index.p as f64);
    (0..points)
        .map(|i| {
            let eta = i as f64 * h;
            let (fm, f0, fp) = (poly.evaluate(eta - h), poly.evaluate(eta), poly.evaluate(eta + h));
            let d1 = (fp - fm) / (2.0 * h);
            let d2 = (fp - 2.0 * f0 + fm) / (h * h);
            (d2 + eps * (2.0 * eta).sin() * d1 + (poly.eigenvalue - p * eps * (2.0 * eta).cos()) * f0).abs()
        })
        .fold(0.0, f64::max)
}

fn all_polys(p: u32, eps: f64) -> Vec<IncePolynomial> {
    let mut out = build_eigensystem(p, Parity::Even, eps).unwrap();
    if p >= 1 {
        out.extend(build_eigensystem(p, Parity::Odd, eps).unwrap());
    }
    out
}

#[test]
fn ode_residual_below_1e8_on_512_points() {
    for p in 0..=9 {
        for eps in [0.5, 2.0, 5.0] {
            for poly in all_polys(p, eps) {
                let worst = (0..512).map(|i| residual(&poly, TAU * i as f64 / 512.0).abs()).fold(0.0, f64::max);
                assert!(worst < 1e-8, "p={p} m={} {:?} ε={eps}: {worst:e}", poly.index.m, poly.index.parity);
            }
        }
    }
}

#[test]
fn finite_difference_residual_converges_at_second_order() {
    for p in [3, 6, 9] {
        for poly in all_polys(p, 2.0) {
            let coarse = fd_residual(&poly, 512);
            let fine = fd_residual(&poly, 1024);
            let ratio = coarse / fine;
            assert!((3.5..4.5).contains(&ratio), "p={p} m={}: ratio {ratio}", poly.index.m);
        }
    }
}

/// Trapezoid value of `∫ a b w dη` over one period with `w = exp(−(ε/2) cos 2η)`.
fn weighted_dot(a: &IncePolynomial, b: &IncePolynomial, weighted: bool, n: usize) -> f64 {
    let eps = a.index.epsilon;
    (0..n)
        .map(|i| TAU * i as f64 / n as f64)
        .map(|t| {
            let w = if weighted { (-0.5 * eps * (2.0 * t).cos()).exp() } else { 1.0 };
            a.evaluate(t) * b.evaluate(t) * w
        })
        .sum::<f64>()
        * TAU
        / n as f64
}

#[test]
fn distinct_degrees_are_orthogonal_under_the_sturm_liouville_weight() {
    for p in 1..=9 {
        for parity in [Parity::Even, Parity::Odd] {
            let polys = build_eigensystem(p, parity, 2.0).unwrap();
            for a in &polys {
                for b in polys.iter().filter(|b| b.index.m != a.index.m) {
                    let dot = weighted_dot(a, b, true, 2048);
                    assert!(dot.abs() < 1e-8, "p={p} m={} m'={}: {dot}", a.index.m, b.index.m);
                }
                assert!((weighted_dot(a, a, false, 2048) - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn unweighted_orthogonality_does_not_hold() {
    // the operator is only symmetric with the weight above
    let polys = build_eigensystem(2, Parity::Even, 2.0).unwrap();
    assert!(weighted_dot(&polys[0], &polys[1], false, 2048).abs() > 0.1);
    let tiny = build_eigensystem(4, Parity::Even, 1e-8).unwrap();
    assert!(weighted_dot(&tiny[0], &tiny[2], false, 2048).abs() < 1e-7);
}

#[test]
fn small_epsilon_limit_is_normalized_trig_function() {
    for p in 0..=9 {
        for poly in all_polys(p, 1e-8) {
            let m = poly.index.m as f64;
            let norm = if poly.index.m == 0 { TAU.sqrt() } else { PI.sqrt() };
            let trig = |t: f64| if poly.index.parity == Parity::Even { (m * t).cos() } else { (m * t).sin() } / norm;
            let sign = poly.evaluate(0.3).signum() * trig(0.3).signum();
            let worst = (0..512)
                .map(|i| TAU * i as f64 / 512.0)
                .map(|t| (poly.evaluate(t) - sign * trig(t)).abs())
                .fold(0.0, f64::max);
            assert!(worst < 1e-4, "p={p} m={}: {worst:e}", poly.index.m);
        }
    }
}

#[test]
fn eigenvalues_ascend_with_degree() {
    for p in 2..=9 {
        for parity in [Parity::Even, Parity::Odd] {
            let polys = build_eigensystem(p, parity, 3.0).unwrap();
            for w in polys.windows(2) {
                assert!(w[0].eigenvalue < w[1].eigenvalue);
                assert!(w[0].index.m + 2 == w[1].index.m);
            }
        }
    }
}

#[test]
fn hyperbolic_values_grow() {
    for poly in all_polys(7, 2.0) {
        let a = poly.evaluate_hyperbolic(4.0).abs();
        let b = poly.evaluate_hyperbolic(5.0).abs();
        assert!(b > a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn residual_small_for_random_epsilon(p in 0u32..=9, eps in 0.01f64..20.0, odd in any::<bool>()) {
        prop_assume!(!(odd && p == 0));
        let parity = if odd { Parity::Odd } else { Parity::Even };
        for poly in build_eigensystem(p, parity, eps).unwrap() {
            prop_assert!(*poly.coeffs.last().unwrap() > 0.0);
            let scale = 1.0 + poly.eigenvalue.abs() + p as f64 * eps;
            for i in 0..64 {
                let eta = TAU * i as f64 / 64.0;
                prop_assert!(residual(&poly, eta).abs() < 1e-9 * scale);
            }
        }
    }

    #[test]
    fn evaluation_is_periodic(eta in -50.0f64..50.0, k in -3i32..3) {
        let poly = IncePolynomial::new(ince_vortex::InceIndex::new(6, 2, Parity::Even, 1.3).unwrap()).unwrap();
        let shifted = eta + k as f64 * TAU;
        prop_assert!((poly.evaluate(eta) - poly.evaluate(shifted)).abs() < 1e-12);
    }
}
