//! Projection coefficients: exactness, convergence, continuity.

use ince_vortex::decompose::expansion_len;
use ince_vortex::modes::{HigMode, HigSign, LgMode};
use ince_vortex::{coefficients, coefficients_with, overlap, DecomposeOptions, OverlapForm, QuadratureRule};
use proptest::prelude::*;

#[test]
fn small_epsilon_collapses_onto_the_top_lg_mode() {
    let c = coefficients(3, 3, 1e-8).unwrap();
    assert!((c.coefficients[0].re - 1.0).abs() < 1e-3);
    assert!(c.coefficients[1].norm() < 1e-3);
}

#[test]
fn overlap_magnitude_of_the_worked_example_entry() {
    // the bilinear pairing gives the reference |A_1| = 0.8279 after normalization
    let opts = DecomposeOptions { form: OverlapForm::Bilinear, ..Default::default() };
    let c = coefficients_with(5, 1, 2.0, &opts).unwrap();
    assert!((c.coefficients[1].norm() - 0.8279).abs() < 5e-3);
}

#[test]
fn the_two_pairings_are_related_by_the_helical_sign() {
    // ∫ LG·HIG⁺ equals ⟨LG|HIG⁻⟩ because the IG parts are real
    let bilinear = coefficients_with(5, 3, 1.5, &DecomposeOptions { form: OverlapForm::Bilinear, ..Default::default() })
        .unwrap();
    let minus = coefficients_with(5, 3, 1.5, &DecomposeOptions { sign: HigSign::Minus, ..Default::default() }).unwrap();
    for (a, b) in bilinear.coefficients.iter().zip(&minus.coefficients) {
        assert!((a - b).norm() < 1e-10);
    }
}

#[test]
fn doubling_the_rule_changes_coefficients_by_less_than_1e6() {
    for (p, m) in [(5, 1), (7, 3), (9, 5)] {
        let base = coefficients(p, m, 2.0).unwrap();
        let rule = QuadratureRule::for_order(p).unwrap().refined().unwrap();
        let fine = coefficients_with(p, m, 2.0, &DecomposeOptions { rule: Some(rule), ..Default::default() }).unwrap();
        for (a, b) in base.coefficients.iter().zip(&fine.coefficients) {
            assert!((a - b).norm() < 1e-6);
        }
    }
}

#[test]
fn coefficients_are_continuous_in_epsilon() {
    for (p, m) in [(5, 1), (7, 3)] {
        let mut prev = coefficients(p, m, 1.9).unwrap();
        for k in 1..=20 {
            let eps = 1.9 + 0.01 * k as f64;
            let cur = coefficients(p, m, eps).unwrap();
            for (a, b) in prev.coefficients.iter().zip(&cur.coefficients) {
                assert!((a - b).norm() < 0.05, "jump at ε={eps}");
            }
            prev = cur;
        }
    }
}

#[test]
fn residual_mass_is_reported_and_bounded() {
    for (p, m) in [(3, 1), (5, 1), (5, 5), (9, 9)] {
        let c = coefficients(p, m, 2.0).unwrap();
        assert!((0.0..1.0).contains(&c.residual_mass), "({p},{m}) residual {}", c.residual_mass);
    }
    // the top-degree mode is almost purely co-rotating
    assert!(coefficients(9, 9, 2.0).unwrap().residual_mass < 1e-6);
}

#[test]
fn coefficient_vectors_for_different_m_at_p3_are_orthogonal() {
    let a = coefficients(3, 1, 2.0).unwrap();
    let b = coefficients(3, 3, 2.0).unwrap();
    assert!(a.dot(&b).norm() < 1e-4);
}

#[test]
fn expansion_lengths() {
    assert_eq!(expansion_len(1).unwrap(), 1);
    assert_eq!(expansion_len(5).unwrap(), 3);
    assert_eq!(expansion_len(6).unwrap(), 3);
    assert!(expansion_len(0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn overlap_is_hermitian_and_bounded(eps in 0.2f64..8.0, n in 0u32..3) {
        let hig = HigMode::new(5, 3, eps, HigSign::Plus).unwrap();
        let lg = LgMode::helical(n, 5 - 2 * n);
        let ab = overlap(&hig, &lg).unwrap();
        let ba = overlap(&lg, &hig).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-10);
        prop_assert!(ab.norm() <= 1.0 + 1e-9);
        prop_assert!((overlap(&hig, &hig).unwrap().re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn coefficient_vectors_are_unit_and_phase_fixed(p in 1u32..=9, k in 0u32..5, eps in 0.1f64..10.0) {
        let m = p - 2 * (k % (p / 2 + 1));
        prop_assume!(m >= 1);
        let c = coefficients(p, m, eps).unwrap();
        let norm: f64 = c.coefficients.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-10);
        let lead = c.coefficients.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let lead = c.coefficients.iter().find(|z| z.norm() == lead).unwrap();
        prop_assert!(lead.re > 0.0 && lead.im == 0.0);
    }
}
