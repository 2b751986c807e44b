//! Entanglement entropy: two independent paths, bounds and invariances.

use ince_vortex::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(seed: u64, n: u32) -> TwoModeState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<Complex64> =
        (0..=n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    TwoModeState::new(n, raw.iter().map(|z| z / norm).collect()).unwrap()
}

#[test]
fn partial_trace_of_vortex_states_is_diagonal() {
    let c = coefficients(5, 1, 2.0).unwrap();
    let state = evolve(&initial_state(&c).unwrap(), ConverterSpec::vortex()).unwrap();
    let rho = reduced_density(&state);
    assert!(rho.max_off_diagonal() < 1e-14);
    assert!((rho.trace() - 1.0).abs() < 1e-12);
    for (k, amp) in state.amplitudes.iter().enumerate() {
        let a_photons = 5 - k;
        assert!((rho.matrix[(a_photons, a_photons)].re - amp.norm_sqr()).abs() < 1e-14);
    }
}

#[test]
fn two_paths_agree_for_every_admissible_state() {
    for n in 1..=9u32 {
        for m in (1..=n).filter(|m| (n - m) % 2 == 0) {
            let state = vortex_state(n, m, 2.0, &DecomposeOptions::default()).unwrap();
            for base in [LogBase::Natural, LogBase::Two] {
                let generic = von_neumann(&reduced_density(&state), base).unwrap();
                let shortcut = schmidt_entropy(&state, base);
                assert!((generic - shortcut).abs() < 1e-10, "N={n} m={m}");
            }
        }
    }
}

#[test]
fn n1_vortex_is_maximally_entangled() {
    let sweep = entropy_sweep(1, 2.0, &[1], LogBase::Natural).unwrap();
    assert_eq!(sweep.records.len(), 1);
    assert!((sweep.records[0].entropy - std::f64::consts::LN_2).abs() < 1e-12);
}

#[test]
fn sweep_rows_follow_the_parity_filter() {
    let ns: Vec<u32> = (1..=9).collect();
    let sweep = entropy_sweep(1, 2.0, &ns, LogBase::Natural).unwrap();
    assert_eq!(sweep.records.len(), 5);
    for r in &sweep.records {
        assert!(r.entropy >= 0.0 && r.entropy <= ((r.n_total + 1) as f64).ln() + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bounds_and_invariances(n in 0u32..=9, seed in any::<u64>(), phase in 0.0f64..6.3) {
        let state = random_state(seed, n);
        let s = von_neumann(&reduced_density(&state), LogBase::Natural).unwrap();
        prop_assert!(s >= 0.0 && s <= ((n + 1) as f64).ln() + 1e-12);
        prop_assert!((s - schmidt_entropy(&state, LogBase::Natural)).abs() < 1e-10);

        let rotated = TwoModeState {
            n_total: n,
            amplitudes: state.amplitudes.iter().map(|z| z * Complex64::from_polar(1.0, phase)).collect(),
        };
        let s_rot = von_neumann(&reduced_density(&rotated), LogBase::Natural).unwrap();
        let s_swap = von_neumann(&reduced_density(&state.exchanged()), LogBase::Natural).unwrap();
        prop_assert!((s - s_rot).abs() < 1e-12);
        prop_assert!((s - s_swap).abs() < 1e-12);
    }

    #[test]
    fn single_amplitude_states_have_zero_entropy(n in 0u32..=9, k in 0u32..=9) {
        prop_assume!(k <= n);
        let state = TwoModeState::basis(n, k).unwrap();
        prop_assert!(von_neumann(&reduced_density(&state), LogBase::Two).unwrap().abs() < 1e-10);
    }
}
