//! Property tests for the state/element algebra: unitarity, conservation
//! laws, and exact operator identities on randomized sparse states.

use std::collections::BTreeMap;

use proptest::prelude::*;

use mzparity::{
    beam_splitter, joint_distribution, measure_parity_b, phase_shift, phi_grid,
    BeamSplitterConvention, Complex64, Mode, TwoModeState,
};

const MAX_PHOTONS_PER_MODE: u32 = 6;

fn arb_state() -> impl Strategy<Value = TwoModeState> {
    proptest::collection::btree_map(
        (0..=MAX_PHOTONS_PER_MODE, 0..=MAX_PHOTONS_PER_MODE),
        (-1.0..1.0_f64, -1.0..1.0_f64),
        1..=6,
    )
    .prop_filter_map("state needs usable norm", |map| {
        let amps: BTreeMap<(u32, u32), Complex64> = map
            .into_iter()
            .map(|(k, (re, im))| (k, Complex64::new(re, im)))
            .collect();
        TwoModeState::from_amplitudes(amps, 2 * MAX_PHOTONS_PER_MODE)
            .ok()
            .and_then(|s| s.normalize().ok())
    })
}

fn arb_convention() -> impl Strategy<Value = BeamSplitterConvention> {
    prop_oneof![
        Just(BeamSplitterConvention::IReflect),
        Just(BeamSplitterConvention::RealAsymmetric),
    ]
}

#[derive(Debug, Clone, Copy)]
enum Element {
    Splitter(BeamSplitterConvention),
    Phase(f64, Mode),
}

fn arb_element() -> impl Strategy<Value = Element> {
    prop_oneof![
        arb_convention().prop_map(Element::Splitter),
        (-6.3..6.3_f64, prop_oneof![Just(Mode::A), Just(Mode::B)])
            .prop_map(|(phi, mode)| Element::Phase(phi, mode)),
    ]
}

fn apply(state: &TwoModeState, element: Element) -> TwoModeState {
    match element {
        Element::Splitter(c) => beam_splitter(state, c).unwrap(),
        Element::Phase(phi, mode) => phase_shift(state, phi, mode),
    }
}

/// Probability mass per fixed-total photon sector.
fn sector_masses(state: &TwoModeState) -> BTreeMap<u32, f64> {
    let mut masses = BTreeMap::new();
    for (&(n_a, n_b), amp) in state.iter() {
        *masses.entry(n_a + n_b).or_insert(0.0) += amp.norm_sqr();
    }
    masses
}

proptest! {
    #[test]
    fn elements_preserve_norm_and_photon_sectors(
        state in arb_state(),
        elements in proptest::collection::vec(arb_element(), 0..5),
    ) {
        let before = sector_masses(&state);
        let mut current = state;
        for &element in &elements {
            current = apply(&current, element);
        }
        prop_assert!((current.norm() - 1.0).abs() < 1e-9);
        let after = sector_masses(&current);
        for (&n, &mass) in &before {
            let got = after.get(&n).copied().unwrap_or(0.0);
            prop_assert!(
                (got - mass).abs() < 1e-9,
                "sector {} mass drifted {} -> {}", n, mass, got
            );
        }
    }

    #[test]
    fn parity_is_dichotomic(state in arb_state()) {
        let r = measure_parity_b(&state).unwrap();
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&r.mean));
        prop_assert!((r.mean * r.mean + r.variance - 1.0).abs() < 1e-10);
    }

    #[test]
    fn splitter_applied_twice_swaps_modes(state in arb_state()) {
        // i-reflect: U² maps |p,q⟩ to i^{p+q} |q,p⟩.
        let twice = beam_splitter(
            &beam_splitter(&state, BeamSplitterConvention::IReflect).unwrap(),
            BeamSplitterConvention::IReflect,
        )
        .unwrap();
        let i = Complex64::new(0.0, 1.0);
        for (&(p, q), &amp) in state.iter() {
            let expect = i.powu(p + q) * amp;
            prop_assert!((twice.amplitude(q, p) - expect).norm() < 1e-10);
        }

        // real asymmetric: U² maps |p,q⟩ to (−1)^p |q,p⟩.
        let twice = beam_splitter(
            &beam_splitter(&state, BeamSplitterConvention::RealAsymmetric).unwrap(),
            BeamSplitterConvention::RealAsymmetric,
        )
        .unwrap();
        for (&(p, q), &amp) in state.iter() {
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((twice.amplitude(q, p) - sign * amp).norm() < 1e-10);
        }
    }

    #[test]
    fn splitter_preserves_inner_products(
        left in arb_state(),
        right in arb_state(),
        convention in arb_convention(),
    ) {
        let before = left.inner_product(&right);
        let after = beam_splitter(&left, convention).unwrap()
            .inner_product(&beam_splitter(&right, convention).unwrap());
        prop_assert!((after - before).norm() < 1e-10);
    }

    #[test]
    fn phase_shift_leaves_joint_distribution_unchanged(
        state in arb_state(),
        phi in -6.3..6.3_f64,
    ) {
        let shifted = phase_shift(&state, phi, Mode::B);
        let before = joint_distribution(&state).unwrap();
        let after = joint_distribution(&shifted).unwrap();
        prop_assert_eq!(before.len(), after.len());
        for (&(n_a, n_b), &p) in before.iter() {
            prop_assert!((after.probability(n_a, n_b) - p).abs() < 1e-12);
        }
    }

    #[test]
    fn normalize_is_idempotent(state in arb_state()) {
        let again = state.normalize().unwrap();
        for (&(n_a, n_b), &amp) in state.iter() {
            prop_assert!((again.amplitude(n_a, n_b) - amp).norm() < 1e-14);
        }
    }

    #[test]
    fn phase_grids_are_inclusive_and_increasing(
        min in -10.0..10.0_f64,
        span in 0.5..20.0_f64,
        steps in 2usize..128,
    ) {
        let grid = phi_grid(min, min + span, steps).unwrap();
        prop_assert_eq!(grid.len(), steps);
        prop_assert_eq!(grid[0], min);
        prop_assert!((grid[steps - 1] - (min + span)).abs() < 1e-12);
        prop_assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }
}
