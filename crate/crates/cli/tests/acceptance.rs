//! Acceptance gate for the simulator: eleven criteria, each checking a
//! closed-form prediction (or a structural guarantee) against brute-force
//! Fock-space computation. Tolerances are pinned as constants below; run
//! with `--nocapture` to see one verdict line per criterion.
//!
//! Closed forms used as oracles (Legendre recurrence, binomials, fringe
//! formulas) are re-implemented locally so the gate does not trust the
//! library's own math helpers.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::Command;

use mzparity::{
    arcsine_state, beam_splitter, coherent_vacuum, joint_distribution, magic_interferometer_output,
    measure_j, measure_j_squared, measure_parity_b, mzi, noon, number_state, phase_uncertainty,
    phi_grid, pinned_twin_fock_config, snr, sweep_uncertainty, twin_fock, BeamSplitterConvention,
    CoherentSpec, Complex64, MziConfig, NoonSpec, Observable,
};

const TOL_AMPLITUDE: f64 = 1e-12; // criteria 1, 6
const TOL_INTENSITY_ABS: f64 = 1e-8; // criterion 2
const TOL_DELTA_PHI_REL: f64 = 1e-4; // criteria 3, 5
const TOL_SNR_ABS: f64 = 1e-6; // criterion 3
const TOL_PARITY_CLOSED_FORM: f64 = 1e-10; // criterion 4
const TOL_LEGENDRE: f64 = 1e-9; // criterion 7
const TOL_SMALL_ANGLE_REL: f64 = 1e-3; // criterion 8
const TOL_JOINT: f64 = 1e-10; // criterion 9
const TOL_SNR_BOUND_REL: f64 = 5e-2; // criterion 10

/// Relative slack on the baseline bounds of criterion 8: at N = 1 the exact
/// value 1/√(2·1·2) = 0.5 *is* the lower baseline, and the finite-difference
/// estimate carries ~1e-7 relative noise in either direction.
const BASELINE_SLACK: f64 = 1e-6;

fn report(name: &str, max_error: f64, tolerance: f64) {
    let verdict = if max_error <= tolerance { "PASS" } else { "FAIL" };
    println!("{name}: max error {max_error:e} vs tolerance {tolerance:e} — {verdict}");
    assert!(
        max_error <= tolerance,
        "{name}: max error {max_error:e} exceeds tolerance {tolerance:e}"
    );
}

fn report_ok(name: &str) {
    println!("{name}: PASS");
}

// ---- local oracles ---------------------------------------------------------

/// Legendre polynomial by the stable three-term recurrence.
fn legendre_oracle(n: u32, x: f64) -> f64 {
    let (mut prev, mut curr) = (1.0_f64, x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0) * x * curr - k * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Parity fringe of an N-photon two-branch superposition after phase and
/// output splitter: ±cos(Nφ+Φ) for even N, ±sin(Nφ+Φ) for odd N.
fn noon_parity_oracle(n: u32, phi: f64, phi_n: f64) -> f64 {
    let arg = f64::from(n) * phi + phi_n;
    if n.is_multiple_of(2) {
        let sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * arg.cos()
    } else {
        let sign = if n.div_ceil(2).is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * arg.sin()
    }
}

fn binomial_oracle(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0_f64;
    for i in 0..k {
        acc = acc * ((n - i) as f64) / ((i + 1) as f64);
    }
    acc
}

// ---- criteria --------------------------------------------------------------

#[test]
fn criterion_01_beam_splitter_exactness() {
    use BeamSplitterConvention::{IReflect, RealAsymmetric};
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);

    type Image = Vec<((u32, u32), Complex64)>;
    let cases: Vec<(BeamSplitterConvention, (u32, u32), Image)> = vec![
        // Single photon in port a.
        (IReflect, (1, 0), vec![((1, 0), re(s)), ((0, 1), im(s))]),
        (RealAsymmetric, (1, 0), vec![((1, 0), re(s)), ((0, 1), re(-s))]),
        // One photon in each port: both bunch into the same output mode.
        (IReflect, (1, 1), vec![((2, 0), im(s)), ((0, 2), im(s))]),
        (RealAsymmetric, (1, 1), vec![((2, 0), re(s)), ((0, 2), re(-s))]),
        // Two photons in port a.
        (
            IReflect,
            (2, 0),
            vec![((2, 0), re(0.5)), ((1, 1), im(s)), ((0, 2), re(-0.5))],
        ),
    ];

    let mut max_error = 0.0_f64;
    for (convention, (n_a, n_b), expected) in cases {
        let out = beam_splitter(&number_state(n_a, n_b), convention).unwrap();
        let expected: BTreeMap<(u32, u32), Complex64> = expected.into_iter().collect();
        let zero = Complex64::new(0.0, 0.0);
        let keys: Vec<(u32, u32)> = out
            .iter()
            .map(|(&k, _)| k)
            .chain(expected.keys().copied())
            .collect();
        for (p, q) in keys {
            let got = out.amplitude(p, q);
            let want = expected.get(&(p, q)).copied().unwrap_or(zero);
            max_error = max_error.max((got - want).norm());
        }
    }
    report(
        "criterion 01 (beam-splitter images of |1,0>, |1,1>, |2,0>)",
        max_error,
        TOL_AMPLITUDE,
    );
}

#[test]
fn criterion_02_coherent_intensity_fringe() {
    let grid = phi_grid(0.0, TAU, 64).unwrap();
    let mut max_error = 0.0_f64;
    for &n_bar in &[5.0_f64, 10.0, 20.0] {
        let input =
            coherent_vacuum(CoherentSpec::new(Complex64::new(n_bar.sqrt(), 0.0))).unwrap();
        for &phi in &grid {
            let out = mzi(&input, phi, MziConfig::default()).unwrap();
            let j = measure_j(&out).unwrap();
            max_error = max_error.max((j.mean - n_bar * phi.cos()).abs());
        }
    }
    report(
        "criterion 02 (coherent intensity difference = n̄·cos φ)",
        max_error,
        TOL_INTENSITY_ABS,
    );
}

#[test]
fn criterion_03_coherent_uncertainty_and_snr() {
    let n_bar = 10.0_f64;
    let input = coherent_vacuum(CoherentSpec::new(Complex64::new(n_bar.sqrt(), 0.0))).unwrap();
    let prepare = |phi: f64| mzi(&input, phi, MziConfig::default());

    // Shot-noise-limited phase uncertainty at the steepest point.
    let estimate = phase_uncertainty(prepare, Observable::J, FRAC_PI_2, None).unwrap();
    let expected = 1.0 / n_bar.sqrt();
    let rel = (estimate.delta_phi - expected).abs() / expected;
    report(
        "criterion 03a (coherent Δφ(π/2) = 1/√n̄)",
        rel,
        TOL_DELTA_PHI_REL,
    );

    // SNR over the grid, skipping fringe nodes where the signal vanishes.
    let grid = phi_grid(0.0, TAU, 64).unwrap();
    let mut max_error = 0.0_f64;
    for &phi in &grid {
        if phi.cos().abs() < 1e-3 {
            continue;
        }
        let out = mzi(&input, phi, MziConfig::default()).unwrap();
        let j = measure_j(&out).unwrap();
        max_error = max_error.max((snr(&j) - n_bar.sqrt() * phi.cos().abs()).abs());
    }
    report(
        "criterion 03b (coherent SNR = √n̄·|cos φ|)",
        max_error,
        TOL_SNR_ABS,
    );
}

#[test]
fn criterion_04_noon_parity_closed_form() {
    let grid = phi_grid(0.0, TAU, 32).unwrap();
    let mut max_error = 0.0_f64;
    for n in 1..=10u32 {
        for &phi_n in &[0.0, FRAC_PI_2] {
            let state = noon(NoonSpec {
                n_photons: n,
                phi_n,
            })
            .unwrap();
            for &phi in &grid {
                let out = magic_interferometer_output(&state, phi).unwrap();
                let parity = measure_parity_b(&out).unwrap().mean;
                max_error = max_error.max((parity - noon_parity_oracle(n, phi, phi_n)).abs());
            }
        }
    }
    report(
        "criterion 04a (N-photon parity fringe, N = 1..10, both branch phases)",
        max_error,
        TOL_PARITY_CLOSED_FORM,
    );

    // Two-photon case equals −cos(2φ + Φ) written out literally.
    let mut max_error_n2 = 0.0_f64;
    for &phi_n in &[0.0, FRAC_PI_2] {
        let state = noon(NoonSpec {
            n_photons: 2,
            phi_n,
        })
        .unwrap();
        for &phi in &grid {
            let out = magic_interferometer_output(&state, phi).unwrap();
            let parity = measure_parity_b(&out).unwrap().mean;
            max_error_n2 = max_error_n2.max((parity + (2.0 * phi + phi_n).cos()).abs());
        }
    }
    report(
        "criterion 04b (two-photon parity = −cos(2φ + Φ))",
        max_error_n2,
        TOL_PARITY_CLOSED_FORM,
    );
}

#[test]
fn criterion_05_noon_heisenberg_limit() {
    let mut max_rel = 0.0_f64;
    for n in 1..=10u32 {
        let state = noon(NoonSpec {
            n_photons: n,
            phi_n: 0.0,
        })
        .unwrap();
        // Work at a quarter-fringe offset, where the parity slope is healthy.
        let phi_star = PI / (4.0 * f64::from(n));
        let estimate = phase_uncertainty(
            |phi| magic_interferometer_output(&state, phi),
            Observable::ParityB,
            phi_star,
            None,
        )
        .unwrap();
        assert!(!estimate.diverged, "N = {n}: estimate diverged unexpectedly");
        let expected = 1.0 / f64::from(n);
        max_rel = max_rel.max((estimate.delta_phi - expected).abs() / expected);
    }
    report(
        "criterion 05 (N-photon path-entangled Δφ = 1/N)",
        max_rel,
        TOL_DELTA_PHI_REL,
    );
}

#[test]
fn criterion_06_arcsine_coefficients() {
    // Factory state equals the splitter image of twin-Fock up to one global phase.
    let mut max_error = 0.0_f64;
    for n in 1..=10u32 {
        let factory = arcsine_state(n).unwrap();
        let image =
            beam_splitter(&twin_fock(n).unwrap(), BeamSplitterConvention::RealAsymmetric).unwrap();
        let phase = factory.amplitude(0, 2 * n) / image.amplitude(0, 2 * n);
        assert!(
            (phase.norm() - 1.0).abs() < TOL_AMPLITUDE,
            "N = {n}: alignment factor is not a pure phase"
        );
        let keys: Vec<(u32, u32)> = factory
            .iter()
            .map(|(&k, _)| k)
            .chain(image.iter().map(|(&k, _)| k))
            .collect();
        for (p, q) in keys {
            let diff = (factory.amplitude(p, q) - phase * image.amplitude(p, q)).norm();
            max_error = max_error.max(diff);
        }
    }
    report(
        "criterion 06a (arcsine state = splitter image of twin-Fock, N = 1..10)",
        max_error,
        TOL_AMPLITUDE,
    );

    // N = 2 probabilities are exactly {3/8, 1/4, 3/8}.
    let s = arcsine_state(2).unwrap();
    let mut max_error_n2 = (s.amplitude(0, 4).norm_sqr() - 0.375).abs();
    max_error_n2 = max_error_n2.max((s.amplitude(2, 2).norm_sqr() - 0.25).abs());
    max_error_n2 = max_error_n2.max((s.amplitude(4, 0).norm_sqr() - 0.375).abs());
    assert_eq!(s.len(), 3, "N = 2 arcsine state must have exactly 3 terms");
    report(
        "criterion 06b (N = 2 arcsine probabilities {3/8, 1/4, 3/8})",
        max_error_n2,
        TOL_AMPLITUDE,
    );
}

#[test]
fn criterion_07_twin_fock_legendre_parity() {
    let config = pinned_twin_fock_config();
    let grid = phi_grid(0.0, TAU, 64).unwrap();
    let mut max_error = 0.0_f64;
    for n in 1..=15u32 {
        let input = twin_fock(n).unwrap();
        for &phi in &grid {
            let out = mzi(&input, phi, config).unwrap();
            let parity = measure_parity_b(&out).unwrap().mean;
            let expected = legendre_oracle(n, (2.0 * phi).cos());
            max_error = max_error.max((parity - expected).abs());
        }
    }
    report(
        "criterion 07 (twin-Fock parity = P_N(cos 2φ), N = 1..15)",
        max_error,
        TOL_LEGENDRE,
    );
}

#[test]
fn criterion_08_twin_fock_uncertainty_bounds() {
    let n_values: Vec<u32> = (1..=20).collect();
    let table = sweep_uncertainty(&n_values, 1e-4, pinned_twin_fock_config(), None).unwrap();
    let mut max_rel = 0.0_f64;
    for row in &table.rows {
        let r = row.uncertainty.unwrap();
        assert!(!r.diverged, "2N = {}: estimate diverged", row.x);
        assert!(
            r.delta_phi >= r.hl * (1.0 - BASELINE_SLACK),
            "2N = {}: Δφ = {} fell below the 1/N baseline {}",
            row.x,
            r.delta_phi,
            r.hl
        );
        assert!(
            r.delta_phi <= r.sql * (1.0 + BASELINE_SLACK),
            "2N = {}: Δφ = {} exceeds the 1/√N baseline {}",
            row.x,
            r.delta_phi,
            r.sql
        );
        let n = row.x / 2.0;
        let expected = 1.0 / (2.0 * n * (n + 1.0)).sqrt();
        max_rel = max_rel.max((r.delta_phi - expected).abs() / expected);
    }
    report(
        "criterion 08 (twin-Fock Δφ within [1/N, 1/√N], = 1/√(2N(N+1)) at small angle)",
        max_rel,
        TOL_SMALL_ANGLE_REL,
    );
}

#[test]
fn criterion_09_joint_distributions() {
    // Two-branch N = 10 state: exactly two outcomes, each probability 1/2.
    let state = noon(NoonSpec {
        n_photons: 10,
        phi_n: 0.0,
    })
    .unwrap();
    let dist = joint_distribution(&state).unwrap();
    assert_eq!(dist.len(), 2, "expected exactly two outcomes");
    let mut max_error = (dist.probability(10, 0) - 0.5).abs();
    max_error = max_error.max((dist.probability(0, 10) - 0.5).abs());

    // Arcsine N = 10: support on even pairs summing to 20, end-heavy.
    let dist = joint_distribution(&arcsine_state(10).unwrap()).unwrap();
    assert_eq!(dist.len(), 11);
    let mut total = 0.0;
    for (&(n_a, n_b), &p) in dist.iter() {
        assert_eq!(n_a % 2, 0, "odd photon number {n_a} in support");
        assert_eq!(n_a + n_b, 20, "support off the fixed-total diagonal");
        total += p;
    }
    max_error = max_error.max((total - 1.0).abs());

    let ends = binomial_oracle(20, 10) / 4.0_f64.powi(10);
    max_error = max_error.max((dist.probability(0, 20) - ends).abs());
    max_error = max_error.max((dist.probability(20, 0) - ends).abs());
    for (&(n_a, _), &p) in dist.iter() {
        if n_a != 0 && n_a != 20 {
            assert!(
                p < dist.probability(0, 20),
                "interior probability at n_a = {n_a} is not below the ends"
            );
        }
    }
    report(
        "criterion 09 (joint distributions: two-outcome and arcsine-law shapes)",
        max_error,
        TOL_JOINT,
    );
}

#[test]
fn criterion_10_j_squared_snr_bound() {
    let config = pinned_twin_fock_config();
    let grid = phi_grid(0.0, FRAC_PI_2, 101).unwrap();
    let mut max_rel = 0.0_f64;
    for &n in &[5u32, 10] {
        let input = twin_fock(n).unwrap();
        let mut best = 0.0_f64;
        for &phi in &grid {
            let out = mzi(&input, phi, config).unwrap();
            let r = measure_j_squared(&out).unwrap();
            let value = snr(&r);
            // At φ = π/2 the interferometer maps |N,N⟩ to itself, the signal
            // is deterministically zero, and the SNR comes back flagged
            // infinite (0/0); the maximum is over the well-defined branch.
            if value.is_finite() {
                best = best.max(value);
            }
        }
        let expected = std::f64::consts::SQRT_2;
        max_rel = max_rel.max((best - expected).abs() / expected);
    }
    report(
        "criterion 10 (max SNR of squared intensity difference ≈ √2)",
        max_rel,
        TOL_SNR_BOUND_REL,
    );
}

#[test]
fn criterion_11_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_mzparity");
    let dir = tempfile::tempdir().unwrap();
    let file_args: Vec<Vec<String>> = vec![
        vec!["signal", "--family", "twin", "--n", "4", "--steps", "32"],
        vec!["uncertainty", "--n", "1..8", "--format", "json"],
        vec!["state", "--family", "coherent", "--alpha", "1.5,0.25"],
        vec!["joint", "--family", "arcsine", "--n", "6"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();

    for (i, args) in file_args.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("case{i}_run{run}"));
            let status = Command::new(bin)
                .args(args)
                .arg("--out")
                .arg(&path)
                .status()
                .unwrap();
            assert!(status.success(), "{args:?} exited with {status}");
            outputs.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(
            outputs[0], outputs[1],
            "{args:?}: consecutive runs differ byte-for-byte"
        );
        assert!(!outputs[0].is_empty(), "{args:?}: empty output");
    }
    report_ok("criterion 11 (byte-identical output across repeated runs)");
}
