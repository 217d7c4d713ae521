//! Two-mode Fock-space simulator for Mach-Zehnder interferometry with
//! photon-number parity detection.
//!
//! The crate builds quantum states of two optical modes (coherent, number,
//! NOON, arcsine, entangled-coherent), pushes them through 50:50 beam
//! splitters and phase shifters by exact sector-wise unitaries, measures
//! intensity-difference, parity, and projector observables, and estimates
//! phase uncertainty by error propagation — all by brute force in the
//! photon-number basis, so every closed-form fringe and limit
//! (n̄ cos φ, P_N(cos 2φ), the 1/√N shot-noise and 1/N Heisenberg limits)
//! can be checked against it. The [`verify`] module runs those checks.
//!
//! With the default `parallel` feature, phase and photon-number sweeps run
//! on a rayon pool; disable default features for a fully sequential build
//! with identical output.

// Validation guards are written as `!(x > 0.0)` rather than `x <= 0.0` so
// that NaN inputs fail them too; the negated form is load-bearing.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod detection;
pub mod elements;
pub mod error;
pub mod fock;
pub mod math;
pub mod metrology;
pub mod states;
pub mod verify;

pub use num_complex::Complex64;

pub use detection::{
    joint_distribution, measure, measure_j, measure_j_squared, measure_parity_b, measure_sigma_n,
    snr, JointDistribution, Observable, ObservableResult,
};
pub use elements::{
    beam_splitter, magic_interferometer_output, mzi, phase_shift, BeamSplitterConvention,
    MziConfig, MAX_SECTOR_PHOTONS,
};
pub use error::{Error, Result};
pub use fock::{Mode, TwoModeState, NORM_TOLERANCE, PRUNE_THRESHOLD};
pub use metrology::{
    default_step, hl_baseline, phase_uncertainty, phi_grid, sql_baseline, sweep_signal,
    sweep_uncertainty, SweepMeta, SweepRow, SweepTable, UncertaintyReport,
};
pub use states::{
    arcsine_state, coherent_vacuum, default_noon_phase, entangled_coherent, noon, number_state,
    twin_fock, ArcsineCoefficients, CoherentSpec, NoonSpec,
};
pub use verify::{pinned_twin_fock_config, run_all as run_verification, CheckOutcome};
