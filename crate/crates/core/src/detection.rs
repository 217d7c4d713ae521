//! Output-port observables: the photon-number difference Ĵ = n̂_b − n̂_a and
//! its square, the mode-b photon-number parity Π̂_b = (−1)^{n̂_b}, the
//! NOON-projector observable Σ̂_N = |N,0⟩⟨0,N| + |0,N⟩⟨N,0|, joint
//! photon-number distributions, and signal-to-noise ratios.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::TwoModeState;

/// Variance below this is treated as exactly zero noise; the SNR is then
/// reported as a flagged infinity instead of an error.
pub const ZERO_NOISE_THRESHOLD: f64 = 1e-300;

/// Which detector sits at the output ports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// Photon-number difference n̂_b − n̂_a.
    J,
    /// Squared difference (n̂_b − n̂_a)².
    JSquared,
    /// Photon-number parity of mode b.
    ParityB,
    /// |N,0⟩⟨0,N| + |0,N⟩⟨N,0| for the given N.
    SigmaN(u32),
}

impl Observable {
    /// Stable lowercase identifier used in CLI arguments and output metadata.
    pub fn label(&self) -> &'static str {
        match self {
            Observable::J => "j",
            Observable::JSquared => "j2",
            Observable::ParityB => "parity_b",
            Observable::SigmaN(_) => "sigma_n",
        }
    }
}

/// First and second moments of an observable on a given state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableResult {
    pub mean: f64,
    pub variance: f64,
    pub observable: Observable,
}

/// Clamp tiny negative round-off in ⟨O²⟩ − ⟨O⟩² to zero.
fn clamp_variance(raw: f64) -> f64 {
    debug_assert!(raw > -1e-9, "variance {raw} too negative to be round-off");
    raw.max(0.0)
}

/// ⟨Ĵ⟩ and Var(Ĵ) with Ĵ = n̂_b − n̂_a.
pub fn measure_j(state: &TwoModeState) -> Result<ObservableResult> {
    let mean = state.expectation_diagonal(|n_a, n_b| f64::from(n_b) - f64::from(n_a))?;
    let second = state.expectation_diagonal(|n_a, n_b| {
        let d = f64::from(n_b) - f64::from(n_a);
        d * d
    })?;
    Ok(ObservableResult {
        mean,
        variance: clamp_variance(second - mean * mean),
        observable: Observable::J,
    })
}

/// ⟨Ĵ²⟩ and Var(Ĵ²).
pub fn measure_j_squared(state: &TwoModeState) -> Result<ObservableResult> {
    let mean = state.expectation_diagonal(|n_a, n_b| {
        let d = f64::from(n_b) - f64::from(n_a);
        d * d
    })?;
    let fourth = state.expectation_diagonal(|n_a, n_b| {
        let d = f64::from(n_b) - f64::from(n_a);
        d * d * d * d
    })?;
    Ok(ObservableResult {
        mean,
        variance: clamp_variance(fourth - mean * mean),
        observable: Observable::JSquared,
    })
}

/// ⟨Π̂_b⟩ and Var(Π̂_b). Since Π̂_b² = 1 the variance is 1 − ⟨Π̂_b⟩².
pub fn measure_parity_b(state: &TwoModeState) -> Result<ObservableResult> {
    let mean = state.expectation_diagonal(|_, n_b| if n_b % 2 == 0 { 1.0 } else { -1.0 })?;
    Ok(ObservableResult {
        mean,
        variance: clamp_variance(1.0 - mean * mean),
        observable: Observable::ParityB,
    })
}

/// ⟨Σ̂_N⟩ and Var(Σ̂_N). Only the (N,0) and (0,N) amplitudes contribute:
/// ⟨Σ̂_N⟩ = 2 Re(c_{N,0}* c_{0,N}) and ⟨Σ̂_N²⟩ = |c_{N,0}|² + |c_{0,N}|².
pub fn measure_sigma_n(state: &TwoModeState, n: u32) -> Result<ObservableResult> {
    if n == 0 {
        return Err(Error::ZeroPhotons);
    }
    state.check_normalized()?;
    let c_n0 = state.amplitude(n, 0);
    let c_0n = state.amplitude(0, n);
    let mean = 2.0 * (c_n0.conj() * c_0n).re;
    let second = c_n0.norm_sqr() + c_0n.norm_sqr();
    Ok(ObservableResult {
        mean,
        variance: clamp_variance(second - mean * mean),
        observable: Observable::SigmaN(n),
    })
}

/// Dispatch on the observable tag.
pub fn measure(state: &TwoModeState, observable: Observable) -> Result<ObservableResult> {
    match observable {
        Observable::J => measure_j(state),
        Observable::JSquared => measure_j_squared(state),
        Observable::ParityB => measure_parity_b(state),
        Observable::SigmaN(n) => measure_sigma_n(state, n),
    }
}

/// Joint photon-number distribution P(n_a, n_b) = |⟨n_a, n_b|ψ⟩|².
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    probabilities: BTreeMap<(u32, u32), f64>,
}

impl JointDistribution {
    pub fn probability(&self, n_a: u32, n_b: u32) -> f64 {
        self.probabilities.get(&(n_a, n_b)).copied().unwrap_or(0.0)
    }

    /// Iterate (key, probability) pairs in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &f64)> {
        self.probabilities.iter()
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.values().sum()
    }
}

/// Joint distribution of a normalized state; probabilities are rescaled by
/// the squared norm so they sum to 1 to machine precision.
pub fn joint_distribution(state: &TwoModeState) -> Result<JointDistribution> {
    state.check_normalized()?;
    let norm_sqr = state.norm_sqr();
    let probabilities = state
        .iter()
        .map(|(&k, c)| (k, c.norm_sqr() / norm_sqr))
        .collect();
    Ok(JointDistribution { probabilities })
}

/// Signal-to-noise ratio |mean| / √variance; a flagged infinity when the
/// noise vanishes (deterministic signal).
pub fn snr(result: &ObservableResult) -> f64 {
    if result.variance <= ZERO_NOISE_THRESHOLD {
        f64::INFINITY
    } else {
        result.mean.abs() / result.variance.sqrt()
    }
}
