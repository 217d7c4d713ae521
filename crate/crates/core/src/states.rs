//! Constructors for the input and intra-interferometer states under study:
//! coherent ⊗ vacuum, photon-number (twin-Fock) states, NOON states, the
//! arcsine states a 50:50 splitter makes from twin-Fock input, and
//! entangled-coherent superpositions.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::binomial;
use crate::fock::TwoModeState;

/// Largest |α|² accepted by the coherent-state builders; keeps the Poisson
/// truncation cutoff (and with it sector sizes) bounded.
pub const MAX_MEAN_PHOTONS: f64 = 100.0;

/// Default bound on the discarded Poisson tail mass.
pub const DEFAULT_TAIL_EPSILON: f64 = 1e-12;

/// Coherent amplitude plus truncation tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentSpec {
    pub alpha: Complex64,
    pub tail_epsilon: f64,
}

impl CoherentSpec {
    pub fn new(alpha: Complex64) -> Self {
        Self {
            alpha,
            tail_epsilon: DEFAULT_TAIL_EPSILON,
        }
    }

    pub fn with_tail_epsilon(mut self, tail_epsilon: f64) -> Self {
        self.tail_epsilon = tail_epsilon;
        self
    }
}

/// NOON photon number and relative phase: (|N,0⟩ + e^{iΦ}|0,N⟩)/√2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoonSpec {
    pub n_photons: u32,
    pub phi_n: f64,
}

/// Truncated Poisson amplitude ladder for a single coherent mode:
/// c_n = e^{-|α|²/2} αⁿ/√(n!), cut at the smallest N with tail mass < ε.
/// Returns (amplitudes, discarded tail mass).
fn poisson_amplitudes(alpha: Complex64, tail_epsilon: f64) -> Result<(Vec<Complex64>, f64)> {
    if !(tail_epsilon > 0.0 && tail_epsilon < 1.0) {
        return Err(Error::BadTailEpsilon {
            value: tail_epsilon,
        });
    }
    let mean = alpha.norm_sqr();
    if mean > MAX_MEAN_PHOTONS {
        return Err(Error::AlphaTooLarge {
            mean_photons: mean,
            max: MAX_MEAN_PHOTONS,
        });
    }
    let mut amps = Vec::new();
    let mut c = Complex64::new((-mean / 2.0).exp(), 0.0);
    let mut cumulative = 0.0_f64;
    let mut n = 0u32;
    loop {
        amps.push(c);
        cumulative += c.norm_sqr();
        let tail = (1.0 - cumulative).max(0.0);
        if tail < tail_epsilon {
            return Ok((amps, tail));
        }
        // Underflowed past the peak: the true tail is below representable f64.
        if c.norm_sqr() == 0.0 && f64::from(n) > mean {
            return Ok((amps, tail));
        }
        n += 1;
        c *= alpha / f64::from(n).sqrt();
    }
}

/// Coherent state |α⟩ in mode a, vacuum in mode b, truncated by the tail
/// rule and renormalized. `truncation_loss` records the discarded mass.
pub fn coherent_vacuum(spec: CoherentSpec) -> Result<TwoModeState> {
    let (amps, tail) = poisson_amplitudes(spec.alpha, spec.tail_epsilon)?;
    let cutoff = (amps.len() - 1) as u32;
    let map: BTreeMap<(u32, u32), Complex64> = amps
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
        .map(|(n, c)| ((n as u32, 0), c))
        .collect();
    let state = TwoModeState::from_map(map, cutoff, 0.0).normalize()?;
    Ok(state.with_truncation_loss(tail))
}

/// Product number state |n_a, n_b⟩.
pub fn number_state(n_a: u32, n_b: u32) -> TwoModeState {
    let map = BTreeMap::from([((n_a, n_b), Complex64::new(1.0, 0.0))]);
    TwoModeState::from_map(map, n_a.saturating_add(n_b), 0.0)
}

/// Twin-Fock input |N, N⟩.
pub fn twin_fock(n: u32) -> Result<TwoModeState> {
    if n == 0 {
        return Err(Error::ZeroPhotons);
    }
    Ok(number_state(n, n))
}

/// NOON state (|N,0⟩ + e^{iΦ_N}|0,N⟩)/√2.
pub fn noon(spec: NoonSpec) -> Result<TwoModeState> {
    if spec.n_photons == 0 {
        return Err(Error::ZeroPhotons);
    }
    let n = spec.n_photons;
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let map = BTreeMap::from([
        ((n, 0), Complex64::new(inv, 0.0)),
        ((0, n), Complex64::from_polar(inv, spec.phi_n)),
    ]);
    Ok(TwoModeState::from_map(map, n, 0.0))
}

/// Default NOON relative phase used by sweeps: 0 for even N (cosine fringe),
/// π/2 for odd N (turns the sine fringe into a cosine-like one).
pub fn default_noon_phase(n: u32) -> f64 {
    if n.is_multiple_of(2) {
        0.0
    } else {
        FRAC_PI_2
    }
}

/// Coefficients A_k of the arcsine state Σ_k A_k |2k, 2N−2k⟩:
/// A_k = ((−1)^{N−k}/2^N) √(C(2k,k) C(2N−2k,N−k)).
#[derive(Debug, Clone, PartialEq)]
pub struct ArcsineCoefficients {
    n: u32,
    coefficients: Vec<f64>,
}

// C(2k, k) overflows f64 past k ≈ 514; stop well short of that.
const ARCSINE_MAX_N: u32 = 500;

impl ArcsineCoefficients {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPhotons);
        }
        if n > ARCSINE_MAX_N {
            return Err(Error::PhotonNumberTooLarge {
                n,
                max: ARCSINE_MAX_N,
            });
        }
        let scale = 2.0_f64.powi(-(n as i32));
        let coefficients = (0..=n)
            .map(|k| {
                let sign = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * scale * (binomial(2 * k, k) * binomial(2 * (n - k), n - k)).sqrt()
            })
            .collect();
        Ok(Self { n, coefficients })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// A_k for k = 0..=N.
    pub fn coefficient(&self, k: u32) -> f64 {
        self.coefficients[k as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.coefficients.iter().enumerate().map(|(k, &a)| (k as u32, a))
    }

    /// Joint probabilities |A_k|² on (2k, 2N−2k); the discrete arcsine law.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coefficients.iter().map(|a| a * a).collect()
    }
}

/// Arcsine state Σ_k A_k |2k, 2N−2k⟩ — what a real asymmetric 50:50
/// splitter produces from twin-Fock input |N, N⟩.
pub fn arcsine_state(n: u32) -> Result<TwoModeState> {
    let coeffs = ArcsineCoefficients::new(n)?;
    let map: BTreeMap<(u32, u32), Complex64> = coeffs
        .iter()
        .map(|(k, a)| ((2 * k, 2 * (n - k)), Complex64::new(a, 0.0)))
        .collect();
    Ok(TwoModeState::from_map(map, 2 * n, 0.0))
}

/// Entangled coherent superposition |α⟩_a|0⟩_b + e^{iφ_rel}|0⟩_a|αe^{iθ}⟩_b,
/// truncated by the tail rule and normalized numerically.
///
/// The branches overlap only at |0,0⟩; their interference there makes the
/// pre-normalization squared norm 2 + 2 cos(φ_rel) e^{−|α|²}, which can reach
/// 0 as α → 0 with φ_rel = π (rejected as `ZeroNorm`).
pub fn entangled_coherent(
    alpha: Complex64,
    rel_phase: f64,
    theta: f64,
    tail_epsilon: f64,
) -> Result<TwoModeState> {
    let (amps_a, tail_a) = poisson_amplitudes(alpha, tail_epsilon)?;
    let rotated = alpha * Complex64::from_polar(1.0, theta);
    let (amps_b, tail_b) = poisson_amplitudes(rotated, tail_epsilon)?;
    let branch_phase = Complex64::from_polar(1.0, rel_phase);

    let mut map: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
    for (n, &c) in amps_a.iter().enumerate() {
        map.insert((n as u32, 0), c);
    }
    for (m, &c) in amps_b.iter().enumerate() {
        *map.entry((0, m as u32)).or_default() += branch_phase * c;
    }
    map.retain(|_, c| *c != Complex64::new(0.0, 0.0));

    let cutoff = (amps_a.len().max(amps_b.len()) - 1) as u32;
    let raw = TwoModeState::from_map(map, cutoff, 0.0);
    // The two branches each carry unit norm, so anything this small is pure
    // destructive interference plus round-off, not a usable state.
    let norm_sqr = raw.norm_sqr();
    if norm_sqr < 1e-20 {
        return Err(Error::ZeroNorm {
            norm: norm_sqr.sqrt(),
        });
    }
    let normalized = raw.normalize()?;

    // Discarded mass of the normalized state: both branch tails, scaled by
    // the exact squared norm 2 + 2cos(φ_rel)e^{−|α|²} of the superposition.
    let exact_norm_sqr = 2.0 + 2.0 * rel_phase.cos() * (-alpha.norm_sqr()).exp();
    let loss = ((tail_a + tail_b) / exact_norm_sqr).min(1.0);
    Ok(normalized.with_truncation_loss(loss))
}
