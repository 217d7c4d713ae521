//! Sparse two-mode photon-number (Fock) states.
//!
//! A state is a map from occupation pairs (n_a, n_b) to complex amplitudes,
//! truncated at a per-state photon-number cutoff. All operations are pure:
//! they take states by reference and return new ones.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitudes with magnitude below this are dropped after unitary operations.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// Operations that require a normalized input accept norms within this
/// distance of 1.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Interferometer mode label: `A` is the upper arm, `B` the lower arm
/// (the one that carries the phase shift and the parity detector).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    A,
    B,
}

/// Pure two-mode state in the photon-number basis.
///
/// Keys are (n_a, n_b); absent keys are zero amplitudes. `truncation_loss`
/// tracks probability mass discarded by construction-time truncation and by
/// pruning, so downstream consumers can judge the quality of the expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    amplitudes: BTreeMap<(u32, u32), Complex64>,
    cutoff: u32,
    truncation_loss: f64,
}

impl TwoModeState {
    /// Build a state from explicit amplitudes. Zero amplitudes are dropped;
    /// keys beyond the cutoff are rejected.
    pub fn from_amplitudes<I>(amplitudes: I, cutoff: u32) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), Complex64)>,
    {
        let mut map = BTreeMap::new();
        for ((n_a, n_b), amp) in amplitudes {
            if n_a > cutoff || n_b > cutoff {
                return Err(Error::CutoffExceeded { n_a, n_b, cutoff });
            }
            if amp != Complex64::new(0.0, 0.0) {
                map.insert((n_a, n_b), amp);
            }
        }
        Ok(Self {
            amplitudes: map,
            cutoff,
            truncation_loss: 0.0,
        })
    }

    pub(crate) fn from_map(amplitudes: BTreeMap<(u32, u32), Complex64>, cutoff: u32, truncation_loss: f64) -> Self {
        Self {
            amplitudes,
            cutoff,
            truncation_loss,
        }
    }

    pub(crate) fn with_truncation_loss(mut self, loss: f64) -> Self {
        self.truncation_loss = loss;
        self
    }

    /// Amplitude at (n_a, n_b); zero if absent.
    pub fn amplitude(&self, n_a: u32, n_b: u32) -> Complex64 {
        self.amplitudes
            .get(&(n_a, n_b))
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Iterate stored (key, amplitude) pairs in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.amplitudes.iter()
    }

    /// Number of stored amplitudes.
    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Photon-number cutoff this state was built with.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Probability mass discarded by truncation and pruning.
    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    /// Squared norm Σ |c|².
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Rescale to unit norm. Fails on (numerically) empty states.
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if !(norm > 1e-150) {
            return Err(Error::ZeroNorm { norm });
        }
        let inv = 1.0 / norm;
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(&k, &c)| (k, c * inv))
            .collect();
        Ok(Self {
            amplitudes,
            cutoff: self.cutoff,
            truncation_loss: self.truncation_loss,
        })
    }

    /// Error unless the norm is within `NORM_TOLERANCE` of 1.
    pub fn check_normalized(&self) -> Result<()> {
        let deviation = (self.norm() - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                deviation,
                tolerance: NORM_TOLERANCE,
            });
        }
        Ok(())
    }

    /// Hermitian inner product ⟨self|other⟩ over the union of keys.
    pub fn inner_product(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .map(|(k, c)| c.conj() * other.amplitudes.get(k).copied().unwrap_or_default())
            .sum()
    }

    /// Expectation Σ w(n_a, n_b) |c|² of an observable diagonal in the
    /// number basis. Requires a normalized state.
    pub fn expectation_diagonal<W>(&self, weight: W) -> Result<f64>
    where
        W: Fn(u32, u32) -> f64,
    {
        self.check_normalized()?;
        Ok(self
            .amplitudes
            .iter()
            .map(|(&(n_a, n_b), c)| weight(n_a, n_b) * c.norm_sqr())
            .sum())
    }

    /// Mean photon number in one mode.
    pub fn mean_photon(&self, mode: Mode) -> Result<f64> {
        self.expectation_diagonal(|n_a, n_b| match mode {
            Mode::A => f64::from(n_a),
            Mode::B => f64::from(n_b),
        })
    }

    /// Mean total photon number ⟨n_a + n_b⟩.
    pub fn mean_total_photons(&self) -> Result<f64> {
        self.expectation_diagonal(|n_a, n_b| f64::from(n_a) + f64::from(n_b))
    }

    /// Drop amplitudes with magnitude below `threshold`, folding the removed
    /// probability mass into `truncation_loss`.
    pub fn prune(&self, threshold: f64) -> Self {
        let mut dropped = 0.0;
        let amplitudes: BTreeMap<_, _> = self
            .amplitudes
            .iter()
            .filter_map(|(&k, &c)| {
                if c.norm() < threshold {
                    dropped += c.norm_sqr();
                    None
                } else {
                    Some((k, c))
                }
            })
            .collect();
        Self {
            amplitudes,
            cutoff: self.cutoff,
            truncation_loss: self.truncation_loss + dropped,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn from_amplitudes_rejects_beyond_cutoff() {
        let err = TwoModeState::from_amplitudes([((3, 0), c(1.0, 0.0))], 2).unwrap_err();
        assert_eq!(
            err,
            Error::CutoffExceeded {
                n_a: 3,
                n_b: 0,
                cutoff: 2
            }
        );
    }

    #[test]
    fn normalize_hits_unit_norm() {
        let s = TwoModeState::from_amplitudes([((0, 0), c(3.0, 0.0)), ((1, 1), c(0.0, 4.0))], 2)
            .unwrap();
        assert!((s.norm() - 5.0).abs() < 1e-12);
        let n = s.normalize().unwrap();
        assert!((n.norm() - 1.0).abs() < 1e-12);
        assert!((n.amplitude(0, 0).re - 0.6).abs() < 1e-15);
        assert!((n.amplitude(1, 1).im - 0.8).abs() < 1e-15);
    }

    #[test]
    fn normalize_rejects_zero_state() {
        let s = TwoModeState::from_amplitudes([], 1).unwrap();
        assert!(matches!(s.normalize(), Err(Error::ZeroNorm { .. })));
    }

    #[test]
    fn inner_product_of_state_with_itself_is_norm_sqr() {
        let s = TwoModeState::from_amplitudes(
            [((0, 1), c(0.5, -0.25)), ((2, 0), c(-0.125, 0.75))],
            2,
        )
        .unwrap();
        let ip = s.inner_product(&s);
        assert!((ip.re - s.norm_sqr()).abs() < 1e-15);
        assert!(ip.im.abs() < 1e-15);
    }

    #[test]
    fn inner_product_is_conjugate_symmetric() {
        let s = TwoModeState::from_amplitudes([((0, 0), c(0.6, 0.0)), ((1, 0), c(0.0, 0.8))], 1)
            .unwrap();
        let t = TwoModeState::from_amplitudes([((0, 0), c(0.0, 1.0)), ((1, 0), c(0.5, 0.5))], 1)
            .unwrap();
        let st = s.inner_product(&t);
        let ts = t.inner_product(&s);
        assert!((st - ts.conj()).norm() < 1e-15);
    }

    #[test]
    fn expectation_requires_normalized_input() {
        let s = TwoModeState::from_amplitudes([((0, 0), c(2.0, 0.0))], 0).unwrap();
        assert!(matches!(
            s.expectation_diagonal(|_, _| 1.0),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn mean_photon_per_mode() {
        // (|1,0> + |0,2>)/sqrt(2)
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let s = TwoModeState::from_amplitudes(
            [((1, 0), c(inv, 0.0)), ((0, 2), c(0.0, inv))],
            2,
        )
        .unwrap();
        assert!((s.mean_photon(Mode::A).unwrap() - 0.5).abs() < 1e-12);
        assert!((s.mean_photon(Mode::B).unwrap() - 1.0).abs() < 1e-12);
        assert!((s.mean_total_photons().unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn prune_tracks_dropped_mass() {
        let s = TwoModeState::from_amplitudes(
            [((0, 0), c(1.0, 0.0)), ((1, 1), c(1e-16, 0.0))],
            2,
        )
        .unwrap();
        let p = s.prune(1e-15);
        assert_eq!(p.len(), 1);
        assert!((p.truncation_loss() - 1e-32).abs() < 1e-40);
    }
}
