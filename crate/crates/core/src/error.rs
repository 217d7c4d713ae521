use thiserror::Error;

/// Everything that can go wrong when building states, applying optical
/// elements, or running estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Norm too small to divide out; the state has no usable amplitude content.
    #[error("state norm {norm:e} is too small to normalize")]
    ZeroNorm { norm: f64 },

    /// An operation requiring a normalized input was handed one that is not.
    #[error("state is not normalized: |norm - 1| = {deviation:e} exceeds tolerance {tolerance:e}")]
    NotNormalized { deviation: f64, tolerance: f64 },

    /// An amplitude was placed at a photon number beyond the state's cutoff.
    #[error("amplitude at ({n_a}, {n_b}) exceeds photon-number cutoff {cutoff}")]
    CutoffExceeded { n_a: u32, n_b: u32, cutoff: u32 },

    /// Coherent amplitude so large the truncation cutoff would be unreasonable.
    #[error("mean photon number {mean_photons} exceeds supported maximum {max}")]
    AlphaTooLarge { mean_photons: f64, max: f64 },

    /// Truncation tail bound outside (0, 1).
    #[error("tail epsilon {value:e} must lie strictly between 0 and 1")]
    BadTailEpsilon { value: f64 },

    /// Input must have exactly two nonzero amplitudes, at (N, 0) and (0, N).
    #[error("input is not a NOON state: expected exactly two nonzero amplitudes at (N, 0) and (0, N)")]
    NotNoonForm,

    /// Photon-number parameter that must be at least 1 was 0.
    #[error("photon number must be at least 1")]
    ZeroPhotons,

    /// Photon number beyond what the dense per-sector algorithms can handle
    /// without overflowing f64 binomial products.
    #[error("photon number {n} exceeds supported maximum {max}")]
    PhotonNumberTooLarge { n: u32, max: u32 },

    /// Finite-difference step outside the usable range for this signal.
    #[error("finite-difference step {step:e} outside (0, {max:e}]; signal would be undersampled")]
    DegenerateStep { step: f64, max: f64 },

    /// Sweep abscissae must be nonempty and strictly increasing.
    #[error("grid must be nonempty and strictly increasing")]
    InvalidGrid,

    /// Baseline limits 1/sqrt(n) and 1/n need a positive photon number.
    #[error("total photon number {n_total} must be positive for baseline limits")]
    NonpositivePhotons { n_total: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
