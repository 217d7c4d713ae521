//! Phase-uncertainty estimation by error propagation, shot-noise and
//! Heisenberg baselines, and sweep drivers over phase grids and photon
//! numbers.
//!
//! Sweeps are embarrassingly parallel over grid points; with the `parallel`
//! feature (on by default) they fan out over a rayon pool, otherwise they
//! run sequentially with identical results.

use crate::detection::{measure, snr, Observable, ObservableResult};
use crate::elements::{mzi, MziConfig};
use crate::error::{Error, Result};
use crate::fock::TwoModeState;
use crate::states::twin_fock;

/// Derivative magnitudes below 1e−12·max(1, √variance) are treated as
/// stationary: the error-propagation estimate diverges there.
pub const DIVERGENCE_THRESHOLD: f64 = 1e-12;

/// Multiplier on the machine-epsilon noise floor of the central difference.
/// A two-point difference of means computed to relative accuracy ε cannot
/// resolve derivatives below ~ε·|mean|/(2h); anything under this floor is
/// round-off, not signal, and is flagged as diverged as well.
pub const NOISE_FLOOR_FACTOR: f64 = 1024.0;

/// Default central-difference step 1e−5 / max(1, N_total): small enough for
/// O(h²) bias to vanish at the fastest fringe frequency ~N_total.
pub fn default_step(n_total: f64) -> f64 {
    1e-5 / n_total.max(1.0)
}

/// Largest usable step: a quarter period of the fastest fringe, π/(4·N).
pub fn max_step(n_total: f64) -> f64 {
    std::f64::consts::PI / (4.0 * n_total.max(1.0))
}

/// Shot-noise (standard quantum) limit 1/√N for N total photons.
pub fn sql_baseline(n_total: f64) -> Result<f64> {
    if !(n_total > 0.0) {
        return Err(Error::NonpositivePhotons { n_total });
    }
    Ok(1.0 / n_total.sqrt())
}

/// Heisenberg limit 1/N for N total photons.
pub fn hl_baseline(n_total: f64) -> Result<f64> {
    if !(n_total > 0.0) {
        return Err(Error::NonpositivePhotons { n_total });
    }
    Ok(1.0 / n_total)
}

/// Error-propagation estimate Δφ = √Var(O) / |d⟨O⟩/dφ| at one working point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    /// Working point the estimate was taken at.
    pub phi: f64,
    /// Δφ; +∞ when `diverged`.
    pub delta_phi: f64,
    /// Central-difference estimate of d⟨O⟩/dφ.
    pub derivative: f64,
    /// Step actually used.
    pub step: f64,
    /// True when the derivative is indistinguishable from zero (stationary
    /// point or below the finite-difference noise floor).
    pub diverged: bool,
    /// Mean total photon number of the probe state.
    pub n_total: f64,
    /// Shot-noise limit 1/√N_total.
    pub sql: f64,
    /// Heisenberg limit 1/N_total.
    pub hl: f64,
    /// Signal mean at φ.
    pub mean: f64,
    /// Signal variance at φ.
    pub variance: f64,
}

/// Estimate the phase uncertainty of `observable` on the state family
/// `prepare(φ)` at working point `phi`.
///
/// `step` is the central-difference step; `None` picks
/// `default_step(N_total)`. Steps outside (0, π/(4·N_total)] are rejected
/// as `DegenerateStep` (the signal would be undersampled).
pub fn phase_uncertainty<P>(
    prepare: P,
    observable: Observable,
    phi: f64,
    step: Option<f64>,
) -> Result<UncertaintyReport>
where
    P: Fn(f64) -> Result<TwoModeState>,
{
    let state = prepare(phi)?;
    let at_phi = measure(&state, observable)?;
    let n_total = state.mean_total_photons()?;

    let h = step.unwrap_or_else(|| default_step(n_total));
    let h_max = max_step(n_total);
    if !(h > 0.0) || h > h_max {
        return Err(Error::DegenerateStep { step: h, max: h_max });
    }

    let mean_plus = measure(&prepare(phi + h)?, observable)?.mean;
    let mean_minus = measure(&prepare(phi - h)?, observable)?.mean;
    let derivative = (mean_plus - mean_minus) / (2.0 * h);

    let sigma = at_phi.variance.sqrt();
    let stationary = DIVERGENCE_THRESHOLD * sigma.max(1.0);
    let noise_floor = NOISE_FLOOR_FACTOR * f64::EPSILON * mean_plus.abs().max(mean_minus.abs()).max(1.0)
        / (2.0 * h);
    let diverged = derivative.abs() < stationary.max(noise_floor) || sigma == 0.0;
    let delta_phi = if diverged {
        f64::INFINITY
    } else {
        sigma / derivative.abs()
    };

    Ok(UncertaintyReport {
        phi,
        delta_phi,
        derivative,
        step: h,
        diverged,
        n_total,
        sql: sql_baseline(n_total)?,
        hl: hl_baseline(n_total)?,
        mean: at_phi.mean,
        variance: at_phi.variance,
    })
}

/// Descriptive metadata attached to a sweep result.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepMeta {
    /// Human-readable state-family description, e.g. "noon 4".
    pub family: String,
    pub observable: Observable,
}

/// One sweep row: abscissa (φ or 2N), signal moments, and — for
/// uncertainty sweeps — the full error-propagation report.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub mean: f64,
    pub variance: f64,
    pub uncertainty: Option<UncertaintyReport>,
}

impl SweepRow {
    /// Signal-to-noise ratio of this row's moments.
    pub fn snr(&self, observable: Observable) -> f64 {
        snr(&ObservableResult {
            mean: self.mean,
            variance: self.variance,
            observable,
        })
    }
}

/// Deterministic sweep result: rows sorted by strictly increasing abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub meta: SweepMeta,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Build a table, enforcing nonempty rows with strictly increasing x.
    pub fn new(meta: SweepMeta, rows: Vec<SweepRow>) -> Result<Self> {
        if rows.is_empty() || rows.windows(2).any(|w| !(w[0].x < w[1].x)) {
            return Err(Error::InvalidGrid);
        }
        Ok(Self { meta, rows })
    }
}

/// Evenly spaced grid of `steps` points from `min` to `max` inclusive.
pub fn phi_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 || !(max > min) || !min.is_finite() || !max.is_finite() {
        return Err(Error::InvalidGrid);
    }
    let span = max - min;
    let denom = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| min + span * (i as f64) / denom)
        .collect())
}

#[cfg(feature = "parallel")]
fn map_grid<X, T, F>(xs: &[X], f: F) -> Vec<T>
where
    X: Sync,
    T: Send,
    F: Fn(&X) -> T + Sync + Send,
{
    use rayon::prelude::*;
    xs.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_grid<X, T, F>(xs: &[X], f: F) -> Vec<T>
where
    F: Fn(&X) -> T,
{
    xs.iter().map(f).collect()
}

/// Evaluate an observable over a phase grid for the family `prepare(φ)`.
pub fn sweep_signal<P>(
    prepare: P,
    grid: &[f64],
    observable: Observable,
    family: impl Into<String>,
) -> Result<SweepTable>
where
    P: Fn(f64) -> Result<TwoModeState> + Sync,
{
    if grid.is_empty() || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid);
    }
    let rows: Vec<Result<SweepRow>> = map_grid(grid, |&phi| {
        let r = measure(&prepare(phi)?, observable)?;
        Ok(SweepRow {
            x: phi,
            mean: r.mean,
            variance: r.variance,
            uncertainty: None,
        })
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    SweepTable::new(
        SweepMeta {
            family: family.into(),
            observable,
        },
        rows,
    )
}

/// Parity phase uncertainty of the twin-Fock interferometer at working point
/// `phi`, for each N in `n_values` (abscissa 2N = total photons).
pub fn sweep_uncertainty(
    n_values: &[u32],
    phi: f64,
    config: MziConfig,
    step: Option<f64>,
) -> Result<SweepTable> {
    if n_values.is_empty() || n_values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid);
    }
    let rows: Vec<Result<SweepRow>> = map_grid(n_values, |&n| {
        let input = twin_fock(n)?;
        let report = phase_uncertainty(
            |phi| mzi(&input, phi, config),
            Observable::ParityB,
            phi,
            step,
        )?;
        Ok(SweepRow {
            x: 2.0 * f64::from(n),
            mean: report.mean,
            variance: report.variance,
            uncertainty: Some(report),
        })
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    SweepTable::new(
        SweepMeta {
            family: "twin".into(),
            observable: Observable::ParityB,
        },
        rows,
    )
}
