//! Passive optical elements: 50:50 beam splitters, phase shifters, and the
//! Mach-Zehnder pipeline built from them.
//!
//! Beam splitters conserve total photon number, so their action is block
//! diagonal over fixed-total sectors. For each (convention, sector) pair we
//! build the dense basis-change matrix once and cache it. The matrix column
//! for input |N, M⟩ with N + M = n comes from expanding the transformed
//! creation-operator monomial: substitute a† and b† by the convention's
//! linear combinations of output-mode operators, expand binomially, and read
//! off the coefficient of each |p, n−p⟩.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{Mode, TwoModeState, PRUNE_THRESHOLD};
use crate::math::pascal_rows;

/// Largest fixed-total photon sector the dense splitter algorithm accepts;
/// keeps binomial intermediates comfortably inside f64 range and bounds the
/// (n+1)² matrix allocation.
pub const MAX_SECTOR_PHOTONS: u32 = 512;

/// Phase convention of a lossless 50:50 beam splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeamSplitterConvention {
    /// Reflection picks up a factor i:
    /// a† ↦ (a′† + i b′†)/√2, b† ↦ (b′† + i a′†)/√2.
    IReflect,
    /// Real, asymmetric splitter:
    /// a† ↦ (a′† − b′†)/√2, b† ↦ (a′† + b′†)/√2.
    RealAsymmetric,
}

impl BeamSplitterConvention {
    /// Coefficients (u_aa, u_ab, u_ba, u_bb) of the creation-operator
    /// substitution a† ↦ (u_aa a′† + u_ab b′†)/√2, b† ↦ (u_ba a′† + u_bb b′†)/√2.
    fn coefficients(self) -> [Complex64; 4] {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            BeamSplitterConvention::IReflect => [one, i, i, one],
            BeamSplitterConvention::RealAsymmetric => [one, -one, one, one],
        }
    }
}

/// Mach-Zehnder layout: which splitter convention sits at each port.
///
/// The phase shift always acts on arm b, between the two splitters; mirror
/// phases are equal on both arms and therefore dropped as a global phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MziConfig {
    pub bs1: BeamSplitterConvention,
    pub bs2: BeamSplitterConvention,
}

impl Default for MziConfig {
    /// Both splitters in the i-reflect convention.
    fn default() -> Self {
        Self {
            bs1: BeamSplitterConvention::IReflect,
            bs2: BeamSplitterConvention::IReflect,
        }
    }
}

/// Dense (n+1)×(n+1) sector matrix, row-major: `m[p * (n+1) + na]` is the
/// amplitude of |p, n−p⟩ in the image of |na, n−na⟩.
type SectorMatrix = Arc<Vec<Complex64>>;

fn sector_cache() -> &'static Mutex<HashMap<(BeamSplitterConvention, u32), SectorMatrix>> {
    static CACHE: OnceLock<Mutex<HashMap<(BeamSplitterConvention, u32), SectorMatrix>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Fetch (building and caching if needed) the sector matrix for total photon
/// number `n` under `convention`.
fn sector_matrix(convention: BeamSplitterConvention, n: u32) -> SectorMatrix {
    if let Some(m) = sector_cache().lock().unwrap().get(&(convention, n)) {
        return Arc::clone(m);
    }
    let built = Arc::new(build_sector_matrix(convention, n));
    let mut cache = sector_cache().lock().unwrap();
    Arc::clone(cache.entry((convention, n)).or_insert(built))
}

fn build_sector_matrix(convention: BeamSplitterConvention, n: u32) -> Vec<Complex64> {
    let [u_aa, u_ab, u_ba, u_bb] = convention.coefficients();
    let dim = n as usize + 1;
    let binom = pascal_rows(n);
    let half_pow = 2.0_f64.powi(-(n as i32)); // 1/2^n
    let mut matrix = vec![Complex64::new(0.0, 0.0); dim * dim];

    // Precompute small integer powers of the four coefficients.
    let pow = |base: Complex64| -> Vec<Complex64> {
        let mut v = Vec::with_capacity(dim);
        let mut acc = Complex64::new(1.0, 0.0);
        for _ in 0..dim {
            v.push(acc);
            acc *= base;
        }
        v
    };
    let (p_aa, p_ab, p_ba, p_bb) = (pow(u_aa), pow(u_ab), pow(u_ba), pow(u_bb));

    for big_n in 0..=n {
        let big_m = n - big_n;
        for p in 0..=n {
            // Sum over ways to put j output-a photons from the a†-factor and
            // p-j from the b†-factor.
            let j_lo = p.saturating_sub(big_m);
            let j_hi = big_n.min(p);
            if j_lo > j_hi {
                continue;
            }
            let mut sum = Complex64::new(0.0, 0.0);
            for j in j_lo..=j_hi {
                let weight = binom[big_n as usize][j as usize] * binom[big_m as usize][(p - j) as usize];
                let phase = p_aa[j as usize]
                    * p_ab[(big_n - j) as usize]
                    * p_ba[(p - j) as usize]
                    * p_bb[(big_m - (p - j)) as usize];
                sum += phase * weight;
            }
            // √(p! q! / (2^n N! M!)) rewritten with binomials only:
            // p! q!/(N! M!) = C(n, N)/C(n, p).
            let prefactor = (binom[n as usize][big_n as usize] * half_pow
                / binom[n as usize][p as usize])
                .sqrt();
            matrix[p as usize * dim + big_n as usize] = sum * prefactor;
        }
    }
    matrix
}

/// Apply a 50:50 beam splitter to a normalized state.
///
/// Total photon number is conserved: each fixed-total sector is transformed
/// by its cached unitary block. Output amplitudes below `PRUNE_THRESHOLD`
/// are dropped into the truncation-loss ledger.
pub fn beam_splitter(
    state: &TwoModeState,
    convention: BeamSplitterConvention,
) -> Result<TwoModeState> {
    state.check_normalized()?;

    // Gather the input sector by sector.
    let mut sectors: BTreeMap<u32, Vec<(u32, Complex64)>> = BTreeMap::new();
    for (&(n_a, n_b), &amp) in state.iter() {
        let n = n_a.saturating_add(n_b);
        if n > MAX_SECTOR_PHOTONS {
            return Err(Error::PhotonNumberTooLarge {
                n,
                max: MAX_SECTOR_PHOTONS,
            });
        }
        sectors.entry(n).or_default().push((n_a, amp));
    }

    let mut out: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
    for (&n, entries) in &sectors {
        let dim = n as usize + 1;
        let matrix = sector_matrix(convention, n);
        let mut input = vec![Complex64::new(0.0, 0.0); dim];
        for &(n_a, amp) in entries {
            input[n_a as usize] = amp;
        }
        for p in 0..dim {
            let row = &matrix[p * dim..(p + 1) * dim];
            let mut acc = Complex64::new(0.0, 0.0);
            for (m_pn, inp) in row.iter().zip(&input) {
                acc += m_pn * inp;
            }
            if acc != Complex64::new(0.0, 0.0) {
                out.insert((p as u32, n - p as u32), acc);
            }
        }
    }

    Ok(TwoModeState::from_map(out, state.cutoff(), state.truncation_loss()).prune(PRUNE_THRESHOLD))
}

/// Apply the phase shifter e^{i φ n̂} to one mode.
pub fn phase_shift(state: &TwoModeState, phi: f64, mode: Mode) -> TwoModeState {
    let map = state
        .iter()
        .map(|(&(n_a, n_b), &amp)| {
            let n = match mode {
                Mode::A => n_a,
                Mode::B => n_b,
            };
            let rot = Complex64::from_polar(1.0, f64::from(n) * phi);
            ((n_a, n_b), amp * rot)
        })
        .collect();
    TwoModeState::from_map(map, state.cutoff(), state.truncation_loss())
}

/// Full Mach-Zehnder interferometer: first splitter, phase φ on arm b,
/// second splitter. Mirror phases are global and omitted.
pub fn mzi(input: &TwoModeState, phi: f64, config: MziConfig) -> Result<TwoModeState> {
    let after_bs1 = beam_splitter(input, config.bs1)?;
    let shifted = phase_shift(&after_bs1, phi, Mode::B);
    beam_splitter(&shifted, config.bs2)
}

/// Interferometer fed directly with a NOON state: phase φ on arm b followed
/// by a single i-reflect splitter. The input must have exactly two nonzero
/// amplitudes, at (N, 0) and (0, N) with N ≥ 1.
pub fn magic_interferometer_output(noon_state: &TwoModeState, phi: f64) -> Result<TwoModeState> {
    let keys: Vec<(u32, u32)> = noon_state.iter().map(|(&k, _)| k).collect();
    let is_noon = match keys.as_slice() {
        // BTreeMap order puts (0, N) before (N, 0).
        [(0, n1), (n2, 0)] => n1 == n2 && *n1 >= 1,
        _ => false,
    };
    if !is_noon {
        return Err(Error::NotNoonForm);
    }
    let shifted = phase_shift(noon_state, phi, Mode::B);
    beam_splitter(&shifted, BeamSplitterConvention::IReflect)
}
