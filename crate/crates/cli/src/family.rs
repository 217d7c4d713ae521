//! State-family spec strings and the interferometer pipeline each family
//! runs through.
//!
//! Families split in two groups. `coherent`, `number`, and `twin` describe
//! light entering the first splitter, so a sweep sends them through the full
//! Mach-Zehnder chain. `noon`, `arcsine`, and `entangled` describe states
//! already inside the interferometer arms, so a sweep applies only the phase
//! and the output splitter. The `sigma_n` projector looks for (N,0)/(0,N)
//! coherence, which the output splitter would scramble, so that observable
//! is always evaluated before it.

use mzparity::{
    arcsine_state, beam_splitter, coherent_vacuum, default_noon_phase, entangled_coherent, noon,
    number_state, phase_shift, pinned_twin_fock_config, twin_fock, BeamSplitterConvention,
    CoherentSpec, Complex64, Mode, MziConfig, NoonSpec, Observable, TwoModeState,
};

use crate::CliError;

pub const FAMILY_GRAMMAR: &str =
    "coherent | number <n_a> <n_b> | twin | noon | arcsine | entangled [theta]";

/// Parsed `--family` spec.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Coherent,
    Number { n_a: u32, n_b: u32 },
    Twin,
    Noon,
    Arcsine,
    Entangled { theta: f64 },
}

impl Family {
    /// Parse a spec like "coherent", "number 2 3", or "entangled 1.5708".
    pub fn parse(spec: &str) -> Result<Self, String> {
        let mut tokens = spec.split_whitespace();
        let name = tokens.next().unwrap_or("");
        let rest: Vec<&str> = tokens.collect();
        let no_args = |family: Family| {
            if rest.is_empty() {
                Ok(family)
            } else {
                Err(format!("--family: '{name}' takes no arguments"))
            }
        };
        match name {
            "coherent" => no_args(Family::Coherent),
            "twin" => no_args(Family::Twin),
            "noon" => no_args(Family::Noon),
            "arcsine" => no_args(Family::Arcsine),
            "number" => match rest.as_slice() {
                [a, b] => Ok(Family::Number {
                    n_a: a
                        .parse()
                        .map_err(|_| format!("--family: bad photon count '{a}'"))?,
                    n_b: b
                        .parse()
                        .map_err(|_| format!("--family: bad photon count '{b}'"))?,
                }),
                _ => Err("--family: 'number' needs exactly two photon counts, e.g. 'number 2 3'"
                    .into()),
            },
            "entangled" => match rest.as_slice() {
                [] => Ok(Family::Entangled { theta: 0.0 }),
                [t] => Ok(Family::Entangled {
                    theta: t
                        .parse()
                        .map_err(|_| format!("--family: bad branch rotation '{t}'"))?,
                }),
                _ => Err(
                    "--family: 'entangled' takes at most one argument (branch rotation, radians)"
                        .into(),
                ),
            },
            _ => Err(format!(
                "--family: unknown family '{name}'; expected {FAMILY_GRAMMAR}"
            )),
        }
    }

    /// Label used in sweep metadata and JSON output.
    pub fn label(&self) -> String {
        match self {
            Family::Coherent => "coherent".into(),
            Family::Number { n_a, n_b } => format!("number {n_a} {n_b}"),
            Family::Twin => "twin".into(),
            Family::Noon => "noon".into(),
            Family::Arcsine => "arcsine".into(),
            Family::Entangled { .. } => "entangled".into(),
        }
    }

    /// True for families prepared inside the interferometer, whose pipeline
    /// has no input splitter.
    pub fn starts_inside(&self) -> bool {
        matches!(
            self,
            Family::Noon | Family::Arcsine | Family::Entangled { .. }
        )
    }

    /// Splitter conventions used when `--bs1`/`--bs2` are not given. The
    /// twin-Fock family defaults to the pair under which its parity fringe
    /// is the Legendre signal P_N(cos 2φ); everything else uses i-reflect
    /// on both ports.
    pub fn default_conventions(&self) -> MziConfig {
        match self {
            Family::Twin => pinned_twin_fock_config(),
            _ => MziConfig::default(),
        }
    }
}

/// Flag values consumed by the state builders.
#[derive(Debug, Clone, Copy)]
pub struct StateParams {
    pub n: Option<u32>,
    pub alpha: Option<Complex64>,
    pub phi_n: Option<f64>,
    pub tail_epsilon: f64,
}

/// Build the family's prepared state from its parameters.
pub fn build_state(family: Family, params: &StateParams) -> Result<TwoModeState, CliError> {
    let need_n = |name: &str| {
        params
            .n
            .ok_or_else(|| CliError::Config(format!("--n is required for family '{name}'")))
    };
    let need_alpha = |name: &str| {
        params
            .alpha
            .ok_or_else(|| CliError::Config(format!("--alpha is required for family '{name}'")))
    };
    let state = match family {
        Family::Coherent => coherent_vacuum(
            CoherentSpec::new(need_alpha("coherent")?).with_tail_epsilon(params.tail_epsilon),
        )?,
        Family::Number { n_a, n_b } => number_state(n_a, n_b),
        Family::Twin => twin_fock(need_n("twin")?)?,
        Family::Noon => {
            let n = need_n("noon")?;
            noon(NoonSpec {
                n_photons: n,
                phi_n: params.phi_n.unwrap_or_else(|| default_noon_phase(n)),
            })?
        }
        Family::Arcsine => arcsine_state(need_n("arcsine")?)?,
        Family::Entangled { theta } => entangled_coherent(
            need_alpha("entangled")?,
            params.phi_n.unwrap_or(0.0),
            theta,
            params.tail_epsilon,
        )?,
    };
    Ok(state)
}

/// Pipeline for one working point: input splitter (skipped for families
/// prepared inside), phase φ on arm b, output splitter (skipped for the
/// pre-splitter Σ_N projector).
pub fn propagate(
    family: Family,
    input: &TwoModeState,
    phi: f64,
    config: MziConfig,
    observable: Observable,
) -> mzparity::Result<TwoModeState> {
    let mid = if family.starts_inside() {
        input.clone()
    } else {
        beam_splitter(input, config.bs1)?
    };
    let shifted = phase_shift(&mid, phi, Mode::B);
    if matches!(observable, Observable::SigmaN(_)) {
        Ok(shifted)
    } else {
        beam_splitter(&shifted, config.bs2)
    }
}

/// Parse a `--bs1`/`--bs2` value.
pub fn parse_convention(s: &str) -> Result<BeamSplitterConvention, String> {
    match s {
        "ireflect" => Ok(BeamSplitterConvention::IReflect),
        "real" => Ok(BeamSplitterConvention::RealAsymmetric),
        _ => Err(format!(
            "unknown splitter convention '{s}'; expected 'ireflect' or 'real'"
        )),
    }
}

/// Resolve an `--observable` name, attaching `--n` for the projector.
pub fn parse_observable(name: &str, n: Option<u32>) -> Result<Observable, CliError> {
    match name {
        "j" => Ok(Observable::J),
        "j2" => Ok(Observable::JSquared),
        "parity_b" => Ok(Observable::ParityB),
        "sigma_n" => n.map(Observable::SigmaN).ok_or_else(|| {
            CliError::Config("--observable sigma_n requires --n (projector photon number)".into())
        }),
        _ => Err(CliError::Config(format!(
            "--observable: unknown observable '{name}'; expected j, j2, parity_b, or sigma_n"
        ))),
    }
}

/// Parse an `--n` list spec: "4", "1..20" (inclusive), or "2,4,8".
pub fn parse_n_list(spec: &str) -> Result<Vec<u32>, CliError> {
    let parse_one = |tok: &str| -> Result<u32, CliError> {
        tok.trim()
            .parse()
            .map_err(|_| CliError::Config(format!("--n: bad photon number '{}'", tok.trim())))
    };
    let values: Vec<u32> = if let Some((lo, hi)) = spec.split_once("..") {
        let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
        if lo > hi {
            return Err(CliError::Config(format!("--n: empty range {lo}..{hi}")));
        }
        (lo..=hi).collect()
    } else if spec.contains(',') {
        spec.split(',').map(parse_one).collect::<Result<_, _>>()?
    } else {
        vec![parse_one(spec)?]
    };
    if values.contains(&0) {
        return Err(CliError::Config("--n: photon numbers must be at least 1".into()));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Config("--n: values must be strictly increasing".into()));
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_specs_parse() {
        assert_eq!(Family::parse("coherent"), Ok(Family::Coherent));
        assert_eq!(
            Family::parse("number 2 3"),
            Ok(Family::Number { n_a: 2, n_b: 3 })
        );
        assert_eq!(Family::parse(" twin "), Ok(Family::Twin));
        assert_eq!(
            Family::parse("entangled 0.5"),
            Ok(Family::Entangled { theta: 0.5 })
        );
        assert!(Family::parse("squeezed").is_err());
        assert!(Family::parse("number 2").is_err());
        assert!(Family::parse("noon 3").is_err());
        assert!(Family::parse("").is_err());
    }

    #[test]
    fn n_list_specs_parse() {
        assert_eq!(parse_n_list("4").unwrap(), vec![4]);
        assert_eq!(parse_n_list("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_n_list("2,4,8").unwrap(), vec![2, 4, 8]);
        assert!(parse_n_list("").is_err());
        assert!(parse_n_list("5..3").is_err());
        assert!(parse_n_list("0..3").is_err());
        assert!(parse_n_list("2,2").is_err());
        assert!(parse_n_list("8,4").is_err());
    }

    #[test]
    fn observable_names_resolve() {
        assert_eq!(parse_observable("j", None).unwrap(), Observable::J);
        assert_eq!(parse_observable("j2", None).unwrap(), Observable::JSquared);
        assert_eq!(
            parse_observable("parity_b", None).unwrap(),
            Observable::ParityB
        );
        assert_eq!(
            parse_observable("sigma_n", Some(4)).unwrap(),
            Observable::SigmaN(4)
        );
        assert!(parse_observable("sigma_n", None).is_err());
        assert!(parse_observable("parity", None).is_err());
    }
}
