//! `mzparity` — data generator for two-mode parity-detection interferometry.
//!
//! Subcommands: `state` (dump a prepared state), `signal` (observable sweep
//! over a phase grid), `uncertainty` (phase-uncertainty table for twin-Fock
//! parity detection), `joint` (joint photon-number distribution), and
//! `verify` (closed-form verification suite).
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 numerical failure. `RAYON_NUM_THREADS` bounds the sweep worker pool;
//! no other environment variable is consulted.

mod family;
mod output;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use family::{
    build_state, parse_convention, parse_n_list, parse_observable, propagate, Family, StateParams,
};
use mzparity::{
    joint_distribution, phi_grid, run_verification, sweep_signal, sweep_uncertainty,
    BeamSplitterConvention, Complex64, Error, MziConfig,
};
use output::Format;

#[derive(Parser)]
#[command(
    name = "mzparity",
    version,
    about = "Two-mode interferometry data generator with photon-number parity detection",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 configuration error, \
                  3 numerical failure.\n\
                  RAYON_NUM_THREADS bounds the sweep worker pool; no other environment \
                  variable is read."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prepared state's amplitudes and probabilities
    State(StateArgs),
    /// Sweep an observable's mean, variance, and SNR over a phase grid
    Signal(SignalArgs),
    /// Phase-uncertainty vs photon-number table for twin-Fock parity detection
    Uncertainty(UncertaintyArgs),
    /// Joint photon-number distribution of a prepared state
    Joint(JointArgs),
    /// Run the closed-form verification suite and report each check
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FamilyFlags {
    /// State family: coherent | number <n_a> <n_b> | twin | noon | arcsine | entangled [theta]
    #[arg(long)]
    family: String,

    /// Photon number N (per mode for twin, total for noon/arcsine, projector size for sigma_n)
    #[arg(long)]
    n: Option<u32>,

    /// Coherent amplitude as "re" or "re,im"
    #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
    alpha: Option<Complex64>,

    /// Relative phase between superposition branches, radians
    /// (noon default: 0 for even N, pi/2 for odd N; entangled default: 0)
    #[arg(long = "phi-n", allow_negative_numbers = true)]
    phi_n: Option<f64>,

    /// Bound on the Poisson tail mass discarded when truncating coherent branches
    #[arg(long = "tail-eps", default_value = "1e-12")]
    tail_eps: f64,
}

impl FamilyFlags {
    fn family(&self) -> Result<Family, CliError> {
        Family::parse(&self.family).map_err(CliError::Config)
    }

    fn params(&self) -> StateParams {
        StateParams {
            n: self.n,
            alpha: self.alpha,
            phi_n: self.phi_n,
            tail_epsilon: self.tail_eps,
        }
    }
}

#[derive(Args)]
struct OutputFlags {
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output encoding: csv (plain text for verify) or json
    #[arg(long, default_value = "csv", value_parser = output::parse_format)]
    format: Format,
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    family: FamilyFlags,
    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Args)]
struct SignalArgs {
    #[command(flatten)]
    family: FamilyFlags,

    /// Observable: j | j2 | parity_b | sigma_n
    #[arg(long, default_value = "parity_b")]
    observable: String,

    /// Grid start, radians
    #[arg(long = "phi-min", default_value_t = 0.0, allow_negative_numbers = true)]
    phi_min: f64,

    /// Grid end (inclusive), radians
    #[arg(long = "phi-max", default_value_t = std::f64::consts::TAU, allow_negative_numbers = true)]
    phi_max: f64,

    /// Number of grid points (at least 2)
    #[arg(long, default_value_t = 64)]
    steps: usize,

    /// Input splitter convention: ireflect | real (default picked by family)
    #[arg(long, value_parser = parse_convention)]
    bs1: Option<BeamSplitterConvention>,

    /// Output splitter convention: ireflect | real (default picked by family)
    #[arg(long, value_parser = parse_convention)]
    bs2: Option<BeamSplitterConvention>,

    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Args)]
struct UncertaintyArgs {
    /// Twin-Fock photon numbers N per mode: "4", "1..20" (inclusive), or "2,4,8"
    #[arg(long, default_value = "1..20")]
    n: String,

    /// Working point, radians (0.0001 probes the small-angle regime, 0.05 a larger offset)
    #[arg(long, default_value_t = 1e-4, allow_negative_numbers = true)]
    phi: f64,

    /// Central-difference step (default: 1e-5 / max(1, 2N))
    #[arg(long)]
    step: Option<f64>,

    /// Input splitter convention: ireflect | real (default: real, the Legendre-fringe pair)
    #[arg(long, value_parser = parse_convention)]
    bs1: Option<BeamSplitterConvention>,

    /// Output splitter convention: ireflect | real (default: ireflect, the Legendre-fringe pair)
    #[arg(long, value_parser = parse_convention)]
    bs2: Option<BeamSplitterConvention>,

    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Args)]
struct JointArgs {
    #[command(flatten)]
    family: FamilyFlags,
    #[command(flatten)]
    output: OutputFlags,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    output: OutputFlags,
}

/// Failure classes mapped onto process exit codes.
#[derive(Debug)]
enum CliError {
    /// Bad flags or an unsatisfiable configuration (exit 2).
    Config(String),
    /// The computation lost numerical footing (exit 3).
    Numerical(String),
    /// One or more verification checks failed (exit 1).
    VerifyFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Numerical(msg) => f.write_str(msg),
            CliError::VerifyFailed(count) => write!(f, "{count} verification check(s) failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ZeroNorm { .. } | Error::NotNormalized { .. } | Error::CutoffExceeded { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("--out: {e}"))
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::State(args) => run_state(args),
        Command::Signal(args) => run_signal(args),
        Command::Uncertainty(args) => run_uncertainty(args),
        Command::Joint(args) => run_joint(args),
        Command::Verify(args) => run_verify(args),
    }
}

fn emit(output: &OutputFlags, content: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run_state(args: StateArgs) -> Result<(), CliError> {
    let family = args.family.family()?;
    let state = build_state(family, &args.family.params())?;
    emit(&args.output, &output::render_state(&state, args.output.format))
}

fn run_signal(args: SignalArgs) -> Result<(), CliError> {
    let family = args.family.family()?;
    let observable = parse_observable(&args.observable, args.family.n)?;
    let grid = phi_grid(args.phi_min, args.phi_max, args.steps)
        .map_err(|e| CliError::Config(format!("--phi-min/--phi-max/--steps: {e}")))?;
    let defaults = family.default_conventions();
    let config = MziConfig {
        bs1: args.bs1.unwrap_or(defaults.bs1),
        bs2: args.bs2.unwrap_or(defaults.bs2),
    };
    let input = build_state(family, &args.family.params())?;
    let table = sweep_signal(
        |phi| propagate(family, &input, phi, config, observable),
        &grid,
        observable,
        family.label(),
    )?;
    emit(&args.output, &output::render_signal(&table, args.output.format))
}

fn run_uncertainty(args: UncertaintyArgs) -> Result<(), CliError> {
    let n_values = parse_n_list(&args.n)?;
    let legendre_pair = Family::Twin.default_conventions();
    let config = MziConfig {
        bs1: args.bs1.unwrap_or(legendre_pair.bs1),
        bs2: args.bs2.unwrap_or(legendre_pair.bs2),
    };
    let table = sweep_uncertainty(&n_values, args.phi, config, args.step)?;
    emit(
        &args.output,
        &output::render_uncertainty(&table, args.output.format),
    )
}

fn run_joint(args: JointArgs) -> Result<(), CliError> {
    let family = args.family.family()?;
    let state = build_state(family, &args.family.params())?;
    let dist = joint_distribution(&state)?;
    let total = dist.total();
    if (total - 1.0).abs() > 1e-10 {
        return Err(CliError::Numerical(format!(
            "joint probabilities sum to {total:e}, not 1"
        )));
    }
    emit(&args.output, &output::render_joint(&dist, args.output.format))
}

fn run_verify(args: VerifyArgs) -> Result<(), CliError> {
    let outcomes = run_verification();
    emit(
        &args.output,
        &output::render_verify(&outcomes, args.output.format),
    )?;
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed));
    }
    Ok(())
}

/// Parse `--alpha` as "re" or "re,im".
fn parse_alpha(s: &str) -> Result<Complex64, String> {
    let num = |tok: &str| {
        tok.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad number '{}' in alpha", tok.trim()))
    };
    match s.split_once(',') {
        None => Ok(Complex64::new(num(s)?, 0.0)),
        Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
    }
}
