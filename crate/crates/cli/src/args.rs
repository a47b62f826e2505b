//! Argument parsing: clap does the surface syntax, [`RunConfig`] is the
//! resolved, validated record a run executes from.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{bail, ensure};
use clap::{Args, Parser, Subcommand, ValueEnum};

use spincorr_core::{ChshAngles, Engine, Mode};

#[derive(Parser, Debug)]
#[command(
    name = "spincorr",
    version,
    about = "Spin-1/2 correlations: exact quantum engine vs geometric hidden-angle sampler"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Exact correlation for each separation angle
    Exact(AngleArgs),
    /// Conditional-probability matrices for each separation angle
    Matrix(AngleArgs),
    /// Monte Carlo correlation estimates, one fresh stream per angle
    Sample(SampleArgs),
    /// Exact-vs-sampled agreement sweep over a grid on [0, π]
    Sweep(SweepArgs),
    /// CHSH combination for four measurement angles (a, a', b, b')
    Chsh(ChshArgs),
    /// Kolmogorov-Smirnov goodness of fit of the sampler
    Kstest(KsArgs),
}

/// Parse a CLI angle: any finite float.
fn finite_angle(s: &str) -> Result<f64, String> {
    let value: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle `{s}` is not finite"))
    }
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// RNG seed; SPIN_SIM_SEED is used when the flag is absent
    #[arg(long, env = "SPIN_SIM_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output to this path (atomically) instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AngleArgs {
    /// Separation angle θ between the two directions; repeatable
    #[arg(long = "theta", value_parser = finite_angle, required = true)]
    pub thetas: Vec<f64>,

    /// Interpret angles as degrees instead of radians
    #[arg(long)]
    pub degrees: bool,

    #[arg(long, value_enum, default_value_t = ModeArg::Single)]
    pub mode: ModeArg,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long = "theta", value_parser = finite_angle, required = true)]
    pub thetas: Vec<f64>,

    /// Interpret angles as degrees instead of radians
    #[arg(long)]
    pub degrees: bool,

    #[arg(long, value_enum, default_value_t = ModeArg::Single)]
    pub mode: ModeArg,

    /// Draws per context
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Single)]
    pub mode: ModeArg,

    /// Number of grid points on [0, π]
    #[arg(long = "grid-size", default_value_t = 50, value_parser = clap::value_parser!(u64).range(2..))]
    pub grid_size: u64,

    /// Draws per grid point (at least 1000)
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct ChshArgs {
    /// Measurement angles in the order a, a', b, b'; exactly four, or none
    /// for the standard maximizing set (0, π/2, π/4, 3π/4)
    #[arg(long = "theta", value_parser = finite_angle)]
    pub thetas: Vec<f64>,

    /// Interpret angles as degrees instead of radians
    #[arg(long)]
    pub degrees: bool,

    #[arg(long, value_enum, default_value_t = EngineArg::Exact)]
    pub engine: EngineArg,

    /// Draws per context for the sampled engine (at least 1000)
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct KsArgs {
    /// Sample count (at least 1000)
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Single,
    Bipartite,
}

impl From<ModeArg> for Mode {
    fn from(arg: ModeArg) -> Mode {
        match arg {
            ModeArg::Single => Mode::Single,
            ModeArg::Bipartite => Mode::Bipartite,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineArg {
    Exact,
    Sampled,
}

impl From<EngineArg> for Engine {
    fn from(arg: EngineArg) -> Engine {
        match arg {
            EngineArg::Exact => Engine::Exact,
            EngineArg::Sampled => Engine::Sampled,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Which experiment a resolved config runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Exact,
    Matrix,
    Sample,
    Sweep,
    Chsh,
    Kstest,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Exact => "exact",
            CommandKind::Matrix => "matrix",
            CommandKind::Sample => "sample",
            CommandKind::Sweep => "sweep",
            CommandKind::Chsh => "chsh",
            CommandKind::Kstest => "kstest",
        }
    }
}

/// Fully resolved run configuration: every angle in radians, every default
/// applied, every precondition checked.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub mode: Mode,
    pub angles: Vec<f64>,
    pub n: u64,
    pub seed: u64,
    pub engine: Engine,
    pub grid_size: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn to_radians(thetas: &[f64], degrees: bool) -> Vec<f64> {
    if degrees {
        thetas.iter().map(|t| t.to_radians()).collect()
    } else {
        thetas.to_vec()
    }
}

/// Parse an argv into a validated [`RunConfig`]. Syntax errors come back as
/// `clap::Error` (with usage text); semantic errors as plain messages.
pub fn parse_args<I, T>(argv: I) -> anyhow::Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let config = match cli.command {
        Cmd::Exact(args) => RunConfig {
            command: CommandKind::Exact,
            mode: args.mode.into(),
            angles: to_radians(&args.thetas, args.degrees),
            n: 100_000,
            seed: args.common.seed,
            engine: Engine::Exact,
            grid_size: 0,
            format: args.common.format,
            output: args.common.output,
        },
        Cmd::Matrix(args) => RunConfig {
            command: CommandKind::Matrix,
            mode: args.mode.into(),
            angles: to_radians(&args.thetas, args.degrees),
            n: 100_000,
            seed: args.common.seed,
            engine: Engine::Exact,
            grid_size: 0,
            format: args.common.format,
            output: args.common.output,
        },
        Cmd::Sample(args) => RunConfig {
            command: CommandKind::Sample,
            mode: args.mode.into(),
            angles: to_radians(&args.thetas, args.degrees),
            n: args.n,
            seed: args.common.seed,
            engine: Engine::Sampled,
            grid_size: 0,
            format: args.common.format,
            output: args.common.output,
        },
        Cmd::Sweep(args) => {
            ensure!(args.n >= 1_000, "--n must be at least 1000 for sweep");
            RunConfig {
                command: CommandKind::Sweep,
                mode: args.mode.into(),
                angles: Vec::new(),
                n: args.n,
                seed: args.common.seed,
                engine: Engine::Sampled,
                grid_size: args.grid_size,
                format: args.common.format,
                output: args.common.output,
            }
        }
        Cmd::Chsh(args) => {
            let angles = if args.thetas.is_empty() {
                let std = ChshAngles::standard();
                vec![std.a, std.a_alt, std.b, std.b_alt]
            } else if args.thetas.len() == 4 {
                to_radians(&args.thetas, args.degrees)
            } else {
                bail!(
                    "chsh takes exactly four --theta angles (a, a', b, b'), got {}",
                    args.thetas.len()
                );
            };
            let engine: Engine = args.engine.into();
            if engine == Engine::Sampled {
                ensure!(args.n >= 1_000, "--n must be at least 1000 for --engine sampled");
            }
            RunConfig {
                command: CommandKind::Chsh,
                mode: Mode::Bipartite,
                angles,
                n: args.n,
                seed: args.common.seed,
                engine,
                grid_size: 0,
                format: args.common.format,
                output: args.common.output,
            }
        }
        Cmd::Kstest(args) => {
            ensure!(args.n >= 1_000, "--n must be at least 1000 for kstest");
            RunConfig {
                command: CommandKind::Kstest,
                mode: Mode::Single,
                angles: Vec::new(),
                n: args.n,
                seed: args.common.seed,
                engine: Engine::Sampled,
                grid_size: 0,
                format: args.common.format,
                output: args.common.output,
            }
        }
    };
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> anyhow::Result<RunConfig> {
        parse_args(std::iter::once("spincorr").chain(args.iter().copied()))
    }

    #[test]
    fn defaults_apply() {
        let config = parse(&["sample", "--theta", "0.5"]).unwrap();
        assert_eq!(config.n, 100_000);
        assert_eq!(config.seed, 42);
        assert_eq!(config.format, Format::Json);
        assert_eq!(config.mode, Mode::Single);
        assert_eq!(config.angles, vec![0.5]);
    }

    #[test]
    fn degrees_flag_converts() {
        let config = parse(&["exact", "--theta", "60", "--degrees"]).unwrap();
        assert!((config.angles[0] - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
    }

    #[test]
    fn repeated_thetas_accumulate() {
        let config = parse(&["exact", "--theta", "0.1", "--theta", "0.2"]).unwrap();
        assert_eq!(config.angles.len(), 2);
    }

    #[test]
    fn chsh_defaults_to_standard_angles() {
        let config = parse(&["chsh", "--engine", "exact"]).unwrap();
        assert_eq!(config.angles.len(), 4);
        assert_eq!(config.angles[0], 0.0);
        assert_eq!(config.engine, Engine::Exact);
    }

    #[test]
    fn chsh_rejects_partial_angle_sets() {
        let err = parse(&["chsh", "--theta", "0.1", "--theta", "0.2"]).unwrap_err();
        assert!(err.to_string().contains("four"));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(parse(&["exact"]).is_err()); // missing --theta
        assert!(parse(&["exact", "--theta", "abc"]).is_err());
        assert!(parse(&["exact", "--theta", "inf"]).is_err());
        assert!(parse(&["sample", "--theta", "1", "--n", "0"]).is_err());
        assert!(parse(&["sweep", "--n", "10"]).is_err()); // below harness floor
        assert!(parse(&["sweep", "--grid-size", "1"]).is_err());
        assert!(parse(&["frobnicate"]).is_err()); // unknown command
        assert!(parse(&["exact", "--theta", "1", "--bogus"]).is_err());
    }
}
