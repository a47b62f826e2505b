//! CLI front end: parse a command line, run the requested experiment,
//! serialize the result.

pub mod args;
pub mod report;

use std::ffi::OsString;

use spincorr_core::{
    agreement_sweep, chsh, cond_prob_matrix, cond_prob_matrix_singlet, correlation_exact,
    correlation_singlet, fresh_context_estimates, ks_test, ChshAngles, Direction, Mode,
};

pub use args::{parse_args, CommandKind, Format, RunConfig};
pub use report::{write_output, Output, SCHEMA_VERSION};

use report::{
    ChshEnvelope, ExactReport, ExactRow, KsEnvelope, MatrixReport, MatrixRow, SampleReport,
    SampleRow, SweepEnvelope,
};

/// Run one experiment from a resolved configuration.
pub fn execute(config: &RunConfig) -> Output {
    let origin = Direction::new(0.0);
    match config.command {
        CommandKind::Exact => {
            let results = config
                .angles
                .iter()
                .map(|&theta| {
                    let b = Direction::new(theta);
                    let correlation = match config.mode {
                        Mode::Single => correlation_exact(origin, b),
                        Mode::Bipartite => correlation_singlet(origin, b),
                    };
                    ExactRow { theta, correlation }
                })
                .collect();
            Output::Exact(ExactReport {
                schema_version: SCHEMA_VERSION,
                command: config.command.name(),
                mode: config.mode,
                seed: config.seed,
                results,
            })
        }
        CommandKind::Matrix => {
            let results = config
                .angles
                .iter()
                .map(|&theta| {
                    let b = Direction::new(theta);
                    MatrixRow {
                        theta,
                        single: cond_prob_matrix(origin, b).entries(),
                        singlet: (config.mode == Mode::Bipartite)
                            .then(|| cond_prob_matrix_singlet(origin, b).entries()),
                    }
                })
                .collect();
            Output::Matrix(MatrixReport {
                schema_version: SCHEMA_VERSION,
                command: config.command.name(),
                mode: config.mode,
                seed: config.seed,
                results,
            })
        }
        CommandKind::Sample => {
            let estimates =
                fresh_context_estimates(&config.angles, config.mode, config.n, config.seed);
            let results = config
                .angles
                .iter()
                .zip(estimates)
                .map(|(&theta, estimate)| SampleRow { theta, estimate })
                .collect();
            Output::Sample(SampleReport {
                schema_version: SCHEMA_VERSION,
                command: config.command.name(),
                mode: config.mode,
                n: config.n,
                seed: config.seed,
                results,
            })
        }
        CommandKind::Sweep => Output::Sweep(SweepEnvelope {
            schema_version: SCHEMA_VERSION,
            command: config.command.name(),
            report: agreement_sweep(config.mode, config.grid_size, config.n, config.seed),
        }),
        CommandKind::Chsh => {
            let angles = ChshAngles::from_array([
                config.angles[0],
                config.angles[1],
                config.angles[2],
                config.angles[3],
            ]);
            Output::Chsh(ChshEnvelope {
                schema_version: SCHEMA_VERSION,
                command: config.command.name(),
                result: chsh(&angles, config.engine, config.n, config.seed),
            })
        }
        CommandKind::Kstest => Output::Ks(KsEnvelope {
            schema_version: SCHEMA_VERSION,
            command: config.command.name(),
            result: ks_test(config.n, config.seed),
        }),
    }
}

/// Parse, execute, and write: the whole CLI in one call.
pub fn run<I, T>(argv: I) -> anyhow::Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = parse_args(argv)?;
    let output = execute(&config);
    let bytes = output.to_bytes(config.format)?;
    write_output(config.output.as_deref(), &bytes)
}
