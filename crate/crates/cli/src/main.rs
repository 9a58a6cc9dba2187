mod dispersion;
mod error;
mod evolve;
mod output;
mod qcheck;
mod residual;
mod steady;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::{CliError, Result};
use crate::output::to_json;

#[derive(Debug, Parser)]
#[command(
    name = "gkdv",
    version,
    about = "Numerical lab for the generalized KdV equation"
)]
struct Cli {
    /// Print machine-readable JSON instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Steady-wave series: coefficients, matched a1, profile, radius and Koebe check.
    Steady(steady::SteadyArgs),
    /// Time-dependent spectral evolution on a periodic domain.
    Evolve(evolve::EvolveArgs),
    /// Linear dispersion relation omega^2(k).
    Dispersion(dispersion::DispersionArgs),
    /// Recompute the steady-equation residual of a saved series.
    ResidualCheck(residual::ResidualArgs),
    /// Randomised checks of the q-calculus identities.
    Qcheck(qcheck::QcheckArgs),
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Steady(args) => {
            let config = args.resolve()?;
            if let Some(spec) = args.sweep() {
                let reports = steady::run_sweep(&config, spec)?;
                return Ok(if cli.json {
                    to_json(&reports)
                } else {
                    reports
                        .iter()
                        .map(steady::summary)
                        .collect::<Vec<_>>()
                        .join("\n")
                });
            }
            let report = steady::run(&config)?;
            Ok(if cli.json {
                to_json(&report)
            } else {
                steady::summary(&report)
            })
        }
        Command::Evolve(args) => {
            let meta = evolve::run(&args.resolve()?)?;
            Ok(if cli.json {
                to_json(&meta)
            } else {
                evolve::summary(&meta)
            })
        }
        Command::Dispersion(args) => {
            let config = args.resolve()?;
            let table = dispersion::run(&config)?;
            Ok(if cli.json {
                to_json(&table)
            } else if config.out.is_none() {
                dispersion::csv(&table)
            } else {
                format!("c0 = {:.6}, {} rows written\n", table.c0, table.k.len())
            })
        }
        Command::ResidualCheck(args) => {
            let s = residual::run(args)?;
            print!(
                "{}",
                if cli.json {
                    to_json(&s)
                } else {
                    residual::summary(&s)
                }
            );
            residual::check(&s)?;
            Ok(String::new())
        }
        Command::Qcheck(args) => {
            let results = qcheck::run(args);
            print!(
                "{}",
                if cli.json {
                    to_json(&results)
                } else {
                    qcheck::table(&results)
                }
            );
            qcheck::check(&results)?;
            Ok(String::new())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(gkdv_core::Error::Instability { spectrum, .. }) = &e {
                eprintln!(
                    "last finite spectrum magnitudes: {}",
                    serde_json::to_string(spectrum).expect("serializable")
                );
            }
            ExitCode::from(e.exit_code())
        }
    }
}
