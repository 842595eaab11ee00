//! `kgo`: runs the Klein-Gordon oscillator verification experiments and
//! writes CSV or JSON reports.

mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kgo_core::{OscillatorParams, SpectrumConvention};

use crate::error::CliError;
use crate::report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "kgo", version, about = "Klein-Gordon oscillator eigenbasis checks")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Particle mass m (> 0)
    #[arg(long, global = true, allow_negative_numbers = true, default_value_t = 1.0)]
    mass: f64,
    /// Oscillator frequency w (> 0)
    #[arg(long, global = true, allow_negative_numbers = true, default_value_t = 1.0)]
    frequency: f64,
    /// Squared-energy formula used for the levels
    #[arg(long, global = true, value_enum, default_value_t = Convention::OdeDerived)]
    convention: Convention,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    OdeDerived,
    AsPrinted,
}

impl From<Convention> for SpectrumConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::OdeDerived => SpectrumConvention::OdeDerived,
            Convention::AsPrinted => SpectrumConvention::AsPrinted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumDim {
    #[value(name = "1d")]
    OneD,
    #[value(name = "3d")]
    ThreeD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisDim {
    #[value(name = "1d")]
    OneD,
    Radial,
}

/// Gauss rule size: `auto` or an explicit node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadCount(pub Option<usize>);

fn parse_quad_count(s: &str) -> Result<QuadCount, String> {
    if s == "auto" {
        return Ok(QuadCount(None));
    }
    s.parse()
        .map(|n| QuadCount(Some(n)))
        .map_err(|_| format!("expected 'auto' or a node count, got '{s}'"))
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels under both conventions with their non-relativistic limit
    Spectrum {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = SpectrumDim::OneD)]
        dimension: SpectrumDim,
    },
    /// Gram-matrix deviation from the identity
    Orthonormality {
        #[arg(long, value_enum, default_value_t = BasisDim::OneD)]
        dimension: BasisDim,
        #[arg(long, default_value_t = 50)]
        n_max: usize,
        /// Angular momentum (radial only; default 0)
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value = "auto", value_parser = parse_quad_count)]
        quad_count: QuadCount,
    },
    /// Reconstruction error of a catalogue test function over truncations
    Closure {
        #[arg(long, value_enum, default_value_t = BasisDim::OneD)]
        dimension: BasisDim,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
        truncations: Vec<usize>,
        /// gaussian, shifted-gaussian, in-span-cubic (1d);
        /// gaussian, wide-gaussian, in-span-linear (radial)
        #[arg(long, default_value = "gaussian")]
        test_function: String,
        #[arg(long, default_value = "auto", value_parser = parse_quad_count)]
        quad_count: QuadCount,
    },
    /// Shell enumeration against (N+1)(N+2)/2
    Degeneracy {
        #[arg(long, default_value_t = 30)]
        n_max: usize,
    },
    /// Truncated Green's function and its spectral coefficient check
    Greens {
        #[arg(long, value_enum, default_value_t = BasisDim::OneD)]
        dimension: BasisDim,
        #[arg(long)]
        ell: Option<usize>,
        /// Probe energy squared E^2
        #[arg(long, allow_negative_numbers = true)]
        energy_sq: f64,
        /// Field point (x, or r for radial)
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Source point (x', or r' for radial)
        #[arg(long, allow_negative_numbers = true)]
        x2: f64,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// Smallest allowed |E^2 - E_n^2|
        #[arg(long, allow_negative_numbers = true, default_value_t = 1e-8)]
        pole_guard: f64,
        #[arg(long, default_value = "auto", value_parser = parse_quad_count)]
        quad_count: QuadCount,
    },
}

/// Angular momentum for a basis: required to be absent in 1D.
fn resolve_ell(dimension: BasisDim, ell: Option<usize>) -> Result<Option<usize>, CliError> {
    match (dimension, ell) {
        (BasisDim::OneD, Some(_)) => Err(CliError::Usage("--ell applies to the radial dimension only".into())),
        (BasisDim::OneD, None) => Ok(None),
        (BasisDim::Radial, ell) => Ok(Some(ell.unwrap_or(0))),
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let params = OscillatorParams::with_convention(cli.run.mass, cli.run.frequency, cli.run.convention.into())?;
    match &cli.command {
        Command::Spectrum { n_max, dimension } => Ok(commands::spectrum(&params, *n_max, *dimension)),
        Command::Orthonormality { dimension, n_max, ell, quad_count } => {
            commands::orthonormality(&params, resolve_ell(*dimension, *ell)?, *n_max, *quad_count)
        }
        Command::Closure { dimension, ell, truncations, test_function, quad_count } => {
            commands::closure(&params, resolve_ell(*dimension, *ell)?, truncations, test_function, *quad_count)
        }
        Command::Degeneracy { n_max } => Ok(commands::degeneracy(&params, *n_max)),
        Command::Greens { dimension, ell, energy_sq, x, x2, n_max, pole_guard, quad_count } => {
            let probe = commands::GreensProbe {
                ell: resolve_ell(*dimension, *ell)?,
                energy_sq: *energy_sq,
                x: *x,
                x2: *x2,
                n_max: *n_max,
                pole_guard: *pole_guard,
            };
            commands::greens(&params, &probe, *quad_count)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcome = run(&cli).and_then(|report| {
        report.emit(cli.run.format, cli.run.out.as_deref())?;
        Ok(report)
    });
    match outcome {
        Ok(Report { failure: None, .. }) => ExitCode::SUCCESS,
        Ok(Report { failure: Some(reason), .. }) => {
            eprintln!("verification failed: {reason}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
