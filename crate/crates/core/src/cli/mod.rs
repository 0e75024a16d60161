//! The `zpflab` command line.
//!
//! [`dispatch`] is the whole program minus process plumbing: it parses an
//! argument list, runs one subcommand, writes results to `out` and the run
//! manifest to `err` (or `--manifest <path>`), and returns the exit status:
//! 0 on success, 1 for usage or domain errors, 2 when an internal check or
//! convergence test fails.

mod commands;
mod manifest;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub use manifest::RunManifest;
pub use output::Format;

use crate::error::{Error, Result};
use crate::units::UnitSystem;

/// Environment variable capping worker threads for parallel field draws.
pub const THREADS_ENV: &str = "ZPFLAB_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "zpflab",
    version,
    about = "Zero-point-field oscillator model: constants, ground states, field scaling, Casimir, Lamb shift, coil tap",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Unit system (default: gaussian, natural for `field`)
    #[arg(long, global = true, value_parser = parse_units)]
    pub units: Option<UnitSystem>,

    /// Output format (default depends on the subcommand)
    #[arg(long, global = true, value_parser = parse_format)]
    pub format: Option<Format>,

    /// Master seed for stochastic subcommands
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Write the run manifest here instead of standard error
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the constants table as CSV (name,value,unit)
    Constants {
        #[arg(long, value_parser = parse_units)]
        system: Option<UnitSystem>,
    },
    /// Ground-state width, variance and optional sample moments
    #[command(allow_negative_numbers = true)]
    Oscillator(OscillatorArgs),
    /// Spectral field ensemble
    #[command(subcommand)]
    Field(FieldCommand),
    /// Parallel-plate Casimir force
    #[command(allow_negative_numbers = true)]
    Casimir(CasimirArgs),
    /// Jitter-induced hydrogen level shift
    #[command(allow_negative_numbers = true)]
    Lamb(LambArgs),
    /// Induced current in a coil from the fluctuating field
    #[command(allow_negative_numbers = true)]
    Coil(CoilArgs),
    /// Re-run the command recorded in a manifest
    Replay {
        /// Manifest JSON written by an earlier run
        path: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct OscillatorArgs {
    /// Mass
    #[arg(long)]
    pub m: f64,
    /// Angular frequency
    #[arg(long)]
    pub omega: f64,
    /// Number of positions to sample
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum FieldCommand {
    /// Coarse-grained RMS versus scale, pooled over independent draws
    #[command(allow_negative_numbers = true)]
    ScalingRun(ScalingRunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ScalingRunArgs {
    /// Lattice points per axis (even, >= 8)
    #[arg(long)]
    pub grid: usize,
    /// Box side length
    #[arg(long = "box")]
    pub box_size: f64,
    /// Number of independent draws
    #[arg(long)]
    pub draws: usize,
    /// Comma-separated coarse-graining scales
    #[arg(long, value_delimiter = ',', required = true)]
    pub scales: Vec<f64>,
    /// Spectrum normalization
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
    /// Wavenumber cutoff (default: Nyquist)
    #[arg(long)]
    pub kmax: Option<f64>,
    /// Coarse-graining window: gaussian or cube
    #[arg(long, default_value = "gaussian")]
    pub window: String,
    /// Also write the JSON summary to this file
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CasimirArgs {
    /// Plate area
    #[arg(long)]
    pub area: f64,
    /// Plate separation
    #[arg(long)]
    pub sep: f64,
    /// Also recover the coefficients from the regularized mode sum
    #[arg(long)]
    pub modesum: bool,
}

#[derive(Debug, Clone, Args)]
pub struct LambArgs {
    /// Principal quantum number
    #[arg(long)]
    pub n: u32,
    /// Orbital quantum number
    #[arg(long, default_value_t = 0)]
    pub ell: u32,
    /// Per-axis jitter variance (length²); overrides the Welton estimate
    #[arg(long, conflicts_with_all = ["omega_min", "omega_max"])]
    pub jitter: Option<f64>,
    /// Lower Welton cutoff (angular frequency)
    #[arg(long)]
    pub omega_min: Option<f64>,
    /// Upper Welton cutoff (angular frequency)
    #[arg(long)]
    pub omega_max: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct CoilArgs {
    /// Number of turns
    #[arg(long)]
    pub turns: u32,
    /// Coil area
    #[arg(long)]
    pub area: f64,
    /// Coil resistance (s/cm in Gaussian units, ohm in SI)
    #[arg(long)]
    pub resistance: f64,
    /// Extent l over which the field fluctuation is measured
    #[arg(long)]
    pub scale: f64,
    /// Particle whose Compton time sets Δt
    #[arg(long, default_value = "electron")]
    pub particle: String,
}

fn parse_units(s: &str) -> std::result::Result<UnitSystem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .map(Some)
            .ok_or_else(|| {
                Error::domain(
                    THREADS_ENV,
                    format!("expected a positive integer, got '{v}'"),
                )
            }),
        _ => Ok(None),
    }
}

/// Runs one command line. `argv[0]` is the program name.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    if let Command::Replay { path } = &cli.command {
        let manifest = RunManifest::read(path)?;
        let mut argv = vec!["zpflab".to_string()];
        argv.extend(manifest.args.iter().cloned());
        let replayed = Cli::try_parse_from(&argv)
            .map_err(|e| Error::Config(format!("manifest arguments do not parse: {e}")))?;
        if matches!(replayed.command, Command::Replay { .. }) {
            return Err(Error::Config(
                "a manifest cannot replay another manifest".into(),
            ));
        }
        return run(replayed, out, err);
    }

    let started = Instant::now();
    let threads = threads_from_env()?;
    let mut buffer = Vec::new();
    let outcome = commands::execute(&cli, threads, &mut buffer)?;
    out.write_all(&buffer)
        .map_err(|e| Error::Config(format!("writing output: {e}")))?;

    let manifest = RunManifest::new(
        outcome.subcommand,
        outcome.args,
        outcome.units,
        outcome.seed,
        outcome.parameters,
        outcome.results,
        threads,
        started.elapsed(),
    );
    match &cli.global.manifest {
        Some(path) => manifest.write(path)?,
        None => {
            let _ = writeln!(err, "{}", manifest.to_json());
        }
    }
    if let Some(failure) = outcome.check_failure {
        return Err(Error::Invariant(failure));
    }
    Ok(())
}
