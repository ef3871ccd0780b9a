//! Command-line front end for `padewkb-core`: JSON configs in, CSV out.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.
//! Output files are written only when the whole command succeeds.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod seeds;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::commands::{Output, Settings};
use crate::config::{RunConfig, SourceSpec};
pub use crate::error::CliError;

/// Environment variable overriding the quadrature tolerance (for tests).
pub const QUAD_TOL_VAR: &str = "WKB_QUAD_TOL";

/// Bound-state spectra from improved semiclassical quantization.
#[derive(Debug, Parser)]
#[command(name = "padewkb", version, about)]
pub struct Cli {
    /// Write the built-in benchmark configs into DIR.
    #[arg(long, value_name = "DIR")]
    pub seed_examples: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Levels in plain WKB and improved modes.
    Spectrum(RunArgs),
    /// Recover (k, c, b, g) of a finite well.
    Extract(RunArgs),
    /// First correction, resummed defect and gamma on an energy grid.
    Delta1(RunArgs),
    /// State density and the density-based c.
    Density(RunArgs),
    /// Sample a Padé-generated well as x,V.
    Generate(RunArgs),
    /// Finite-difference reference levels.
    Oracle(RunArgs),
    /// Three-way comparison against the oracle.
    Compare(RunArgs),
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// JSON run config or bare potential document.
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,
    /// CSV destination; stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Run the diagonalization oracle.
    #[arg(long)]
    pub oracle: bool,
    /// Source of the first correction.
    #[arg(long, value_enum)]
    pub correction: Option<SourceSpec>,
    /// Energy ceiling (required for unbounded wells).
    #[arg(long)]
    pub emax: Option<f64>,
    /// Write eps,phi,delta1,delta on a 64-point grid.
    #[arg(long, value_name = "FILE")]
    pub plot_data: Option<PathBuf>,
}

impl Command {
    fn args(&self) -> &RunArgs {
        match self {
            Command::Spectrum(a)
            | Command::Extract(a)
            | Command::Delta1(a)
            | Command::Density(a)
            | Command::Generate(a)
            | Command::Oracle(a)
            | Command::Compare(a) => a,
        }
    }
}

/// Runs the parsed command line and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("padewkb: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    if let Some(dir) = &cli.seed_examples {
        for name in seeds::write_all(dir)? {
            println!("{}", dir.join(name).display());
        }
    }
    let Some(command) = cli.command else {
        if cli.seed_examples.is_some() {
            return Ok(());
        }
        return Err(CliError::Config("no command given (see --help)".into()));
    };
    let args = command.args();
    let settings = settings(args)?;
    if settings.plot && !matches!(command, Command::Spectrum(_) | Command::Compare(_)) {
        return Err(CliError::Config("--plot-data is used only by spectrum and compare".into()));
    }
    let model = settings.config.potential.build()?;
    let model = match quad_tolerance()? {
        Some(tol) => {
            let q = model.quadrature().with_tolerance(tol);
            model.with_quadrature(q)
        }
        None => model,
    };
    let output = match &command {
        Command::Spectrum(_) => commands::spectrum(&settings, &model)?,
        Command::Extract(_) => commands::extract(&settings, &model)?,
        Command::Delta1(_) => commands::delta1(&settings, &model)?,
        Command::Density(_) => commands::density(&settings, &model)?,
        Command::Generate(_) => commands::generate(&settings, &model)?,
        Command::Oracle(_) => commands::oracle(&settings, &model)?,
        Command::Compare(_) => commands::compare(&settings, &model)?,
    };
    emit(args, output)
}

fn settings(args: &RunArgs) -> Result<Settings, CliError> {
    let mut config = RunConfig::load(&args.config)?;
    if args.oracle {
        config.oracle = true;
    }
    if let Some(c) = args.correction {
        config.correction = Some(c);
    }
    if let Some(e) = args.emax {
        if !(e.is_finite() && e > 0.0) {
            return Err(CliError::Config(format!("--emax {e}: must be positive")));
        }
        config.emax = Some(e);
    }
    Ok(Settings { config, plot: args.plot_data.is_some() })
}

fn quad_tolerance() -> Result<Option<f64>, CliError> {
    match std::env::var(QUAD_TOL_VAR) {
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t < 1.0 => Ok(Some(t)),
            _ => Err(CliError::Config(format!("{QUAD_TOL_VAR}={text}: expected a number in (0, 1)"))),
        },
        Err(_) => Ok(None),
    }
}

fn partial(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".partial");
    path.with_file_name(name)
}

fn emit(args: &RunArgs, output: Output) -> Result<(), CliError> {
    let mut staged = Vec::new();
    if let Some(out) = &args.out {
        staged.push((out.clone(), output.csv.clone()));
    }
    if let (Some(path), Some(plot)) = (&args.plot_data, &output.plot) {
        staged.push((path.clone(), plot.clone()));
    }
    for (path, text) in &staged {
        fs::write(partial(path), text)?;
    }
    for (path, _) in &staged {
        fs::rename(partial(path), path)?;
    }
    let stdout = std::io::stdout();
    let mut stdout = stdout.lock();
    if args.out.is_some() {
        stdout.write_all(output.report.as_bytes())?;
    } else {
        stdout.write_all(output.csv.as_bytes())?;
        eprint!("{}", output.report);
    }
    Ok(())
}
