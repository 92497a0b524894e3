//! Command-line front end for CTLS enantiomer-specific state transfer.
//!
//! Scenarios are TOML files (see `scenarios/propanediol.scenario`); results
//! are written as CSV or JSON.

pub mod commands;
pub mod error;
pub mod scenario;
pub mod table;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use ctls_core::thermal::Temperatures;

use crate::commands::{ChiralityArg, FigureArg, ProtocolOptions, ShapeArg};
pub use crate::error::{exit, CliError};
use crate::scenario::{Scenario, SCENARIO_ENV};
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "ctls", version, about = "Enantiomer-specific state transfer in cyclic three-level systems")]
pub struct Cli {
    /// Scenario file; falls back to the bundled 1,2-propanediol scenario.
    #[arg(long, global = true, env = SCENARIO_ENV)]
    pub scenario: Option<PathBuf>,

    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Print the resolved scenario, defaults included, and exit.
    #[arg(long)]
    pub dump_config: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rigid-rotor levels up to --jmax.
    Levels {
        #[arg(long, default_value_t = 3)]
        jmax: u32,
    },
    /// Thermal populations of the three CTLS states.
    Populations {
        #[arg(long)]
        t_rot: Option<f64>,
        #[arg(long)]
        t_vib: Option<f64>,
    },
    /// Analytic and propagated protocol unitaries.
    Protocol {
        #[arg(long, value_enum, default_value_t = ChiralityArg::Both)]
        chirality: ChiralityArg,
        #[arg(long, value_enum, default_value_t = ShapeArg::SinSquared)]
        shape: ShapeArg,
        /// Time steps per pulse.
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[arg(long, default_value_t = 200.0)]
        duration_ns: f64,
        #[arg(long, default_value_t = 20.0)]
        gap_ns: f64,
    },
    /// Enantiomeric excess over the sweep grid.
    Excess,
    /// Global proportions and pure-enantiomer yield over the sweep grid.
    Yield,
    /// Curve data behind one figure.
    Figure {
        #[arg(value_enum)]
        name: FigureArg,
        /// Also write a gnuplot script for the data to this path.
        #[arg(long)]
        emit_plotscript: Option<PathBuf>,
    },
}

fn write_to(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let scenario = Scenario::resolve(cli.scenario.as_deref())?;
    if cli.dump_config {
        return write_to(cli.output.as_deref(), &scenario.file.to_toml());
    }
    let Some(command) = &cli.command else {
        return Err(CliError::Usage("a subcommand is required (try --help)".into()));
    };
    let table = match command {
        Command::Levels { jmax } => commands::levels(&scenario, *jmax)?,
        Command::Populations { t_rot, t_vib } => {
            let t = &scenario.temperatures;
            let temps = Temperatures::new(t_rot.unwrap_or(t.t_rot()), t_vib.unwrap_or(t.t_vib()))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            commands::populations(&scenario, &temps)?
        }
        Command::Protocol { chirality, shape, steps, duration_ns, gap_ns } => {
            let opts = ProtocolOptions { shape: *shape, steps: *steps, duration_ns: *duration_ns, gap_ns: *gap_ns };
            commands::protocol(*chirality, &opts)?
        }
        Command::Excess => commands::excess(&scenario)?,
        Command::Yield => commands::yield_curve(&scenario)?,
        Command::Figure { name, emit_plotscript } => {
            let table = commands::figure(&scenario, *name)?;
            if let Some(script_path) = emit_plotscript {
                if cli.format != Format::Csv {
                    return Err(CliError::Usage("--emit-plotscript needs --format csv".into()));
                }
                let data = cli.output.as_ref().map_or_else(|| format!("{}.csv", name.name()), |p| p.display().to_string());
                let script = commands::plot_script(*name, &data, scenario.grid.log_scale);
                std::fs::write(script_path, script).map_err(|source| CliError::Io { path: script_path.clone(), source })?;
            }
            table
        }
    };
    write_to(cli.output.as_deref(), &table.render(cli.format))
}
