//! Subcommand implementations. Each returns the records it emits.

use clap::ValueEnum;

use ctls_core::ctls::{composite_unitary_closed_form, total_unitary, Chirality};
use ctls_core::envelope::EnvelopeKind;
use ctls_core::linalg::Matrix3;
use ctls_core::propagator::{run_protocol, PulseSchedule};
use ctls_core::rotor::rotor_spectrum;
use ctls_core::thermal::{Temperatures, MAX_PARTITION_J};
use ctls_core::transfer::{excess_sweep, population_sweep, yield_sweep, CtlsConfig, CtlsMode};

use crate::error::CliError;
use crate::scenario::Scenario;
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChiralityArg {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "R", alias = "r")]
    R,
    Both,
}

impl ChiralityArg {
    fn selected(self) -> &'static [Chirality] {
        match self {
            ChiralityArg::L => &[Chirality::L],
            ChiralityArg::R => &[Chirality::R],
            ChiralityArg::Both => &Chirality::BOTH,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Rectangular,
    Gaussian,
    SinSquared,
}

impl From<ShapeArg> for EnvelopeKind {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Rectangular => EnvelopeKind::Rectangular,
            ShapeArg::Gaussian => EnvelopeKind::Gaussian,
            ShapeArg::SinSquared => EnvelopeKind::SinSquared,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    /// CTLS populations, ro-vibrational configuration.
    Fig2c,
    /// CTLS populations, purely rotational configuration.
    Fig2d,
    /// Enantiomeric excess of both configurations.
    Fig3,
    /// Global proportions and yield.
    Fig4,
}

impl FigureArg {
    pub fn name(self) -> &'static str {
        match self {
            FigureArg::Fig2c => "fig2c",
            FigureArg::Fig2d => "fig2d",
            FigureArg::Fig3 => "fig3",
            FigureArg::Fig4 => "fig4",
        }
    }
}

/// Protocol timing and discretization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolOptions {
    pub shape: ShapeArg,
    pub steps: usize,
    pub duration_ns: f64,
    pub gap_ns: f64,
}

pub fn levels(scenario: &Scenario, j_max: u32) -> Result<Table, CliError> {
    if j_max > MAX_PARTITION_J {
        return Err(CliError::Usage(format!("--jmax must be <= {MAX_PARTITION_J}")));
    }
    let spectrum = rotor_spectrum(scenario.config.constants(), j_max)?;
    let mut t = Table::new(&["j", "tau", "energy_ghz", "degeneracy"]);
    for l in &spectrum.levels {
        t.push(vec![i64::from(l.j).into(), i64::from(l.tau).into(), l.energy.into(), i64::from(l.degeneracy).into()]);
    }
    Ok(t)
}

pub fn populations(scenario: &Scenario, temps: &Temperatures) -> Result<Table, CliError> {
    let p = scenario.config.populations(temps)?;
    let mut t = Table::new(&["t_rot_k", "t_vib_k", "p1", "p2", "p3"]);
    t.push(vec![temps.t_rot().into(), temps.t_vib().into(), p.p1().into(), p.p2().into(), p.p3().into()]);
    Ok(t)
}

fn push_matrix(t: &mut Table, q: Chirality, source: &str, u: &Matrix3, defect: f64) {
    for i in 0..3 {
        for j in 0..3 {
            let z = u[(i, j)];
            t.push(vec![
                format!("{q:?}").as_str().into(),
                source.into(),
                (i as i64 + 1).into(),
                (j as i64 + 1).into(),
                z.re.into(),
                z.im.into(),
                defect.into(),
            ]);
        }
    }
}

/// Analytic and propagated total unitaries with the max-norm defect between
/// them.
pub fn protocol(chirality: ChiralityArg, opts: &ProtocolOptions) -> Result<Table, CliError> {
    if !(opts.duration_ns > 0.0 && opts.gap_ns >= 0.0) {
        return Err(CliError::Usage("--duration-ns must be > 0 and --gap-ns >= 0".into()));
    }
    if opts.steps == 0 {
        return Err(CliError::Usage("--steps must be >= 1".into()));
    }
    let schedule = PulseSchedule::ideal(opts.shape.into(), opts.duration_ns * 1e-9, opts.gap_ns * 1e-9)?;
    let mut t = Table::new(&["chirality", "source", "row", "col", "re", "im", "defect"]);
    for &q in chirality.selected() {
        let analytic = total_unitary(q);
        let closed = composite_unitary_closed_form(q);
        let numeric = run_protocol(&schedule, q, opts.steps)?;
        push_matrix(&mut t, q, "analytic", &analytic, analytic.max_abs_diff(&closed));
        push_matrix(&mut t, q, "numeric", &numeric, numeric.max_abs_diff(&analytic));
    }
    Ok(t)
}

pub fn excess(scenario: &Scenario) -> Result<Table, CliError> {
    let curve = excess_sweep(&scenario.config, &scenario.grid.values(), scenario.temperatures.t_vib())?;
    let mut t = Table::new(&["t_rot_k", "epsilon"]);
    for p in curve {
        t.push(vec![p.t_rot.into(), p.excess.into()]);
    }
    Ok(t)
}

fn yield_table(config: &CtlsConfig, t_rots: &[f64], t_vib: f64) -> Result<Table, CliError> {
    let mut t = Table::new(&["t_rot_k", "P1", "P2", "P3", "eta"]);
    for p in yield_sweep(config, t_rots, t_vib)? {
        let [p1, p2, p3] = p.proportions;
        t.push(vec![p.t_rot.into(), p1.into(), p2.into(), p3.into(), p.eta.into()]);
    }
    Ok(t)
}

pub fn yield_curve(scenario: &Scenario) -> Result<Table, CliError> {
    yield_table(&scenario.config, &scenario.grid.values(), scenario.temperatures.t_vib())
}

fn population_table(config: &CtlsConfig, t_rots: &[f64], t_vib: f64) -> Result<Table, CliError> {
    let mut t = Table::new(&["t_rot_k", "p1", "p2", "p3"]);
    for p in population_sweep(config, t_rots, t_vib)? {
        let [p1, p2, p3] = p.populations.as_array();
        t.push(vec![p.t_rot.into(), p1.into(), p2.into(), p3.into()]);
    }
    Ok(t)
}

/// Curve data for one figure, using the scenario's molecule, levels and grid
/// with the configuration mode the figure calls for.
pub fn figure(scenario: &Scenario, fig: FigureArg) -> Result<Table, CliError> {
    let grid = scenario.grid.values();
    let t_vib = scenario.temperatures.t_vib();
    let config = |mode| scenario.config.with_mode(mode).map_err(CliError::from);
    match fig {
        FigureArg::Fig2c => population_table(&config(CtlsMode::RoVibrational)?, &grid, t_vib),
        FigureArg::Fig2d => population_table(&config(CtlsMode::PurelyRotational)?, &grid, t_vib),
        FigureArg::Fig3 => {
            let rovib = excess_sweep(&config(CtlsMode::RoVibrational)?, &grid, t_vib)?;
            let rot = excess_sweep(&config(CtlsMode::PurelyRotational)?, &grid, t_vib)?;
            let mut t = Table::new(&["t_rot_k", "epsilon_rovib", "epsilon_rot"]);
            for (a, b) in rovib.iter().zip(&rot) {
                t.push(vec![a.t_rot.into(), a.excess.into(), b.excess.into()]);
            }
            Ok(t)
        }
        FigureArg::Fig4 => yield_table(&config(CtlsMode::RoVibrational)?, &grid, t_vib),
    }
}

/// Gnuplot script plotting `data_file` as written for `fig`.
pub fn plot_script(fig: FigureArg, data_file: &str, log_scale: bool) -> String {
    let (ylabel, series): (&str, &[(usize, &str)]) = match fig {
        FigureArg::Fig2c | FigureArg::Fig2d => ("population", &[(2, "p1"), (3, "p2"), (4, "p3")]),
        FigureArg::Fig3 => ("enantiomeric excess", &[(2, "ro-vibrational"), (3, "purely rotational")]),
        FigureArg::Fig4 => ("proportion", &[(2, "P1"), (3, "P2"), (4, "P3"), (5, "eta")]),
    };
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set xlabel 'T_rot (K)'\n");
    s.push_str(&format!("set ylabel '{ylabel}'\n"));
    if log_scale {
        s.push_str("set logscale x\n");
    }
    if fig == FigureArg::Fig4 {
        s.push_str("set logscale y\n");
    }
    let plots: Vec<String> =
        series.iter().map(|(col, title)| format!("'{data_file}' using 1:{col} with lines title '{title}'")).collect();
    s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    s
}
