//! Thermal ensembles through the transfer protocol: final states, enantiomeric
//! excess, and temperature sweeps of populations, excess and yield.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::ctls::{total_unitary, Chirality};
use crate::density::DensityMatrix3;
use crate::propagator::{apply_to_density, run_protocol, PulseSchedule};
use crate::rotor::{rotor_levels, RotationalConstants};
use crate::thermal::{
    boltzmann_exponent, ctls_populations, yield_eta, GlobalPartition, OccupationTriple, RoVibLevel, Temperatures,
    VibrationalMode, DEFAULT_REL_TOL,
};
use crate::units::GHZ_PER_THZ;
use crate::{Error, Result};

/// Log Boltzmann ratios beyond this magnitude give an excess of exactly 1.
pub const LOG_RATIO_LIMIT: f64 = 500.0;

/// Maximum disagreement tolerated between the two excess formulas.
pub const EXCESS_CROSS_CHECK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CtlsMode {
    /// `|1>` in the vibrational ground state, `|2>` and `|3>` one quantum up.
    RoVibrational,
    /// All three levels in the vibrational ground state.
    PurelyRotational,
}

/// How the `(tau, m)` pair of a [`LevelSelection`] is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Labeling {
    /// `tau` is the energy-ordering index, `m` the magnetic quantum number.
    #[default]
    Tau,
    /// The pair is `(K_a, K_c)`; `tau = K_a - K_c` and `M = 0`.
    KaKc,
}

/// One CTLS state as written in a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LevelSelection {
    pub vib: u32,
    pub j: u32,
    pub tau: i32,
    pub m: i32,
}

impl LevelSelection {
    pub const fn new(vib: u32, j: u32, tau: i32, m: i32) -> Self {
        LevelSelection { vib, j, tau, m }
    }

    /// `(tau, M)` under the given labeling.
    pub fn resolve_labels(&self, labeling: Labeling) -> Result<(i32, i32)> {
        match labeling {
            Labeling::Tau => Ok((self.tau, self.m)),
            Labeling::KaKc => {
                let (ka, kc) = (self.tau, self.m);
                let j = self.j as i32;
                let valid = (0..=j).contains(&ka) && (0..=j).contains(&kc) && (ka + kc == j || ka + kc == j + 1);
                if !valid {
                    return Err(Error::config(format!("K_a = {ka}, K_c = {kc} is not a valid label for J = {j}")));
                }
                Ok((ka - kc, 0))
            }
        }
    }
}

/// Molecule, level selection and labeling of one CTLS.
#[derive(Debug, Clone, PartialEq)]
pub struct CtlsConfig {
    mode: CtlsMode,
    constants: RotationalConstants,
    modes: Vec<VibrationalMode>,
    selection: [LevelSelection; 3],
    labeling: Labeling,
    levels: [RoVibLevel; 3],
}

impl CtlsConfig {
    /// Vibrational quanta count in the first listed mode.
    pub fn new(
        mode: CtlsMode,
        constants: RotationalConstants,
        modes: Vec<VibrationalMode>,
        selection: [LevelSelection; 3],
        labeling: Labeling,
    ) -> Result<Self> {
        let expected = match mode {
            CtlsMode::RoVibrational => [0, 1, 1],
            CtlsMode::PurelyRotational => [0, 0, 0],
        };
        if selection.map(|s| s.vib) != expected {
            return Err(Error::config(format!(
                "{mode:?} CTLS needs vibrational quanta {expected:?}, got {:?}",
                selection.map(|s| s.vib)
            )));
        }
        let mut levels = [None; 3];
        for (slot, sel) in levels.iter_mut().zip(&selection) {
            let (tau, m) = sel.resolve_labels(labeling)?;
            let rot = rotor_levels(sel.j, &constants)?
                .into_iter()
                .find(|l| l.tau == tau)
                .ok_or_else(|| Error::config(format!("tau = {tau} out of range for J = {}", sel.j)))?;
            let vib_energy = match (sel.vib, modes.first()) {
                (0, _) => 0.0,
                (v, Some(first)) if v <= first.max_quanta() => first.ladder_energy(v),
                (v, Some(_)) => return Err(Error::config(format!("vibrational quantum {v} exceeds max_quanta"))),
                (_, None) => return Err(Error::config("excited vibrational level needs a vibrational mode")),
            };
            *slot = Some(RoVibLevel::new(sel.vib, vib_energy, rot, m).map_err(|e| Error::config(format!("{e}")))?);
        }
        let levels = levels.map(Option::unwrap);
        let config = CtlsConfig { mode, constants, modes, selection, labeling, levels };
        // rejects repeated states
        ctls_populations(&config.levels, &Temperatures::new(1.0, 1.0)?).map_err(|e| Error::config(format!("{e}")))?;
        Ok(config)
    }

    /// 1,2-propanediol with `|1> = |0_00>`, `|2> = |1_01>`, `|3> = |1_10>` and
    /// the OH stretch.
    pub fn propanediol(mode: CtlsMode, labeling: Labeling) -> Result<Self> {
        let (v2, v3) = match mode {
            CtlsMode::RoVibrational => (1, 1),
            CtlsMode::PurelyRotational => (0, 0),
        };
        CtlsConfig::new(
            mode,
            RotationalConstants::PROPANEDIOL,
            alloc::vec![VibrationalMode::oh_stretch()],
            [LevelSelection::new(0, 0, 0, 0), LevelSelection::new(v2, 1, 0, 1), LevelSelection::new(v3, 1, 1, 0)],
            labeling,
        )
    }

    /// Same molecule and rotational labels in the other mode.
    pub fn with_mode(&self, mode: CtlsMode) -> Result<Self> {
        let mut selection = self.selection;
        let quanta = match mode {
            CtlsMode::RoVibrational => [0, 1, 1],
            CtlsMode::PurelyRotational => [0, 0, 0],
        };
        for (s, v) in selection.iter_mut().zip(quanta) {
            s.vib = v;
        }
        CtlsConfig::new(mode, self.constants, self.modes.clone(), selection, self.labeling)
    }

    pub fn mode(&self) -> CtlsMode {
        self.mode
    }

    pub fn constants(&self) -> &RotationalConstants {
        &self.constants
    }

    pub fn vibrational_modes(&self) -> &[VibrationalMode] {
        &self.modes
    }

    pub fn selection(&self) -> &[LevelSelection; 3] {
        &self.selection
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    pub fn levels(&self) -> &[RoVibLevel; 3] {
        &self.levels
    }

    /// Thermal occupations of the three states.
    pub fn populations(&self, temps: &Temperatures) -> Result<OccupationTriple> {
        ctls_populations(&self.levels, temps)
    }

    /// `ln(p1 / p3)`, possibly infinite at zero temperature.
    pub fn log_ratio(&self, temps: &Temperatures) -> Result<f64> {
        let (l1, l3) = (&self.levels[0], &self.levels[2]);
        let part = |e1: f64, e3: f64, t: f64| -> Result<f64> {
            let d = e3 - e1;
            if d == 0.0 {
                Ok(0.0)
            } else if t == 0.0 {
                Ok(f64::INFINITY.copysign(d))
            } else {
                boltzmann_exponent(d, t)
            }
        };
        let vib = part(GHZ_PER_THZ * l1.vib_energy, GHZ_PER_THZ * l3.vib_energy, temps.t_vib())?;
        let rot = part(l1.rot.energy, l3.rot.energy, temps.t_rot())?;
        if vib.is_infinite() && rot.is_infinite() && vib != rot {
            // opposite infinities: the vibrational limit is taken first
            return Ok(vib);
        }
        Ok(vib + rot)
    }
}

/// `diag(p1, p2, p3)`.
pub fn thermal_initial_state(p: &OccupationTriple) -> DensityMatrix3 {
    DensityMatrix3::diagonal(p)
}

/// How the protocol unitaries are obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum TransferMethod {
    /// Closed-form composite unitaries.
    Analytic,
    /// Time-ordered propagation of a validated pulse schedule.
    Numeric { schedule: Box<PulseSchedule>, steps_per_pulse: usize },
}

/// Final density matrices `(rho_L, rho_R)` after the protocol.
pub fn final_states(p: &OccupationTriple, method: &TransferMethod) -> Result<(DensityMatrix3, DensityMatrix3)> {
    let rho = thermal_initial_state(p);
    let unitary = |q: Chirality| match method {
        TransferMethod::Analytic => Ok(total_unitary(q)),
        TransferMethod::Numeric { schedule, steps_per_pulse } => run_protocol(schedule, q, *steps_per_pulse),
    };
    let l = apply_to_density(&unitary(Chirality::L)?, &rho)?;
    let r = apply_to_density(&unitary(Chirality::R)?, &rho)?;
    Ok((l, r))
}

/// `|p3 - p1| / (p3 + p1)`, the excess of one enantiomer over the other in
/// `|2>` after the protocol.
pub fn enantiomeric_excess(p: &OccupationTriple) -> Result<f64> {
    excess_from_pair(p.p1(), p.p3())
}

fn excess_from_pair(a: f64, b: f64) -> Result<f64> {
    let sum = a + b;
    if sum <= 0.0 || sum.is_nan() {
        return Err(Error::UndefinedExcess);
    }
    Ok((a - b).abs() / sum)
}

/// `|1 - 2 / (1 + r)|` from `ln r`, exactly 1 once `|ln r|` exceeds
/// [`LOG_RATIO_LIMIT`].
pub fn excess_from_log_ratio(log_r: f64) -> Result<f64> {
    if log_r.is_nan() {
        return Err(Error::UndefinedExcess);
    }
    if log_r.abs() > LOG_RATIO_LIMIT {
        return Ok(1.0);
    }
    Ok((1.0 - 2.0 / (1.0 + libm::exp(log_r))).abs())
}

/// Excess of `config` at `temps`, evaluated from the populations and from the
/// Boltzmann ratio; the two must agree.
pub fn excess_at(config: &CtlsConfig, temps: &Temperatures) -> Result<f64> {
    let direct = enantiomeric_excess(&config.populations(temps)?)?;
    let ratio = excess_from_log_ratio(config.log_ratio(temps)?)?;
    if (direct - ratio).abs() > EXCESS_CROSS_CHECK_TOL {
        return Err(Error::numerical(format!("excess forms disagree: {direct} vs {ratio}")));
    }
    Ok(direct)
}

/// Outcome of running one thermal ensemble through the protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferResult {
    pub temperatures: Temperatures,
    pub initial: OccupationTriple,
    pub final_l: [f64; 3],
    pub final_r: [f64; 3],
    pub excess: f64,
}

/// Runs the protocol on the thermal state of `config`. The excess is read off
/// the `|2>` populations of the two final states.
pub fn run_transfer(config: &CtlsConfig, temps: &Temperatures, method: &TransferMethod) -> Result<TransferResult> {
    let initial = config.populations(temps)?;
    let (l, r) = final_states(&initial, method)?;
    let (final_l, final_r) = (l.populations(), r.populations());
    let excess = excess_from_pair(final_l[1], final_r[1])?;
    Ok(TransferResult { temperatures: *temps, initial, final_l, final_r, excess })
}

/// Rotational temperature grid in kelvin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperatureGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log_scale: bool,
}

impl Default for TemperatureGrid {
    fn default() -> Self {
        TemperatureGrid { min: 1e-3, max: 300.0, points: 200, log_scale: true }
    }
}

impl TemperatureGrid {
    pub fn new(min: f64, max: f64, points: usize, log_scale: bool) -> Result<Self> {
        let grid = TemperatureGrid { min, max, points, log_scale };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min >= 0.0 && self.max >= self.min) {
            return Err(Error::config("sweep needs finite 0 <= t_rot_min_k <= t_rot_max_k"));
        }
        if self.points == 0 {
            return Err(Error::config("sweep needs at least one point"));
        }
        if self.points > 1 && self.max == self.min {
            return Err(Error::config("sweep with several points needs t_rot_min_k < t_rot_max_k"));
        }
        if self.log_scale && self.min <= 0.0 {
            return Err(Error::config("logarithmic sweep needs t_rot_min_k > 0"));
        }
        Ok(())
    }

    /// Grid temperatures in increasing order, endpoints exact.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        if n == 1 {
            return alloc::vec![self.min];
        }
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == 0 {
                    self.min
                } else if i == n - 1 {
                    self.max
                } else if self.log_scale {
                    let (a, b) = (libm::log(self.min), libm::log(self.max));
                    libm::exp(a + (b - a) * i as f64 / last)
                } else {
                    self.min + (self.max - self.min) * i as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationPoint {
    pub t_rot: f64,
    pub populations: OccupationTriple,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcessPoint {
    pub t_rot: f64,
    pub excess: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YieldPoint {
    pub t_rot: f64,
    /// Proportions of the three CTLS states in the full manifold.
    pub proportions: [f64; 3],
    pub eta: f64,
}

/// CTLS populations at each `T_rot` with fixed `T_vib`, in input order.
pub fn population_sweep(config: &CtlsConfig, t_rots: &[f64], t_vib: f64) -> Result<Vec<PopulationPoint>> {
    t_rots
        .iter()
        .map(|&t_rot| {
            let populations = config.populations(&Temperatures::new(t_rot, t_vib)?)?;
            Ok(PopulationPoint { t_rot, populations })
        })
        .collect()
}

/// Enantiomeric excess at each `T_rot` with fixed `T_vib`, in input order.
pub fn excess_sweep(config: &CtlsConfig, t_rots: &[f64], t_vib: f64) -> Result<Vec<ExcessPoint>> {
    t_rots
        .iter()
        .map(|&t_rot| Ok(ExcessPoint { t_rot, excess: excess_at(config, &Temperatures::new(t_rot, t_vib)?)? }))
        .collect()
}

/// Global proportions `P_n` and yield at each `T_rot` with fixed `T_vib`.
pub fn yield_sweep(config: &CtlsConfig, t_rots: &[f64], t_vib: f64) -> Result<Vec<YieldPoint>> {
    let mut global = GlobalPartition::new(config.constants, &config.modes, DEFAULT_REL_TOL);
    t_rots
        .iter()
        .map(|&t_rot| {
            let temps = Temperatures::new(t_rot, t_vib)?;
            let z = global.z_tot(&temps)?;
            let mut proportions = [0.0; 3];
            for (p, level) in proportions.iter_mut().zip(&config.levels) {
                *p = global.proportion(level, &temps)?;
            }
            debug_assert!(z > 0.0);
            Ok(YieldPoint { t_rot, proportions, eta: yield_eta(proportions[0])? })
        })
        .collect()
}
