//! Boltzmann populations at independent rotational and vibrational
//! temperatures.
//!
//! Two normalizations are used. Inside the three CTLS states the partition
//! function is the plain sum of the three Boltzmann weights (no M
//! degeneracy, since a single-loop CTLS addresses one M sublevel per
//! state). Over the whole ro-vibrational manifold the rotational sum carries
//! the `2J + 1` degeneracy and the vibrational sum runs over truncated
//! harmonic ladders. Zero temperatures are exact limits, never divisions.

use alloc::string::String;
use alloc::vec::Vec;

use crate::rotor::{rotor_levels, RotationalConstants, RotorLevel};
use crate::units::{GHZ_PER_THZ, KELVIN_PER_GHZ};
use crate::{Error, Result};

/// Hard cap on `J` in the rotational partition sum.
pub const MAX_PARTITION_J: u32 = 200;

/// Default relative truncation tolerance for partition sums.
pub const DEFAULT_REL_TOL: f64 = 1e-8;

/// Energies closer than this (relative) count as exact ties in the
/// zero-temperature limit.
const TIE_REL_TOL: f64 = 1e-12;

/// Effective rotational and vibrational temperatures in kelvin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Temperatures {
    t_rot: f64,
    t_vib: f64,
}

impl Temperatures {
    pub fn new(t_rot: f64, t_vib: f64) -> Result<Self> {
        for (name, t) in [("T_rot", t_rot), ("T_vib", t_vib)] {
            if !t.is_finite() || t < 0.0 {
                return Err(Error::domain(alloc::format!("{name} must be finite and >= 0, got {t}")));
            }
        }
        Ok(Temperatures { t_rot, t_vib })
    }

    pub fn t_rot(&self) -> f64 {
        self.t_rot
    }

    pub fn t_vib(&self) -> f64 {
        self.t_vib
    }
}

/// A harmonic vibrational mode truncated at `max_quanta`.
#[derive(Debug, Clone, PartialEq)]
pub struct VibrationalMode {
    pub name: String,
    frequency_thz: f64,
    max_quanta: u32,
}

impl VibrationalMode {
    /// OH stretch of 1,2-propanediol at 100.9500 THz.
    pub fn oh_stretch() -> Self {
        VibrationalMode { name: "OH-stretch".into(), frequency_thz: 100.95, max_quanta: 5 }
    }

    pub fn new(name: impl Into<String>, frequency_thz: f64, max_quanta: u32) -> Result<Self> {
        if !frequency_thz.is_finite() || frequency_thz <= 0.0 {
            return Err(Error::domain("vibrational frequency must be finite and > 0"));
        }
        if max_quanta < 1 {
            return Err(Error::domain("max_quanta must be >= 1"));
        }
        Ok(VibrationalMode { name: name.into(), frequency_thz, max_quanta })
    }

    pub fn frequency_thz(&self) -> f64 {
        self.frequency_thz
    }

    pub fn max_quanta(&self) -> u32 {
        self.max_quanta
    }

    /// Energy of `v` quanta, THz.
    pub fn ladder_energy(&self, v: u32) -> f64 {
        f64::from(v) * self.frequency_thz
    }
}

/// A product state `|v>|J_tau M>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoVibLevel {
    pub vib_quantum: u32,
    /// THz.
    pub vib_energy: f64,
    pub rot: RotorLevel,
    pub m: i32,
}

impl RoVibLevel {
    pub fn new(vib_quantum: u32, vib_energy: f64, rot: RotorLevel, m: i32) -> Result<Self> {
        if !vib_energy.is_finite() || vib_energy < 0.0 {
            return Err(Error::domain("vibrational energy must be finite and >= 0"));
        }
        if m.unsigned_abs() > rot.j {
            return Err(Error::domain(alloc::format!("|M| = {} exceeds J = {}", m.unsigned_abs(), rot.j)));
        }
        Ok(RoVibLevel { vib_quantum, vib_energy, rot, m })
    }

    /// Total level frequency in GHz.
    pub fn total_energy(&self) -> f64 {
        GHZ_PER_THZ * self.vib_energy + self.rot.energy
    }

    fn same_state(&self, other: &Self) -> bool {
        self.vib_quantum == other.vib_quantum && self.rot.j == other.rot.j && self.rot.tau == other.rot.tau && self.m == other.m
    }
}

/// Occupation probabilities of the three CTLS states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupationTriple([f64; 3]);

impl OccupationTriple {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        let p = [p1, p2, p3];
        if p.iter().any(|v| !v.is_finite() || !(0.0..=1.0).contains(v)) {
            return Err(Error::domain("occupations must lie in [0, 1]"));
        }
        if ((p1 + p2 + p3) - 1.0).abs() > 1e-12 {
            return Err(Error::domain(alloc::format!("occupations must sum to 1, got {}", p1 + p2 + p3)));
        }
        Ok(OccupationTriple(p))
    }

    pub fn ground() -> Self {
        OccupationTriple([1.0, 0.0, 0.0])
    }

    pub fn p1(&self) -> f64 {
        self.0[0]
    }

    pub fn p2(&self) -> f64 {
        self.0[1]
    }

    pub fn p3(&self) -> f64 {
        self.0[2]
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }
}

/// `h f / (k_B T)` for a level frequency in GHz.
pub fn boltzmann_exponent(level_freq_ghz: f64, t: f64) -> Result<f64> {
    if t <= 0.0 || !t.is_finite() {
        return Err(Error::domain(alloc::format!("temperature must be > 0, got {t}")));
    }
    Ok(level_freq_ghz * KELVIN_PER_GHZ / t)
}

/// `exp(-h f / k_B T)`, with the `T = 0` limit (1 for `f = 0`, else 0).
pub fn boltzmann_factor(level_freq_ghz: f64, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(if level_freq_ghz == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(libm::exp(-boltzmann_exponent(level_freq_ghz, t)?))
}

fn ties(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_REL_TOL * a.abs().max(b.abs())
}

/// Keeps only the active entries whose `key` is minimal among active ones.
fn restrict_to_minimum(active: &mut [bool; 3], key: impl Fn(usize) -> f64) {
    let min = (0..3).filter(|&i| active[i]).map(&key).fold(f64::INFINITY, f64::min);
    for (i, a) in active.iter_mut().enumerate() {
        if *a && !ties(key(i), min) {
            *a = false;
        }
    }
}

/// Thermal occupations of the three CTLS states, normalized over those three
/// states only.
///
/// At `T_vib = 0` only the lowest vibrational energy survives; at `T_rot = 0`
/// only the lowest rotational energy among the survivors. Ties share weight.
pub fn ctls_populations(levels: &[RoVibLevel; 3], temps: &Temperatures) -> Result<OccupationTriple> {
    for i in 0..3 {
        for j in i + 1..3 {
            if levels[i].same_state(&levels[j]) {
                return Err(Error::domain("CTLS levels must be distinct states"));
            }
        }
    }
    let vib_ghz = |i: usize| GHZ_PER_THZ * levels[i].vib_energy;
    let rot_ghz = |i: usize| levels[i].rot.energy;

    let mut active = [true; 3];
    if temps.t_vib == 0.0 {
        restrict_to_minimum(&mut active, vib_ghz);
    }
    if temps.t_rot == 0.0 {
        restrict_to_minimum(&mut active, rot_ghz);
    }

    let mut log_w = [f64::NEG_INFINITY; 3];
    for i in (0..3).filter(|&i| active[i]) {
        let mut x = 0.0;
        if temps.t_vib > 0.0 {
            x += boltzmann_exponent(vib_ghz(i), temps.t_vib)?;
        }
        if temps.t_rot > 0.0 {
            x += boltzmann_exponent(rot_ghz(i), temps.t_rot)?;
        }
        log_w[i] = -x;
    }
    // shift by the largest log-weight so that the largest weight is exactly 1
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w = log_w.map(|l| if l == f64::NEG_INFINITY { 0.0 } else { libm::exp(l - max) });
    let z: f64 = w.iter().sum();
    let p = w.map(|v| v / z);
    OccupationTriple::new(p[0], p[1], p[2])
}

/// Vibrational partition function: product over modes of truncated harmonic
/// ladder sums `sum_{v=0}^{max_quanta} exp(-v h nu / k_B T)`.
pub fn vibrational_partition(modes: &[VibrationalMode], t_vib: f64) -> Result<f64> {
    let mut z = 1.0;
    for mode in modes {
        let mut ladder = 0.0;
        for v in 0..=mode.max_quanta {
            ladder += boltzmann_factor(GHZ_PER_THZ * mode.ladder_energy(v), t_vib)?;
        }
        z *= ladder;
    }
    Ok(z)
}

/// Lazily extended table of rotor block energies, shared across partition
/// sums at different temperatures.
#[derive(Debug, Clone)]
pub struct RotationalManifold {
    constants: RotationalConstants,
    blocks: Vec<Vec<f64>>,
}

impl RotationalManifold {
    pub fn new(constants: RotationalConstants) -> Self {
        RotationalManifold { constants, blocks: Vec::new() }
    }

    pub fn constants(&self) -> &RotationalConstants {
        &self.constants
    }

    fn block(&mut self, j: u32) -> Result<&[f64]> {
        while self.blocks.len() <= j as usize {
            let next = self.blocks.len() as u32;
            let energies = rotor_levels(next, &self.constants)?.into_iter().map(|l| l.energy).collect();
            self.blocks.push(energies);
        }
        Ok(&self.blocks[j as usize])
    }

    /// Degeneracy-weighted rotational partition function.
    ///
    /// Blocks are added in increasing `J` until a geometric bound on the
    /// remaining tail, extrapolated from the ratio of the last two blocks,
    /// falls below `rel_tol` times the partial sum.
    pub fn partition(&mut self, t_rot: f64, rel_tol: f64) -> Result<f64> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::domain("rel_tol must lie in (0, 1)"));
        }
        if !t_rot.is_finite() || t_rot < 0.0 {
            return Err(Error::domain("T_rot must be finite and >= 0"));
        }
        if t_rot == 0.0 {
            return Ok(1.0);
        }
        let mut partial = 0.0;
        let mut previous = 0.0;
        for j in 0..=MAX_PARTITION_J {
            let degeneracy = f64::from(2 * j + 1);
            let mut block = 0.0;
            for &e in self.block(j)? {
                block += libm::exp(-boltzmann_exponent(e, t_rot)?);
            }
            block *= degeneracy;
            partial += block;
            if j > 0 {
                if block == 0.0 {
                    return Ok(partial);
                }
                let ratio = block / previous;
                if ratio < 1.0 && block / (1.0 - ratio) <= rel_tol * partial {
                    return Ok(partial);
                }
            }
            previous = block;
        }
        Err(Error::numerical(alloc::format!(
            "rotational partition sum not converged by J = {MAX_PARTITION_J} at T_rot = {t_rot} K"
        )))
    }
}

/// Rotational partition function `sum_J sum_tau (2J+1) exp(-h E / k_B T)`.
pub fn rotational_partition(constants: &RotationalConstants, t_rot: f64, rel_tol: f64) -> Result<f64> {
    RotationalManifold::new(*constants).partition(t_rot, rel_tol)
}

/// Global partition `Z_tot = Z_vib Z_rot` with a cached rotor manifold.
#[derive(Debug, Clone)]
pub struct GlobalPartition {
    manifold: RotationalManifold,
    modes: Vec<VibrationalMode>,
    rel_tol: f64,
    last: Option<(Temperatures, f64)>,
}

impl GlobalPartition {
    pub fn new(constants: RotationalConstants, modes: &[VibrationalMode], rel_tol: f64) -> Self {
        GlobalPartition { manifold: RotationalManifold::new(constants), modes: modes.to_vec(), rel_tol, last: None }
    }

    pub fn z_tot(&mut self, temps: &Temperatures) -> Result<f64> {
        if let Some((t, z)) = self.last {
            if t == *temps {
                return Ok(z);
            }
        }
        let z_rot = self.manifold.partition(temps.t_rot, self.rel_tol)?;
        let z_vib = vibrational_partition(&self.modes, temps.t_vib)?;
        self.last = Some((*temps, z_rot * z_vib));
        Ok(z_rot * z_vib)
    }

    /// Proportion of `level` (a single M sublevel) in the full manifold.
    pub fn proportion(&mut self, level: &RoVibLevel, temps: &Temperatures) -> Result<f64> {
        let weight = boltzmann_factor(GHZ_PER_THZ * level.vib_energy, temps.t_vib)?
            * boltzmann_factor(level.rot.energy, temps.t_rot)?;
        Ok(weight / self.z_tot(temps)?)
    }
}

/// Proportion `P_n` of one state relative to the whole ro-vibrational
/// manifold.
pub fn global_proportion(
    level: &RoVibLevel,
    constants: &RotationalConstants,
    modes: &[VibrationalMode],
    temps: &Temperatures,
    rel_tol: f64,
) -> Result<f64> {
    GlobalPartition::new(*constants, modes, rel_tol).proportion(level, temps)
}

/// Fraction of a racemic mixture turned into pure enantiomers in one pass.
pub fn yield_eta(p1: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p1) {
        return Err(Error::domain(alloc::format!("P_1 must lie in [0, 1], got {p1}")));
    }
    Ok(p1 / 2.0)
}
