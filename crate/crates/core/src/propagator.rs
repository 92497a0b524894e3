//! Time-ordered propagation of the interaction-picture CTLS Hamiltonian
//!
//! `H(t) / hbar = sum_{m>n} Omega_nm(t) exp(i Delta_mn t) |n><m| + h.c.`
//!
//! with midpoint matrix exponentials on a uniform grid, plus the three-step
//! transfer protocol built on top of it.

use alloc::format;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;

use crate::ctls::{signed_couplings, BaseCouplings, Chirality, CouplingSet, DriveField, Step, Transition};
use crate::density::DensityMatrix3;
use crate::envelope::{EnvelopeKind, PulseEnvelope};
use crate::linalg::Matrix3;
use crate::{Error, Result};

/// Tolerance for pulse-area and phase checks in [`PulseSchedule::validate`].
pub const SCHEDULE_TOL: f64 = 1e-8;

/// Default duration of each protocol pulse, seconds.
pub const DEFAULT_PULSE_DURATION: f64 = 200e-9;

/// Default idle time between protocol pulses, seconds.
pub const DEFAULT_PULSE_GAP: f64 = 20e-9;

/// `H(t) / hbar` in rad/s.
pub fn interaction_hamiltonian(t: f64, fields: &CouplingSet) -> Matrix3 {
    let mut h = Matrix3::zeros();
    for f in &fields.fields {
        if f.is_off() {
            continue;
        }
        let (n, m) = f.transition.indices();
        let coupling = f.rabi(t) * Complex64::from_polar(1.0, f.detuning * t);
        h[(n, m)] += coupling;
        h[(m, n)] += coupling.conj();
    }
    h
}

/// Uniform grid of `steps` intervals over `[t0, t1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    t1: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, t1: f64, steps: usize) -> Result<Self> {
        if steps < 1 {
            return Err(Error::domain("time grid needs at least one step"));
        }
        if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
            return Err(Error::domain("time grid window must satisfy t0 < t1"));
        }
        Ok(TimeGrid { t0, t1, steps })
    }

    pub fn window(&self) -> (f64, f64) {
        (self.t0, self.t1)
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        (self.t1 - self.t0) / self.steps as f64
    }

    fn midpoint(&self, k: usize) -> f64 {
        self.t0 + (k as f64 + 0.5) * self.dt()
    }
}

/// `U(t1 <- t0)` as the ordered product of `exp(-i H(t_mid) dt)` over the grid.
pub fn propagate(fields: &CouplingSet, grid: &TimeGrid) -> Result<Matrix3> {
    let dt = grid.dt();
    let mut u = Matrix3::identity();
    for k in 0..grid.steps {
        let h = interaction_hamiltonian(grid.midpoint(k), fields);
        if !h.is_finite() {
            return Err(Error::numerical(format!("non-finite Hamiltonian at t = {}", grid.midpoint(k))));
        }
        u = h.scale(Complex64::new(0.0, -dt)).exp() * u;
    }
    if !u.is_finite() {
        return Err(Error::numerical("propagator produced non-finite entries"));
    }
    Ok(u)
}

/// One protocol step: its time window, drive fields and target area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolStep {
    pub step: Step,
    pub t_start: f64,
    pub t_end: f64,
    pub fields: BaseCouplings,
    /// pi/4 for A, pi/2 (of `Omega_0`) for B, `(k + 3/4) pi` for C.
    pub target_area: f64,
}

impl ProtocolStep {
    /// Signed area actually delivered by the step's fields.
    pub fn delivered_area(&self) -> f64 {
        match self.step {
            Step::A | Step::C => self.fields.d13.map_or(0.0, |f| f.area().re),
            // Omega_0 = sqrt(2) Omega_23
            Step::B => self.fields.d23.map_or(0.0, |f| SQRT_2 * f.area().re),
        }
    }
}

/// The three-step transfer protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSchedule {
    pub steps: [ProtocolStep; 3],
}

fn pump_step(step: Step, kind: EnvelopeKind, t_start: f64, t_end: f64, signed_area: f64) -> Result<ProtocolStep> {
    let envelope = PulseEnvelope::with_area(kind, t_start, t_end, signed_area.abs())?;
    // negative areas are a pi phase flip of the amplitude
    let sign = if signed_area < 0.0 { -1.0 } else { 1.0 };
    let pump = DriveField::resonant(Transition::T13, Complex64::new(sign, 0.0), envelope);
    Ok(ProtocolStep {
        step,
        t_start,
        t_end,
        fields: BaseCouplings::new(DriveField::off(Transition::T12), DriveField::off(Transition::T23), pump),
        target_area: signed_area,
    })
}

fn two_photon_step(kind: EnvelopeKind, t_start: f64, t_end: f64) -> Result<ProtocolStep> {
    // Omega_0 carries area pi/2; Omega_23 = Omega_0 / sqrt 2 and Omega_12 = i Omega_23
    let omega0 = PulseEnvelope::with_area(kind, t_start, t_end, FRAC_PI_2)?;
    let s = core::f64::consts::FRAC_1_SQRT_2;
    Ok(ProtocolStep {
        step: Step::B,
        t_start,
        t_end,
        fields: BaseCouplings::new(
            DriveField::resonant(Transition::T12, Complex64::new(0.0, s), omega0),
            DriveField::resonant(Transition::T23, Complex64::new(s, 0.0), omega0),
            DriveField::off(Transition::T13),
        ),
        target_area: FRAC_PI_2,
    })
}

impl PulseSchedule {
    /// Canonical schedule: three pulses of length `duration` separated by
    /// `gap`, starting at t = 0, with areas pi/4, pi/2, -pi/4.
    pub fn ideal(kind: EnvelopeKind, duration: f64, gap: f64) -> Result<Self> {
        Self::with_step_c_area(kind, duration, gap, -FRAC_PI_4)
    }

    /// As [`PulseSchedule::ideal`] with a different signed step-C area.
    pub fn with_step_c_area(kind: EnvelopeKind, duration: f64, gap: f64, step_c_area: f64) -> Result<Self> {
        if !(duration > 0.0 && gap >= 0.0) {
            return Err(Error::domain("pulse duration must be > 0 and gap >= 0"));
        }
        let window = |i: f64| (i * (duration + gap), i * (duration + gap) + duration);
        let (a0, a1) = window(0.0);
        let (b0, b1) = window(1.0);
        let (c0, c1) = window(2.0);
        Ok(PulseSchedule {
            steps: [
                pump_step(Step::A, kind, a0, a1, FRAC_PI_4)?,
                two_photon_step(kind, b0, b1)?,
                pump_step(Step::C, kind, c0, c1, step_c_area)?,
            ],
        })
    }

    pub fn step(&self, step: Step) -> &ProtocolStep {
        &self.steps[step as usize]
    }

    pub fn window(&self) -> (f64, f64) {
        (self.steps[0].t_start, self.steps[2].t_end)
    }

    /// Checks ordering, step structure, the step-B phase relation, zero
    /// detunings and the pulse areas.
    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.steps.iter().enumerate() {
            if s.step != Step::ALL[i] {
                return Err(Error::config("protocol steps must be ordered A, B, C"));
            }
            if s.t_start >= s.t_end || s.t_start.is_nan() || s.t_end.is_nan() {
                return Err(Error::config(format!("step {:?} has an empty window", s.step)));
            }
            if i > 0 && self.steps[i - 1].t_end > s.t_start {
                return Err(Error::config("protocol steps overlap in time"));
            }
            let fields = [s.fields.d12, s.fields.d23, s.fields.d13];
            let Some([d12, d23, d13]) = (fields.iter().all(Option::is_some)).then(|| fields.map(Option::unwrap)) else {
                return Err(Error::config(format!("step {:?} is missing a transition", s.step)));
            };
            for f in [d12, d23, d13] {
                if f.detuning != 0.0 {
                    return Err(Error::config("protocol fields must be resonant"));
                }
                let (w0, w1) = f.envelope.window();
                if !f.is_off() && (w0 < s.t_start || w1 > s.t_end) {
                    return Err(Error::config(format!("step {:?} envelope leaves its window", s.step)));
                }
            }
            match s.step {
                Step::A | Step::C => {
                    if !(d12.is_off() && d23.is_off()) {
                        return Err(Error::config(format!("step {:?} must drive only (1,3)", s.step)));
                    }
                    if d13.amplitude.im.abs() > SCHEDULE_TOL {
                        return Err(Error::config(format!("step {:?} pump amplitude must be real", s.step)));
                    }
                }
                Step::B => {
                    if !d13.is_off() {
                        return Err(Error::config("step B must not drive (1,3)"));
                    }
                    let a = d23.amplitude;
                    let phase_ok = a.im.abs() <= SCHEDULE_TOL
                        && a.re > 0.0
                        && (d12.amplitude - Complex64::new(0.0, a.re)).norm() <= SCHEDULE_TOL * a.re
                        && d12.envelope == d23.envelope;
                    if !phase_ok {
                        return Err(Error::config("step B needs Omega_23 = |Omega_23| = -i Omega_12"));
                    }
                }
            }
            let area = s.delivered_area();
            if (area - s.target_area).abs() > SCHEDULE_TOL {
                return Err(Error::config(format!(
                    "step {:?} delivers area {area} but targets {}",
                    s.step, s.target_area
                )));
            }
            let target_ok = match s.step {
                Step::A => (s.target_area - FRAC_PI_4).abs() <= SCHEDULE_TOL,
                Step::B => (s.target_area - FRAC_PI_2).abs() <= SCHEDULE_TOL,
                Step::C => {
                    let k = s.target_area / PI - 0.75;
                    (k - libm::round(k)).abs() * PI <= SCHEDULE_TOL
                }
            };
            if !target_ok {
                return Err(Error::config(format!("step {:?} target area {} is not allowed", s.step, s.target_area)));
            }
        }
        Ok(())
    }
}

/// Propagates every step of `schedule` for chirality `q` without checking the
/// protocol areas. Idle gaps contribute the identity.
pub fn propagate_schedule(schedule: &PulseSchedule, q: Chirality, steps_per_pulse: usize) -> Result<Matrix3> {
    let mut u = Matrix3::identity();
    for s in &schedule.steps {
        let fields = signed_couplings(&s.fields, q)?;
        let grid = TimeGrid::new(s.t_start, s.t_end, steps_per_pulse)?;
        u = propagate(&fields, &grid)? * u;
    }
    Ok(u)
}

/// Total protocol unitary for chirality `q` after validating the schedule.
pub fn run_protocol(schedule: &PulseSchedule, q: Chirality, steps_per_pulse: usize) -> Result<Matrix3> {
    schedule.validate()?;
    propagate_schedule(schedule, q, steps_per_pulse)
}

/// `U rho U^dagger`.
pub fn apply_to_density(u: &Matrix3, rho: &DensityMatrix3) -> Result<DensityMatrix3> {
    DensityMatrix3::new(*u * *rho.matrix() * u.adjoint())
}
