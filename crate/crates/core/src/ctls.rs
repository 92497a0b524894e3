//! Chirality-dependent coupling structure of the cyclic three-level system
//! and the closed-form unitaries of the three-step protocol.
//!
//! The two enantiomers share their level energies and differ only in the
//! sign of the `(1,3)` coupling, so the loop phase
//! `arg(Omega_12 Omega_23 Omega_31)` differs by pi between them. The sign is
//! carried by the left-handed molecule: with that choice the step matrices
//! multiply to `U_L = [[1,0,0],[0,0,-i],[0,-i,0]]` (swap of |2> and |3>) and
//! `U_R = [[0,1,0],[-1,0,0],[0,0,1]]` (swap of |1> and |2>).

use core::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;

use crate::envelope::PulseEnvelope;
use crate::linalg::Matrix3;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chirality {
    L,
    R,
}

impl Chirality {
    pub const BOTH: [Chirality; 2] = [Chirality::L, Chirality::R];
}

/// Driven transition `|n> <-> |m>` with `n < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transition {
    T12,
    T23,
    T13,
}

impl Transition {
    pub const ALL: [Transition; 3] = [Transition::T12, Transition::T23, Transition::T13];

    /// Zero-based `(n, m)` basis indices.
    pub fn indices(self) -> (usize, usize) {
        match self {
            Transition::T12 => (0, 1),
            Transition::T23 => (1, 2),
            Transition::T13 => (0, 2),
        }
    }
}

/// One classical drive: `Omega_nm(t) = amplitude * envelope(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveField {
    pub transition: Transition,
    /// Complex prefactor multiplying the real envelope.
    pub amplitude: Complex64,
    pub envelope: PulseEnvelope,
    /// `Delta_mn = nu_mn - omega_m + omega_n`, rad/s.
    pub detuning: f64,
    /// Carrier frequency `nu_mn`, rad/s. Not used by the interaction-picture
    /// dynamics.
    pub frequency: f64,
}

impl DriveField {
    pub fn resonant(transition: Transition, amplitude: Complex64, envelope: PulseEnvelope) -> Self {
        DriveField { transition, amplitude, envelope, detuning: 0.0, frequency: 0.0 }
    }

    /// A field that is switched off for the whole step.
    pub fn off(transition: Transition) -> Self {
        Self::resonant(transition, Complex64::new(0.0, 0.0), PulseEnvelope::off())
    }

    /// Rabi frequency `Omega_nm(t)`.
    pub fn rabi(&self, t: f64) -> Complex64 {
        self.amplitude * self.envelope.value(t)
    }

    pub fn is_off(&self) -> bool {
        self.amplitude == Complex64::new(0.0, 0.0) || self.envelope.is_off()
    }

    /// Signed pulse area `amplitude * integral(envelope)`.
    pub fn area(&self) -> Complex64 {
        self.amplitude * crate::envelope::pulse_area(&self.envelope)
    }
}

/// Drive fields before the chirality sign rule is applied.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BaseCouplings {
    pub d12: Option<DriveField>,
    pub d23: Option<DriveField>,
    pub d13: Option<DriveField>,
}

impl BaseCouplings {
    pub fn new(d12: DriveField, d23: DriveField, d13: DriveField) -> Self {
        BaseCouplings { d12: Some(d12), d23: Some(d23), d13: Some(d13) }
    }
}

/// The three drive fields seen by one enantiomer, ordered `(1,2), (2,3), (1,3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSet {
    pub fields: [DriveField; 3],
    pub chirality: Chirality,
}

impl CouplingSet {
    pub fn field(&self, transition: Transition) -> &DriveField {
        match transition {
            Transition::T12 => &self.fields[0],
            Transition::T23 => &self.fields[1],
            Transition::T13 => &self.fields[2],
        }
    }

    /// Loop phase from the constant prefactors, in `[0, 2 pi)`.
    pub fn overall_phase(&self) -> Result<f64> {
        loop_phase(self.fields.map(|f| f.amplitude))
    }

    /// Loop phase from the instantaneous Rabi frequencies at `t`.
    pub fn overall_phase_at(&self, t: f64) -> Result<f64> {
        loop_phase(self.fields.map(|f| f.rabi(t)))
    }
}

/// `arg(Omega_12 Omega_23 conj(Omega_13))` wrapped into `[0, 2 pi)`.
fn loop_phase([o12, o23, o13]: [Complex64; 3]) -> Result<f64> {
    if [o12, o23, o13].iter().any(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(Error::UndefinedPhase);
    }
    let phi = (o12 * o23 * o13.conj()).arg();
    let wrapped = if phi < 0.0 { phi + TAU } else { phi };
    Ok(if wrapped >= TAU { 0.0 } else { wrapped })
}

/// Loop phase of a coupling set, in `[0, 2 pi)`.
pub fn overall_phase(c: &CouplingSet) -> Result<f64> {
    c.overall_phase()
}

/// Applies the chirality sign rule: the `(1,3)` amplitude is negated for the
/// left-handed molecule, everything else is shared.
pub fn signed_couplings(base: &BaseCouplings, q: Chirality) -> Result<CouplingSet> {
    let (Some(d12), Some(d23), Some(mut d13)) = (base.d12, base.d23, base.d13) else {
        return Err(Error::domain("coupling set needs all three transitions (1,2), (2,3), (1,3)"));
    };
    if [d12.transition, d23.transition, d13.transition] != Transition::ALL {
        return Err(Error::domain("coupling fields are attached to the wrong transitions"));
    }
    if q == Chirality::L {
        d13.amplitude = -d13.amplitude;
    }
    Ok(CouplingSet { fields: [d12, d23, d13], chirality: q })
}

/// Protocol step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// `(1,3)` pump, area pi/4.
    A,
    /// `(1,2)` and `(2,3)` pulses, `Omega_0` area pi/2.
    B,
    /// `(1,3)` pump, area -pi/4.
    C,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::A, Step::B, Step::C];
}

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const S: f64 = FRAC_1_SQRT_2;

/// `exp(-i theta (|1><3| + |3><1|))` at `theta = +pi/4`.
const PUMP_PLUS: Matrix3 = Matrix3::from_rows([
    [c(S, 0.0), c(0.0, 0.0), c(0.0, -S)],
    [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    [c(0.0, -S), c(0.0, 0.0), c(S, 0.0)],
]);

/// Same at `theta = -pi/4`.
const PUMP_MINUS: Matrix3 = Matrix3::from_rows([
    [c(S, 0.0), c(0.0, 0.0), c(0.0, S)],
    [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    [c(0.0, S), c(0.0, 0.0), c(S, 0.0)],
]);

/// Step B, identical for both enantiomers.
const STEP_B: Matrix3 = Matrix3::from_rows([
    [c(0.5, 0.0), c(S, 0.0), c(0.0, -0.5)],
    [c(-S, 0.0), c(0.0, 0.0), c(0.0, -S)],
    [c(0.0, 0.5), c(0.0, -S), c(0.5, 0.0)],
]);

/// Closed-form unitary of one protocol step in the basis `{|1>, |2>, |3>}`.
pub fn analytic_step_unitary(step: Step, q: Chirality) -> Matrix3 {
    match (step, q) {
        (Step::A, Chirality::R) | (Step::C, Chirality::L) => PUMP_PLUS,
        (Step::A, Chirality::L) | (Step::C, Chirality::R) => PUMP_MINUS,
        (Step::B, _) => STEP_B,
    }
}

/// `U_Q = U_C U_B U_A`.
pub fn total_unitary(q: Chirality) -> Matrix3 {
    analytic_step_unitary(Step::C, q) * analytic_step_unitary(Step::B, q) * analytic_step_unitary(Step::A, q)
}

/// Closed forms of [`total_unitary`].
pub fn composite_unitary_closed_form(q: Chirality) -> Matrix3 {
    match q {
        Chirality::L => Matrix3::from_rows([
            [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)],
            [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 0.0)],
        ]),
        Chirality::R => Matrix3::from_rows([
            [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            [c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ]),
    }
}

/// Bright state `|D> = (i|1> + |3>) / sqrt 2` coupled to `|2>` in step B.
pub fn bright_state() -> [Complex64; 3] {
    [c(0.0, S), c(0.0, 0.0), c(S, 0.0)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{EnvelopeKind, PulseEnvelope};
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn field(t: Transition, amp: Complex64) -> DriveField {
        DriveField::resonant(t, amp, PulseEnvelope::with_area(EnvelopeKind::Rectangular, 0.0, 1.0, 1.0).unwrap())
    }

    fn base(o12: Complex64, o23: Complex64, o13: Complex64) -> BaseCouplings {
        BaseCouplings::new(field(Transition::T12, o12), field(Transition::T23, o23), field(Transition::T13, o13))
    }

    fn phase_diff(a: f64, b: f64) -> f64 {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d)
    }

    #[test]
    fn sign_rule_flips_only_pump() {
        let b = base(c(1.0, 0.5), c(2.0, 0.0), c(0.3, -0.7));
        let l = signed_couplings(&b, Chirality::L).unwrap();
        let r = signed_couplings(&b, Chirality::R).unwrap();
        assert_eq!(r.field(Transition::T13).amplitude, c(0.3, -0.7));
        assert_eq!(l.field(Transition::T13).amplitude, -c(0.3, -0.7));
        for t in [Transition::T12, Transition::T23] {
            assert_eq!(l.field(t).amplitude, r.field(t).amplitude);
        }
        assert_eq!(l.field(Transition::T13).amplitude, -r.field(Transition::T13).amplitude);
    }

    #[test]
    fn missing_transition_is_domain_error() {
        let mut b = base(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        b.d23 = None;
        assert!(matches!(signed_couplings(&b, Chirality::R), Err(Error::Domain(_))));
        let mut swapped = base(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        swapped.d12 = swapped.d23;
        assert!(signed_couplings(&swapped, Chirality::R).is_err());
    }

    #[test]
    fn phase_examples() {
        let r = signed_couplings(&base(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)), Chirality::R).unwrap();
        assert_eq!(r.overall_phase().unwrap(), 0.0);
        let l = signed_couplings(&base(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)), Chirality::L).unwrap();
        assert!((l.overall_phase().unwrap() - PI).abs() < 1e-15);
        // step-B relation Omega_23 = -i Omega_12 > 0, i.e. Omega_12 = i |Omega_12|
        let b = signed_couplings(&base(c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0)), Chirality::R).unwrap();
        assert!((overall_phase(&b).unwrap() - PI / 2.0).abs() < 1e-15);
        let b = signed_couplings(&base(c(0.0, -1.0), c(1.0, 0.0), c(1.0, 0.0)), Chirality::R).unwrap();
        assert!((overall_phase(&b).unwrap() - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn phase_undefined_for_zero_amplitude() {
        let r = signed_couplings(&base(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)), Chirality::R).unwrap();
        assert_eq!(r.overall_phase(), Err(Error::UndefinedPhase));
        let r = signed_couplings(&base(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)), Chirality::R).unwrap();
        assert!(r.overall_phase_at(0.5).is_ok());
        assert_eq!(r.overall_phase_at(2.0), Err(Error::UndefinedPhase));
    }

    #[test]
    fn step_matrices() {
        assert_eq!(analytic_step_unitary(Step::A, Chirality::L), PUMP_MINUS);
        assert_eq!(analytic_step_unitary(Step::A, Chirality::R), PUMP_PLUS);
        assert_eq!(analytic_step_unitary(Step::C, Chirality::L), PUMP_PLUS);
        assert_eq!(analytic_step_unitary(Step::C, Chirality::R), PUMP_MINUS);
        assert_eq!(analytic_step_unitary(Step::B, Chirality::L), analytic_step_unitary(Step::B, Chirality::R));
        assert_eq!(STEP_B[(0, 1)], c(S, 0.0));
        assert_eq!(STEP_B[(2, 1)], c(0.0, -S));
    }

    #[test]
    fn step_matrices_from_exponentials() {
        // U = exp(-i theta G) for the step generators
        let mut pump = Matrix3::zeros();
        pump[(0, 2)] = c(1.0, 0.0);
        pump[(2, 0)] = c(1.0, 0.0);
        let gen = |g: &Matrix3, theta: f64| g.scale(c(0.0, -theta)).exp();
        assert!(gen(&pump, PI / 4.0).max_abs_diff(&PUMP_PLUS) < 1e-15);
        assert!(gen(&pump, -PI / 4.0).max_abs_diff(&PUMP_MINUS) < 1e-15);
        let d = bright_state();
        let mut hb = Matrix3::zeros();
        for i in 0..3 {
            hb[(i, 1)] += d[i];
            hb[(1, i)] += d[i].conj();
        }
        assert!(gen(&hb, PI / 2.0).max_abs_diff(&STEP_B) < 1e-15);
    }

    #[test]
    fn composite_unitaries() {
        for q in Chirality::BOTH {
            let u = total_unitary(q);
            assert!(u.max_abs_diff(&composite_unitary_closed_form(q)) < 1e-14);
            assert!(u.unitarity_defect() < 1e-14);
        }
    }

    #[test]
    fn population_exchange_on_basis_states() {
        let e = |i: usize| {
            let mut v = [c(0.0, 0.0); 3];
            v[i] = c(1.0, 0.0);
            v
        };
        let ul = total_unitary(Chirality::L);
        let ur = total_unitary(Chirality::R);
        let pops = |v: [Complex64; 3]| v.map(|z| z.norm_sqr());
        assert!(pops(ul.apply(&e(0)))[0] > 1.0 - 1e-14);
        assert!(pops(ul.apply(&e(1)))[2] > 1.0 - 1e-14);
        assert!(pops(ul.apply(&e(2)))[1] > 1.0 - 1e-14);
        assert!(pops(ur.apply(&e(0)))[1] > 1.0 - 1e-14);
        assert!(pops(ur.apply(&e(1)))[0] > 1.0 - 1e-14);
        assert!(pops(ur.apply(&e(2)))[2] > 1.0 - 1e-14);
        assert!((ul.apply(&e(1))[2] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((ur.apply(&e(0))[1] - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn bright_state_properties() {
        let d = bright_state();
        let norm: f64 = d.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-15);
        assert_eq!(d[1], c(0.0, 0.0));
    }

    proptest! {
        #[test]
        fn enantiomer_phases_differ_by_pi(
            m in proptest::array::uniform3(0.1f64..10.0),
            p in proptest::array::uniform3(-PI..PI),
        ) {
            let z = |i: usize| Complex64::from_polar(m[i], p[i]);
            let b = base(z(0), z(1), z(2));
            let l = signed_couplings(&b, Chirality::L).unwrap().overall_phase().unwrap();
            let r = signed_couplings(&b, Chirality::R).unwrap().overall_phase().unwrap();
            prop_assert!((0.0..TAU).contains(&l) && (0.0..TAU).contains(&r));
            prop_assert!(phase_diff(r - l, PI) < 1e-12);
        }
    }
}
