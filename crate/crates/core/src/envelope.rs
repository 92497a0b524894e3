//! Real, non-negative pulse envelopes and their areas.

use core::f64::consts::PI;

use crate::{Error, Result};

/// Envelope shape. Gaussian parameters are absolute times in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnvelopeShape {
    Rectangular,
    /// `exp(-(t - center)^2 / (2 width^2))`, cut off at the window edges.
    Gaussian { center: f64, width: f64 },
    /// `sin^2(pi (t - t_start) / (t_end - t_start))`.
    SinSquared,
}

/// Shape family without parameters, for building schedules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnvelopeKind {
    Rectangular,
    Gaussian,
    SinSquared,
}

/// Gaussian width used by [`PulseEnvelope::with_area`], as a fraction of the
/// window length.
pub const GAUSSIAN_WIDTH_FRACTION: f64 = 0.125;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseEnvelope {
    shape: EnvelopeShape,
    /// rad/s.
    peak: f64,
    t_start: f64,
    t_end: f64,
}

impl PulseEnvelope {
    pub fn new(shape: EnvelopeShape, peak: f64, t_start: f64, t_end: f64) -> Result<Self> {
        if !(peak.is_finite() && peak >= 0.0) {
            return Err(Error::domain("envelope peak must be finite and >= 0"));
        }
        if !(t_start.is_finite() && t_end.is_finite() && t_end > t_start) {
            return Err(Error::domain("envelope window must satisfy t_start < t_end"));
        }
        if let EnvelopeShape::Gaussian { center, width } = shape {
            if !(center.is_finite() && width.is_finite() && width > 0.0) {
                return Err(Error::domain("gaussian width must be > 0"));
            }
        }
        Ok(PulseEnvelope { shape, peak, t_start, t_end })
    }

    /// The always-zero envelope, for inactive fields.
    pub fn off() -> Self {
        PulseEnvelope { shape: EnvelopeShape::Rectangular, peak: 0.0, t_start: 0.0, t_end: 1.0 }
    }

    /// Envelope of the given family on `[t_start, t_end]` scaled to `area`
    /// (rad). Gaussians are centered with width [`GAUSSIAN_WIDTH_FRACTION`]
    /// of the window.
    pub fn with_area(kind: EnvelopeKind, t_start: f64, t_end: f64, area: f64) -> Result<Self> {
        if !(area.is_finite() && area >= 0.0) {
            return Err(Error::domain("envelope area must be finite and >= 0"));
        }
        let shape = match kind {
            EnvelopeKind::Rectangular => EnvelopeShape::Rectangular,
            EnvelopeKind::SinSquared => EnvelopeShape::SinSquared,
            EnvelopeKind::Gaussian => EnvelopeShape::Gaussian {
                center: 0.5 * (t_start + t_end),
                width: GAUSSIAN_WIDTH_FRACTION * (t_end - t_start),
            },
        };
        let unit = PulseEnvelope::new(shape, 1.0, t_start, t_end)?;
        PulseEnvelope::new(shape, area / pulse_area(&unit), t_start, t_end)
    }

    pub fn shape(&self) -> EnvelopeShape {
        self.shape
    }

    pub fn kind(&self) -> EnvelopeKind {
        match self.shape {
            EnvelopeShape::Rectangular => EnvelopeKind::Rectangular,
            EnvelopeShape::Gaussian { .. } => EnvelopeKind::Gaussian,
            EnvelopeShape::SinSquared => EnvelopeKind::SinSquared,
        }
    }

    pub fn peak(&self) -> f64 {
        self.peak
    }

    pub fn window(&self) -> (f64, f64) {
        (self.t_start, self.t_end)
    }

    pub fn is_off(&self) -> bool {
        self.peak == 0.0
    }

    /// Envelope value at `t`; zero outside the window.
    pub fn value(&self, t: f64) -> f64 {
        if self.peak == 0.0 || t < self.t_start || t > self.t_end {
            return 0.0;
        }
        let shape = match self.shape {
            EnvelopeShape::Rectangular => 1.0,
            EnvelopeShape::Gaussian { center, width } => {
                let u = (t - center) / width;
                libm::exp(-0.5 * u * u)
            }
            EnvelopeShape::SinSquared => {
                let s = libm::sin(PI * (t - self.t_start) / (self.t_end - self.t_start));
                s * s
            }
        };
        self.peak * shape
    }
}

/// Relative accuracy of [`pulse_area`] for non-rectangular shapes.
pub const AREA_REL_TOL: f64 = 1e-10;

/// Integral of the envelope over its window (rad).
pub fn pulse_area(envelope: &PulseEnvelope) -> f64 {
    let (a, b) = envelope.window();
    match envelope.shape {
        EnvelopeShape::Rectangular => envelope.peak * (b - a),
        _ if envelope.peak == 0.0 => 0.0,
        _ => adaptive_simpson(&|t| envelope.value(t), a, b, AREA_REL_TOL),
    }
}

/// Adaptive Simpson quadrature to relative tolerance `rel_tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // a coarse 16-panel estimate sets the absolute scale
    let scale = {
        let n = 16;
        let h = (b - a) / n as f64;
        (0..n).map(|i| libm::fabs(f(a + (i as f64 + 0.5) * h))).sum::<f64>() * h
    };
    let tol = (rel_tol * scale).max(f64::MIN_POSITIVE);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // keep splitting at least a few levels so symmetric shapes cannot fool the
    // error estimate on the first comparison
    if depth == 0 || (depth < 44 && libm::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_4;

    #[test]
    fn rectangular_area() {
        let e = PulseEnvelope::new(EnvelopeShape::Rectangular, 2.0e6, 1.0e-7, 3.0e-7).unwrap();
        assert!((pulse_area(&e) - 0.4).abs() < 1e-15);
        let e = PulseEnvelope::with_area(EnvelopeKind::Rectangular, 0.0, 1e-7, FRAC_PI_4).unwrap();
        assert!((pulse_area(&e) - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn sin_squared_area_is_half_peak_duration() {
        let (peak, t0, t1) = (3.0e6, 2.0e-7, 7.0e-7);
        let e = PulseEnvelope::new(EnvelopeShape::SinSquared, peak, t0, t1).unwrap();
        let exact = 0.5 * peak * (t1 - t0);
        assert!((pulse_area(&e) - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn truncated_gaussian_area_matches_erf() {
        let (t0, t1) = (0.0, 1.0e-6);
        let (center, width) = (0.4e-6, 0.15e-6);
        let e = PulseEnvelope::new(EnvelopeShape::Gaussian { center, width }, 5.0e6, t0, t1).unwrap();
        let s2 = core::f64::consts::SQRT_2;
        let exact = 5.0e6 * width * libm::sqrt(PI / 2.0) * (libm::erf((t1 - center) / (s2 * width)) - libm::erf((t0 - center) / (s2 * width)));
        assert!((pulse_area(&e) - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn with_area_hits_target_for_all_shapes() {
        for kind in [EnvelopeKind::Rectangular, EnvelopeKind::Gaussian, EnvelopeKind::SinSquared] {
            let e = PulseEnvelope::with_area(kind, 1e-6, 2e-6, FRAC_PI_4).unwrap();
            assert!((pulse_area(&e) - FRAC_PI_4).abs() < 1e-10, "{kind:?}");
            assert_eq!(e.kind(), kind);
        }
    }

    #[test]
    fn zero_outside_window() {
        let e = PulseEnvelope::with_area(EnvelopeKind::Gaussian, 1.0, 2.0, 1.0).unwrap();
        assert_eq!(e.value(0.999), 0.0);
        assert_eq!(e.value(2.001), 0.0);
        assert!(e.value(1.0) > 0.0);
        assert_eq!(PulseEnvelope::off().value(0.5), 0.0);
        assert_eq!(pulse_area(&PulseEnvelope::off()), 0.0);
    }

    #[test]
    fn invalid_envelopes() {
        assert!(PulseEnvelope::new(EnvelopeShape::Rectangular, -1.0, 0.0, 1.0).is_err());
        assert!(PulseEnvelope::new(EnvelopeShape::Rectangular, 1.0, 1.0, 1.0).is_err());
        assert!(PulseEnvelope::new(EnvelopeShape::Gaussian { center: 0.5, width: 0.0 }, 1.0, 0.0, 1.0).is_err());
        assert!(PulseEnvelope::with_area(EnvelopeKind::SinSquared, 0.0, 1.0, f64::NAN).is_err());
    }
}
