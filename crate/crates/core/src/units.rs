//! Physical constants (exact 2019 SI values) and unit conversions.

/// Planck constant, J s.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// `h / k_B` expressed in kelvin per GHz (about 0.0479924).
pub const KELVIN_PER_GHZ: f64 = PLANCK * 1.0e9 / BOLTZMANN;

/// GHz per THz.
pub const GHZ_PER_THZ: f64 = 1.0e3;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kelvin_per_ghz_value() {
        assert!((KELVIN_PER_GHZ - 0.047_992_430_733_662_2).abs() < 1e-15);
    }
}
