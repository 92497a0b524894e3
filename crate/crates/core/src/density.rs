use num_complex::Complex64;

use crate::linalg::Matrix3;
use crate::thermal::OccupationTriple;
use crate::{Error, Result};

/// Tolerance on Hermiticity and unit trace accepted by [`DensityMatrix3::new`].
pub const DENSITY_TOL: f64 = 1e-10;

/// Hermitian, unit-trace 3x3 density matrix over `{|1>, |2>, |3>}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix3(Matrix3);

impl DensityMatrix3 {
    pub fn new(m: Matrix3) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::domain("density matrix has non-finite entries"));
        }
        if m.hermiticity_defect() > DENSITY_TOL {
            return Err(Error::domain("density matrix is not Hermitian"));
        }
        let tr = m.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::domain(alloc::format!("density matrix trace is {tr}, expected 1")));
        }
        Ok(DensityMatrix3(m))
    }

    /// `diag(p1, p2, p3)`.
    pub fn diagonal(p: &OccupationTriple) -> Self {
        DensityMatrix3(Matrix3::from_diagonal(p.as_array()))
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.0
    }

    /// Diagonal occupations.
    pub fn populations(&self) -> [f64; 3] {
        self.0.diagonal().map(|z| z.re)
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DensityMatrix3::new(Matrix3::identity()).is_err());
        let mut m = Matrix3::from_diagonal([0.5, 0.5, 0.0]);
        assert!(DensityMatrix3::new(m).is_ok());
        m[(0, 1)] = Complex64::new(0.1, 0.2);
        assert!(DensityMatrix3::new(m).is_err());
        m[(1, 0)] = Complex64::new(0.1, -0.2);
        assert!(DensityMatrix3::new(m).is_ok());
    }

    #[test]
    fn thermal_diagonals() {
        let pure = DensityMatrix3::diagonal(&OccupationTriple::ground());
        assert_eq!(pure.populations(), [1.0, 0.0, 0.0]);
        assert_eq!(pure.purity(), 1.0);
        let third = 1.0 / 3.0;
        let mixed = DensityMatrix3::diagonal(&OccupationTriple::new(third, third, 1.0 - 2.0 * third).unwrap());
        assert!((mixed.purity() - third).abs() < 1e-15);
        assert!((mixed.trace().re - 1.0).abs() < 1e-15);
    }
}
