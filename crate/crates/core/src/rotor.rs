//! Asymmetric-top rigid-rotor spectra.
//!
//! Levels are labeled `|J_tau M>` with `tau = -J ..= J` in order of ascending
//! energy inside each `J` block. All energies are frequencies (energy / h) in
//! GHz. The Hamiltonian `A Ja^2 + B Jb^2 + C Jc^2` is written in the
//! symmetric-top basis `|J, k>` quantized along the inertial a-axis.

use alloc::vec::Vec;

use crate::linalg::{tridiagonal_eigenvalues, SymmetricMatrix};
use crate::{Error, Result};

/// Rotational constants `A >= B >= C > 0` in GHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationalConstants {
    a: f64,
    b: f64,
    c: f64,
}

impl RotationalConstants {
    /// 1,2-propanediol.
    pub const PROPANEDIOL: RotationalConstants = RotationalConstants { a: 8.5244, b: 3.6354, c: 2.7887 };

    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::domain("rotational constants must be finite"));
        }
        if !(a >= b && b >= c && c > 0.0) {
            return Err(Error::domain("rotational constants must satisfy A >= B >= C > 0"));
        }
        Ok(RotationalConstants { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

/// One rotational level `|J_tau>`; the `2J + 1` M sublevels share its energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorLevel {
    pub j: u32,
    pub tau: i32,
    /// GHz.
    pub energy: f64,
    pub degeneracy: u32,
}

/// All levels for `J = 0 ..= j_max`, ordered by `J` then `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotorSpectrum {
    pub constants: RotationalConstants,
    pub levels: Vec<RotorLevel>,
}

impl RotorSpectrum {
    pub fn j_max(&self) -> u32 {
        self.levels.last().map_or(0, |l| l.j)
    }

    /// Levels of one `J` block.
    pub fn block(&self, j: u32) -> &[RotorLevel] {
        // blocks are contiguous: J occupies offsets J^2 .. (J+1)^2
        let start = (j as usize) * (j as usize);
        let end = start + 2 * j as usize + 1;
        self.levels.get(start..end).unwrap_or(&[])
    }

    pub fn level(&self, j: u32, tau: i32) -> Option<&RotorLevel> {
        self.block(j).iter().find(|l| l.tau == tau)
    }
}

/// Rigid-rotor block `H(J) / h` in the `|J, k>` basis with the quantization
/// axis along `z`, where `x` and `y` are the constants of the two
/// perpendicular axes. Row `i` corresponds to `k = i - J`.
pub(crate) fn block_with_axes(j: u32, z: f64, x: f64, y: f64) -> SymmetricMatrix {
    let jj = f64::from(j) * f64::from(j + 1);
    let n = 2 * j as usize + 1;
    let mut h = SymmetricMatrix::zeros(n);
    for i in 0..n {
        let k = i as f64 - f64::from(j);
        h.set(i, i, 0.5 * (x + y) * (jj - k * k) + z * k * k);
        if i + 2 < n {
            let up = libm::sqrt(jj - k * (k + 1.0)) * libm::sqrt(jj - (k + 1.0) * (k + 2.0));
            h.set(i, i + 2, 0.25 * (x - y) * up);
        }
    }
    h
}

/// `(2J+1) x (2J+1)` rigid-rotor Hamiltonian block in GHz, a-axis quantization.
pub fn build_rotor_block(j: u32, constants: &RotationalConstants) -> SymmetricMatrix {
    block_with_axes(j, constants.a, constants.b, constants.c)
}

/// Eigenvalues of a block whose only couplings are `k <-> k +- 2`: the even
/// and odd `k` subsets each form a tridiagonal chain.
fn k2_block_eigenvalues(h: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = h.dim();
    let mut all = Vec::with_capacity(n);
    for first in 0..2.min(n) {
        let idx: Vec<usize> = (first..n).step_by(2).collect();
        let diag: Vec<f64> = idx.iter().map(|&i| h.get(i, i)).collect();
        let off: Vec<f64> = idx.windows(2).map(|w| h.get(w[0], w[1])).collect();
        all.extend(tridiagonal_eigenvalues(&diag, &off)?);
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// Levels of one `J` block sorted by energy and labeled `tau = -J ..= J`.
pub fn rotor_levels(j: u32, constants: &RotationalConstants) -> Result<Vec<RotorLevel>> {
    let energies = k2_block_eigenvalues(&build_rotor_block(j, constants))?;
    let degeneracy = 2 * j + 1;
    Ok(energies
        .into_iter()
        .enumerate()
        .map(|(i, energy)| RotorLevel {
            j,
            tau: i as i32 - j as i32,
            energy,
            degeneracy,
        })
        .collect())
}

pub fn rotor_spectrum(constants: &RotationalConstants, j_max: u32) -> Result<RotorSpectrum> {
    let mut levels = Vec::with_capacity(((j_max as usize) + 1).pow(2));
    for j in 0..=j_max {
        levels.extend(rotor_levels(j, constants)?);
    }
    Ok(RotorSpectrum { constants: *constants, levels })
}
