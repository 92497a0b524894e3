//! Reference computations that share no code with the library.

#![allow(dead_code)]

use ctls_core::linalg::Matrix3;
use ctls_core::Complex64;

pub const H_SI: f64 = 6.626_070_15e-34;
pub const KB_SI: f64 = 1.380_649e-23;

pub const PROPANEDIOL_ABC: (f64, f64, f64) = (8.5244, 3.6354, 2.7887);

type Dense = Vec<Vec<f64>>;

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Rigid-rotor block `A Ja^2 + B Jb^2 + C Jc^2` assembled from ladder
/// operators in the `|J, k>` basis quantized along a.
pub fn dense_rotor_block(j: u32, a: f64, b: f64, c: f64) -> Dense {
    let n = (2 * j + 1) as usize;
    let jj = f64::from(j * (j + 1));
    let k_of = |i: usize| i as f64 - f64::from(j);
    // <k+1| J+ |k>
    let mut jp = vec![vec![0.0; n]; n];
    for i in 0..n - 1 {
        let k = k_of(i);
        jp[i + 1][i] = (jj - k * (k + 1.0)).sqrt();
    }
    let jm: Dense = (0..n).map(|r| (0..n).map(|s| jp[s][r]).collect()).collect();
    // Jb = (J+ + J-)/2, Jc = (J+ - J-)/(2i), so Jc^2 = -(J+ - J-)^2 / 4
    let sum: Dense = (0..n).map(|r| (0..n).map(|s| jp[r][s] + jm[r][s]).collect()).collect();
    let diff: Dense = (0..n).map(|r| (0..n).map(|s| jp[r][s] - jm[r][s]).collect()).collect();
    let jb2 = matmul(&sum, &sum);
    let jc2 = matmul(&diff, &diff);
    let mut h = vec![vec![0.0; n]; n];
    for r in 0..n {
        for s in 0..n {
            h[r][s] = 0.25 * b * jb2[r][s] - 0.25 * c * jc2[r][s];
        }
        h[r][r] += a * k_of(r) * k_of(r);
    }
    h
}

/// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
pub fn jacobi_eigenvalues(mut a: Dense) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        let scale: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum::<f64>().max(1e-300);
        if off <= 1e-30 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (lo, hi) = a.split_at_mut(q);
                for (apk, aqk) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (x, y) = (*apk, *aqk);
                    *apk = c * x - s * y;
                    *aqk = s * x + c * y;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn oracle_rotor_energies(j: u32, a: f64, b: f64, c: f64) -> Vec<f64> {
    jacobi_eigenvalues(dense_rotor_block(j, a, b, c))
}

/// `h f / (k_B T)` straight from SI constants.
pub fn oracle_exponent(f_ghz: f64, t: f64) -> f64 {
    H_SI * f_ghz * 1e9 / (KB_SI * t)
}

/// Normalized Boltzmann weights of three level frequencies (GHz) at `t`.
pub fn oracle_populations(e: [f64; 3], t: f64) -> [f64; 3] {
    let w = e.map(|x| (-oracle_exponent(x, t)).exp());
    let z: f64 = w.iter().sum();
    w.map(|x| x / z)
}

/// Degeneracy-weighted rotational partition sum up to `j_max` via dense
/// diagonalization.
pub fn oracle_z_rot(a: f64, b: f64, c: f64, t: f64, j_max: u32) -> f64 {
    (0..=j_max)
        .map(|j| f64::from(2 * j + 1) * oracle_rotor_energies(j, a, b, c).iter().map(|&e| (-oracle_exponent(e, t)).exp()).sum::<f64>())
        .sum()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Swap of `|2>` and `|3>` with phase `-i`.
pub fn expected_u_l() -> Matrix3 {
    Matrix3([
        [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)],
        [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 0.0)],
    ])
}

/// Swap of `|1>` and `|2>` with a sign.
pub fn expected_u_r() -> Matrix3 {
    Matrix3([
        [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        [c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
    ])
}

/// `|U_ij|^2` applied to a diagonal state.
pub fn permuted_populations(u: &Matrix3, p: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        for (j, pj) in p.iter().enumerate() {
            *o += u.0[i][j].norm_sqr() * pj;
        }
    }
    out
}
