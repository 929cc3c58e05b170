//! Cyclic Jacobi eigenvalues for dense complex Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::density::DensityMatrix;

pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
pub const CLAMP_TOLERANCE: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 500;

/// Eigenvalues of a density matrix in ascending order, with values within
/// [`CLAMP_TOLERANCE`] of 0 or 1 clamped onto the boundary.
pub fn hermitian_eigenvalues(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let mut values = jacobi_eigenvalues(rho.dim(), rho.entries())?;
    for v in values.iter_mut() {
        if v.abs() < CLAMP_TOLERANCE {
            *v = 0.0;
        } else if (*v - 1.0).abs() < CLAMP_TOLERANCE {
            *v = 1.0;
        }
    }
    Ok(values)
}

/// Eigenvalues of a Hermitian `dim x dim` row-major matrix, ascending.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary, then zeroes the resulting real entry with a plane rotation.
/// Sweeps stop once the off-diagonal Frobenius norm drops below
/// [`OFF_DIAGONAL_TOLERANCE`].
pub fn jacobi_eigenvalues(dim: usize, entries: &[Complex64]) -> Result<Vec<f64>> {
    if entries.len() != dim * dim {
        return Err(Error::DimensionMismatch(format!(
            "{dim}x{dim} matrix needs {} entries, got {}",
            dim * dim,
            entries.len()
        )));
    }
    let deviation = hermitian_deviation(dim, entries);
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian(deviation));
    }

    let mut a = entries.to_vec();
    for i in 0..dim {
        a[i * dim + i] = Complex64::new(a[i * dim + i].re, 0.0);
    }

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(dim, &a);
        if off < OFF_DIAGONAL_TOLERANCE {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..dim {
            for q in p + 1..dim {
                rotate(dim, &mut a, p, q);
            }
        }
        sweeps += 1;
    }

    let mut values: Vec<f64> = (0..dim).map(|i| a[i * dim + i].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn hermitian_deviation(dim: usize, a: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in i..dim {
            let d = (a[i * dim + j] - a[j * dim + i].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

fn off_diagonal_norm(dim: usize, a: &[Complex64]) -> f64 {
    let mut sum = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                sum += a[i * dim + j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(dim: usize, a: &mut [Complex64], p: usize, q: usize) {
    let apq = a[p * dim + q];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let app = a[p * dim + p].re;
    let aqq = a[q * dim + q].re;
    let phase = apq / magnitude;
    let theta = 0.5 * (2.0 * magnitude).atan2(app - aqq);
    let (s, c) = theta.sin_cos();

    // U = diag(1, conj(phase)) * [[c, -s], [s, c]]
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(-s, 0.0);
    let u_qp = phase.conj() * s;
    let u_qq = phase.conj() * c;

    // A <- A U (columns p, q)
    for i in 0..dim {
        let aip = a[i * dim + p];
        let aiq = a[i * dim + q];
        a[i * dim + p] = aip * u_pp + aiq * u_qp;
        a[i * dim + q] = aip * u_pq + aiq * u_qq;
    }
    // A <- U^H A (rows p, q)
    for j in 0..dim {
        let apj = a[p * dim + j];
        let aqj = a[q * dim + j];
        a[p * dim + j] = u_pp.conj() * apj + u_qp.conj() * aqj;
        a[q * dim + j] = u_pq.conj() * apj + u_qq.conj() * aqj;
    }
    a[p * dim + q] = Complex64::new(0.0, 0.0);
    a[q * dim + p] = Complex64::new(0.0, 0.0);
    a[p * dim + p] = Complex64::new(a[p * dim + p].re, 0.0);
    a[q * dim + q] = Complex64::new(a[q * dim + q].re, 0.0);
}
