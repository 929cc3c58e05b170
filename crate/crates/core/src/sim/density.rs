use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::subsystem::RegisterSet;

use super::state::{index_to_digits, StateVector};

/// Dense reduced density matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{dim}x{dim} density matrix needs {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest `|rho_ij - conj(rho_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

/// Reduced state on `keep`: `rho[i, j] = sum_e psi[i, e] conj(psi[j, e])`
/// with the kept registers read in increasing order.
///
/// `keep` must be a nonempty proper subset; the empty and full cases are
/// pure and are handled by the callers.
pub fn partial_trace(psi: &StateVector, keep: &RegisterSet) -> Result<DensityMatrix> {
    if keep.total() != psi.num_registers() {
        return Err(Error::InvalidSubsystem(format!(
            "register set over {} registers, state has {}",
            keep.total(),
            psi.num_registers()
        )));
    }
    if keep.is_empty() || keep.is_full() {
        return Err(Error::InvalidSubsystem(
            "partial trace needs a nonempty proper subset of registers".into(),
        ));
    }
    let q = psi.q();
    let kept: Vec<usize> = keep.to_vec();
    let env: Vec<usize> = keep.complement().to_vec();
    let dk = q.pow(kept.len() as u32);
    let de = q.pow(env.len() as u32);

    // psi reshaped as a dk x de matrix
    let mut m = vec![Complex64::new(0.0, 0.0); dk * de];
    let mut digits = vec![0usize; psi.num_registers()];
    for (idx, &amp) in psi.amplitudes().iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        index_to_digits(q, idx, &mut digits);
        let i = kept.iter().fold(0, |acc, &r| acc * q + digits[r]);
        let e = env.iter().fold(0, |acc, &r| acc * q + digits[r]);
        m[i * de + e] = amp;
    }

    let mut rho = vec![Complex64::new(0.0, 0.0); dk * dk];
    for i in 0..dk {
        let row_i = &m[i * de..(i + 1) * de];
        for j in i..dk {
            let row_j = &m[j * de..(j + 1) * de];
            let v: Complex64 = row_i.iter().zip(row_j).map(|(a, b)| a * b.conj()).sum();
            rho[i * dk + j] = v;
            rho[j * dk + i] = v.conj();
        }
    }
    DensityMatrix::new(dk, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{CodeParams, QuantumMdsCode};
    use crate::sim::encode_state;

    #[test]
    fn rejects_trivial_keep_sets() {
        let psi = StateVector::basis(2, &[0, 0]).unwrap();
        assert!(partial_trace(&psi, &RegisterSet::empty(2)).is_err());
        assert!(partial_trace(&psi, &RegisterSet::full(2)).is_err());
        assert!(partial_trace(&psi, &RegisterSet::new(3, &[0]).unwrap()).is_err());
    }

    #[test]
    fn product_state_gives_pure_projector() {
        let psi = StateVector::basis(2, &[0, 0]).unwrap();
        let rho = partial_trace(&psi, &RegisterSet::new(2, &[0]).unwrap()).unwrap();
        assert_eq!(rho.dim(), 2);
        assert_eq!(rho.get(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(rho.get(0, 1), Complex64::new(0.0, 0.0));
        assert_eq!(rho.get(1, 1), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn single_coded_qudit_is_maximally_mixed() {
        let c = QuantumMdsCode::construct(CodeParams::new(3, 1, 2, 3).unwrap(), None).unwrap();
        let psi = encode_state(&c).unwrap();
        // Q1 is register 1
        let rho = partial_trace(&psi, &RegisterSet::new(4, &[1]).unwrap()).unwrap();
        assert_eq!(rho.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 / 3.0 } else { 0.0 };
                assert!((rho.get(i, j) - Complex64::new(expected, 0.0)).norm() < 1e-14);
            }
        }
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        assert!(rho.hermitian_deviation() < 1e-15);
    }
}
