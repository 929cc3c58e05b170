//! Brute-force numerical oracle.
//!
//! Builds the dense code state, reduces it by partial trace, diagonalises the
//! reduced state with a Jacobi eigensolver and evaluates the Von Neumann
//! entropy in q-ary units. It shares nothing with the rank-based oracle in
//! [`crate::entropy`] beyond the generator matrix, so agreement between the
//! two is a meaningful check. Decoding is simulated with basis permutations.

mod decode;
mod density;
mod eigen;
mod state;

pub use decode::{decode, decode_target, entangling_map, unscramble};
pub use density::{partial_trace, DensityMatrix};
pub use eigen::{
    hermitian_eigenvalues, jacobi_eigenvalues, CLAMP_TOLERANCE, HERMITIAN_TOLERANCE, MAX_SWEEPS,
    OFF_DIAGONAL_TOLERANCE,
};
pub use state::{
    digits_to_index, encode_state, fidelity, index_to_digits, StateVector, MAX_AMPLITUDES,
    NORM_TOLERANCE,
};

use crate::error::{Error, Result};
use crate::subsystem::RegisterSet;

fn check_registers(psi: &StateVector, registers: &RegisterSet) -> Result<()> {
    if registers.total() != psi.num_registers() {
        return Err(Error::InvalidSubsystem(format!(
            "register set over {} registers, state has {}",
            registers.total(),
            psi.num_registers()
        )));
    }
    Ok(())
}

/// Eigenvalues of the reduced state on the smaller side of the bipartition
/// `(registers, complement)`. The two sides share their nonzero spectrum for
/// a pure state. Empty and full sets give the spectrum `[1]`.
pub fn reduced_spectrum(psi: &StateVector, registers: &RegisterSet) -> Result<Vec<f64>> {
    check_registers(psi, registers)?;
    if registers.is_empty() || registers.is_full() {
        return Ok(vec![1.0]);
    }
    let complement = registers.complement();
    let side = if complement.len() < registers.len() {
        complement
    } else {
        *registers
    };
    hermitian_eigenvalues(&partial_trace(psi, &side)?)
}

/// Von Neumann entropy `-sum l log_q l` of the reduced state on `registers`.
pub fn von_neumann_entropy(psi: &StateVector, registers: &RegisterSet) -> Result<f64> {
    let spectrum = reduced_spectrum(psi, registers)?;
    Ok(entropy_of_spectrum(&spectrum, psi.q()))
}

/// `-sum l log_q l` with `0 log 0 = 0`.
pub fn entropy_of_spectrum(spectrum: &[f64], q: usize) -> f64 {
    let ln_q = (q as f64).ln();
    let h: f64 = spectrum
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln() / ln_q)
        .sum();
    h.max(0.0)
}
