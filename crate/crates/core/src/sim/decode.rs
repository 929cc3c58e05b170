//! Erasure decoding as basis permutations on the surviving registers.
//!
//! With surviving set `I` (`|I| = k+d-1`) and erased set `Ic`:
//!
//! 1. `|y>_I -> |y (A_I; B_I)^-1>`, which turns the surviving word back
//!    into `(a, b)`;
//! 2. `|(a, b)>_I -> |(a, (a, b)(A_Ic; B_Ic))>`, invertible because `B_Ic`
//!    is a square Vandermonde matrix.
//!
//! Afterwards the first `k` surviving registers hold a copy of `R`'s value
//! and the last `d-1` surviving registers mirror the erased registers.

use num_complex::Complex64;

use crate::code::{ErasureSplit, QuantumMdsCode};
use crate::error::Result;
use crate::linalg::MatrixGF;

use super::state::{checked_dimension, digits_to_index, index_to_digits, StateVector};

fn surviving_registers(code: &QuantumMdsCode, split: &ErasureSplit) -> Vec<usize> {
    let k = code.params().k;
    split.surviving.iter().map(|&i| k + i - 1).collect()
}

/// The map `(a, b) -> (a, (a, b)(A_Ic; B_Ic))` as a square matrix
/// `[[I_k, A_Ic], [0, B_Ic]]`.
pub fn entangling_map(code: &QuantumMdsCode, split: &ErasureSplit) -> Result<MatrixGF> {
    let p = code.params();
    let rows = p.generator_rows();
    let field = code.field();
    let identity_block =
        MatrixGF::identity(field, rows).select_columns(&(0..p.k).collect::<Vec<_>>())?;
    identity_block.hstack(&split.erased_ab)
}

/// First decoding step only: `|y>_I -> |y (A_I; B_I)^-1>`.
pub fn unscramble(
    psi: &StateVector,
    code: &QuantumMdsCode,
    surviving: &[usize],
) -> Result<StateVector> {
    let split = code.erasure_submatrices(surviving)?;
    psi.apply_linear_map(&surviving_registers(code, &split), &split.surviving_inverse)
}

/// Applies both decoding permutations to the surviving registers.
pub fn decode(
    psi: &StateVector,
    code: &QuantumMdsCode,
    surviving: &[usize],
) -> Result<StateVector> {
    let split = code.erasure_submatrices(surviving)?;
    let regs = surviving_registers(code, &split);
    let step1 = psi.apply_linear_map(&regs, &split.surviving_inverse)?;
    step1.apply_linear_map(&regs, &entangling_map(code, &split)?)
}

/// The state decoding should produce: `R` maximally entangled with the first
/// `k` surviving registers, and the last `d-1` surviving registers maximally
/// entangled with the erased registers.
pub fn decode_target(code: &QuantumMdsCode, surviving: &[usize]) -> Result<StateVector> {
    let p = code.params();
    let q = p.q as usize;
    let split = code.erasure_submatrices(surviving)?;
    let regs = surviving_registers(code, &split);
    let erased: Vec<usize> = split.erased.iter().map(|&i| p.k + i - 1).collect();
    let total = p.total_qudits();
    let dim = checked_dimension(q, total)?;

    let terms = checked_dimension(q, p.generator_rows())?;
    let amp = Complex64::new(1.0 / (terms as f64).sqrt(), 0.0);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    let mut ab = vec![0usize; p.generator_rows()];
    let mut digits = vec![0usize; total];
    for t in 0..terms {
        index_to_digits(q, t, &mut ab);
        let (a, b) = ab.split_at(p.k);
        digits[..p.k].copy_from_slice(a);
        for (j, &r) in regs.iter().enumerate() {
            digits[r] = ab[j];
        }
        for (j, &r) in erased.iter().enumerate() {
            digits[r] = b[j];
        }
        amplitudes[digits_to_index(q, &digits)] = amp;
    }
    StateVector::new(q, total, amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::CodeParams;
    use crate::error::Error;
    use crate::sim::{encode_state, fidelity};

    fn code(n: usize, k: usize, d: usize, q: u64) -> QuantumMdsCode {
        QuantumMdsCode::construct(CodeParams::new(n, k, d, q).unwrap(), None).unwrap()
    }

    #[test]
    fn decode_312_recovers_target() {
        let c = code(3, 1, 2, 3);
        let psi = encode_state(&c).unwrap();
        let out = decode(&psi, &c, &[1, 2]).unwrap();
        let target = decode_target(&c, &[1, 2]).unwrap();
        assert!((fidelity(&out, &target).unwrap() - 1.0).abs() < 1e-12);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn target_312_structure() {
        // sum_a |a>_R |a>_Q1 (x) sum_b' |b'>_Q2 |b'>_Q3 / 3
        let c = code(3, 1, 2, 3);
        let target = decode_target(&c, &[1, 2]).unwrap();
        let mut expected: Vec<usize> = (0..3)
            .flat_map(|a| (0..3).map(move |b| digits_to_index(3, &[a, a, b, b])))
            .collect();
        expected.sort_unstable();
        assert_eq!(target.support(), expected);
        assert!((target.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decode_513_pattern() {
        let c = code(5, 1, 3, 5);
        let psi = encode_state(&c).unwrap();
        let out = decode(&psi, &c, &[1, 3, 5]).unwrap();
        let target = decode_target(&c, &[1, 3, 5]).unwrap();
        assert!(fidelity(&out, &target).unwrap() >= 1.0 - 1e-12);
    }

    #[test]
    fn first_step_is_invertible() {
        let c = code(4, 2, 2, 5);
        let psi = encode_state(&c).unwrap();
        let split = c.erasure_submatrices(&[2, 3, 4]).unwrap();
        let step = unscramble(&psi, &c, &[2, 3, 4]).unwrap();
        let regs = surviving_registers(&c, &split);
        let back = step.apply_linear_map(&regs, &split.surviving_ab).unwrap();
        assert_eq!(back, psi);
    }

    #[test]
    fn wrong_erasure_size_rejected() {
        let c = code(3, 1, 2, 3);
        let psi = encode_state(&c).unwrap();
        assert!(matches!(
            decode(&psi, &c, &[1]),
            Err(Error::InvalidErasure(_))
        ));
        assert!(matches!(
            decode_target(&c, &[3]),
            Err(Error::InvalidErasure(_))
        ));
    }
}
