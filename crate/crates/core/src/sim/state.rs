use num_complex::Complex64;

use crate::code::QuantumMdsCode;
use crate::error::{Error, Result};
use crate::linalg::MatrixGF;
use crate::subsystem::RegisterSet;

/// Upper bound on the number of amplitudes a state vector may hold.
pub const MAX_AMPLITUDES: u128 = 1 << 24;

pub const NORM_TOLERANCE: f64 = 1e-12;

/// Dense pure state of `num_registers` qudits of dimension `q`.
///
/// Basis indices are big-endian in register order: register 0 is the most
/// significant digit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    q: usize,
    num_registers: usize,
    amplitudes: Vec<Complex64>,
}

pub(crate) fn checked_dimension(q: usize, registers: usize) -> Result<usize> {
    let required = (q as u128)
        .checked_pow(registers as u32)
        .unwrap_or(u128::MAX);
    if required > MAX_AMPLITUDES {
        return Err(Error::MemoryGuard {
            required,
            limit: MAX_AMPLITUDES,
        });
    }
    Ok(required as usize)
}

impl StateVector {
    /// Wraps amplitudes after checking length and normalisation.
    pub fn new(q: usize, num_registers: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidState(format!("local dimension {q} < 2")));
        }
        let dim = checked_dimension(q, num_registers)?;
        if amplitudes.len() != dim {
            return Err(Error::InvalidState(format!(
                "{num_registers} qudits of dimension {q} need {dim} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        let state = Self {
            q,
            num_registers,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!("squared norm {norm} is not 1")));
        }
        Ok(state)
    }

    /// Computational basis state with the given register values.
    pub fn basis(q: usize, digits: &[usize]) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d >= q) {
            return Err(Error::InvalidState(format!(
                "digit {d} out of range for q = {q}"
            )));
        }
        let dim = checked_dimension(q, digits.len())?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[digits_to_index(q, digits)] = Complex64::new(1.0, 0.0);
        Self::new(q, digits.len(), amplitudes)
    }

    /// Uniform superposition over the given basis-state digit strings, which
    /// must be distinct.
    pub fn uniform_superposition(
        q: usize,
        num_registers: usize,
        terms: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let dim = checked_dimension(q, num_registers)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        let mut count = 0usize;
        for digits in terms {
            if digits.len() != num_registers {
                return Err(Error::InvalidState(
                    "term has the wrong register count".into(),
                ));
            }
            let idx = digits_to_index(q, &digits);
            if amplitudes[idx].re != 0.0 {
                return Err(Error::InvalidState(format!(
                    "basis state {digits:?} repeated"
                )));
            }
            amplitudes[idx] = Complex64::new(1.0, 0.0);
            count += 1;
        }
        if count == 0 {
            return Err(Error::InvalidState("empty superposition".into()));
        }
        let amp = 1.0 / (count as f64).sqrt();
        for a in amplitudes.iter_mut().filter(|a| a.re != 0.0) {
            *a = Complex64::new(amp, 0.0);
        }
        Self::new(q, num_registers, amplitudes)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_registers(&self) -> usize {
        self.num_registers
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Basis indices with nonzero amplitude.
    pub fn support(&self) -> Vec<usize> {
        (0..self.amplitudes.len())
            .filter(|&i| self.amplitudes[i] != Complex64::new(0.0, 0.0))
            .collect()
    }

    /// Largest eigenvalue of `|psi><psi|`, which for a pure state is its
    /// squared norm.
    pub fn purity(&self) -> f64 {
        self.norm_sqr()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_shape(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub(crate) fn check_shape(&self, other: &Self) -> Result<()> {
        if self.q != other.q || self.num_registers != other.num_registers {
            return Err(Error::DimensionMismatch(format!(
                "states of {} qudits (q = {}) and {} qudits (q = {})",
                self.num_registers, self.q, other.num_registers, other.q
            )));
        }
        Ok(())
    }

    /// Applies the basis permutation `|y> -> |y M>` on the listed registers,
    /// where `y` reads those registers in the given order and `M` is an
    /// invertible square matrix over GF(q).
    pub fn apply_linear_map(&self, registers: &[usize], map: &MatrixGF) -> Result<Self> {
        if map.field().modulus() != self.q as u64 {
            return Err(Error::FieldMismatch {
                left: self.q as u64,
                right: map.field().modulus(),
            });
        }
        if !map.is_square() || map.rows() != registers.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} map on {} registers",
                map.rows(),
                map.cols(),
                registers.len()
            )));
        }
        RegisterSet::new(self.num_registers, registers)?;
        if map.rank() != map.rows() {
            return Err(Error::Singular {
                size: map.rows(),
                rank: map.rank(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        let mut digits = vec![0usize; self.num_registers];
        let mut y = vec![0u64; registers.len()];
        for (idx, &amp) in self.amplitudes.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            index_to_digits(self.q, idx, &mut digits);
            for (slot, &r) in y.iter_mut().zip(registers) {
                *slot = digits[r] as u64;
            }
            let image = map.vec_mul(&y)?;
            for (&r, &v) in registers.iter().zip(&image) {
                digits[r] = v as usize;
            }
            out[digits_to_index(self.q, &digits)] = amp;
        }
        Ok(Self {
            q: self.q,
            num_registers: self.num_registers,
            amplitudes: out,
        })
    }
}

pub fn digits_to_index(q: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * q + d)
}

pub fn index_to_digits(q: usize, mut index: usize, digits: &mut [usize]) {
    for slot in digits.iter_mut().rev() {
        *slot = index % q;
        index /= q;
    }
}

/// `|<psi|phi>|^2`.
pub fn fidelity(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    Ok(psi.inner(phi)?.norm_sqr())
}

/// The code state: uniform superposition over `x G` for all
/// `x in GF(q)^(k+d-1)`, i.e. `sum_{a,b} |a> |(a,b)(A;B)>` normalised.
pub fn encode_state(code: &QuantumMdsCode) -> Result<StateVector> {
    let p = code.params();
    let q = p.q as usize;
    let g = code.generator();
    checked_dimension(q, p.total_qudits())?;
    let rows = g.rows();
    let count = checked_dimension(q, rows)?;
    let mut x = vec![0usize; rows];
    let mut terms = Vec::with_capacity(count);
    for i in 0..count {
        index_to_digits(q, i, &mut x);
        let xv: Vec<u64> = x.iter().map(|&v| v as u64).collect();
        let word = g.vec_mul(&xv)?;
        terms.push(word.into_iter().map(|v| v as usize).collect());
    }
    StateVector::uniform_superposition(q, p.total_qudits(), terms)
}
