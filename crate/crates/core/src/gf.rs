//! Arithmetic in the prime field GF(q).
//!
//! [`Field`] carries the modulus and exposes raw operations on reduced
//! `u64` residues; the linear algebra routines work on those directly.
//! [`FieldElement`] is the checked, typed view used at API boundaries.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted. Keeps every product of two residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Trial-division primality test.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q < 4 {
        return true;
    }
    if q.is_multiple_of(2) {
        return false;
    }
    let mut f = 3;
    while f * f <= q {
        if q.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Smallest prime `p >= n`.
pub fn smallest_prime_at_least(n: u64) -> u64 {
    let mut p = n.max(2);
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// The prime field GF(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    q: u64,
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) || q > MAX_MODULUS {
            return Err(Error::NotPrime(q));
        }
        Ok(Self { q })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Wraps a residue, rejecting values outside `[0, q)`.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.q {
            return Err(Error::NotAnElement { value, q: self.q });
        }
        Ok(FieldElement {
            value,
            field: *self,
        })
    }

    /// Wraps an arbitrary integer after reducing it mod q.
    pub fn reduce(&self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.q,
            field: *self,
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            value: 0,
            field: *self,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            value: 1,
            field: *self,
        }
    }

    /// Iterates over every element in increasing order of value.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |value| FieldElement {
            value,
            field: *self,
        })
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        (x + y) % self.q
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        (x + self.q - y) % self.q
    }

    #[inline]
    pub fn neg(&self, x: u64) -> u64 {
        (self.q - x) % self.q
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        (x * y) % self.q
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, x: u64, mut e: u64) -> u64 {
        let mut base = x % self.q;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Fermat's little theorem.
    pub fn inv(&self, x: u64) -> Result<u64> {
        if x.is_multiple_of(self.q) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(x, self.q - 2))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// An element of a specific prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    field: Field,
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<Field> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.q,
                right: other.field.q,
            });
        }
        Ok(self.field)
    }

    fn wrap(field: Field, value: u64) -> Self {
        Self { value, field }
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        let f = self.same_field(&other)?;
        Ok(Self::wrap(f, f.add(self.value, other.value)))
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        let f = self.same_field(&other)?;
        Ok(Self::wrap(f, f.sub(self.value, other.value)))
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        let f = self.same_field(&other)?;
        Ok(Self::wrap(f, f.mul(self.value, other.value)))
    }

    pub fn inv(self) -> Result<Self> {
        Ok(Self::wrap(self.field, self.field.inv(self.value)?))
    }

    pub fn pow(self, e: u64) -> Self {
        Self::wrap(self.field, self.field.pow(self.value, e))
    }
}

impl std::ops::Neg for FieldElement {
    type Output = Self;

    fn neg(self) -> Self {
        Self::wrap(self.field, self.field.neg(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
