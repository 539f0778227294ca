//! Arithmetic in the prime field F_p.
//!
//! Elements are canonical residues 0..p−1 stored as `u64`; the field context
//! carries the modulus. Only prime moduli are supported, and the matrix
//! model additionally requires p ≥ m so that every factorial appearing in
//! the truncated exponential series is invertible.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field F_{p} is too small for matrix size {m} (need p >= m)")]
    FieldTooSmall { p: u64, m: usize },
}

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Check the p ≥ m requirement of the matrix model.
    pub fn check_matrix_size(&self, m: usize) -> Result<(), FieldError> {
        if (self.p as usize) < m {
            Err(FieldError::FieldTooSmall { p: self.p, m })
        } else {
            Ok(())
        }
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element, via Fermat.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// All nonzero elements, ascending.
    pub fn nonzero(&self) -> impl Iterator<Item = u64> {
        1..self.p
    }
}
