use std::fmt;

use crate::error::{Error, Result};

/// A small prime `p` with `2 <= p <= 13`, the characteristic of every field in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u8);

/// Largest supported prime. Keeps `p^n` state vectors desk-sized.
pub const MAX_PRIME: u32 = 13;

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Prime(p as u8))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_two(self) -> bool {
        self.0 == 2
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.0 as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.get() - b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        ((self.get() - a as u32) % self.get()) as u8
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u8) -> u8 {
        assert!(a % self.0 != 0, "zero has no inverse in F_{}", self.0);
        self.pow(a, self.get() - 2)
    }

    pub fn pow(self, a: u8, mut e: u32) -> u8 {
        let mut base = a as u32 % self.get();
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.get();
            }
            base = base * base % self.get();
            e >>= 1;
        }
        acc as u8
    }

    /// `p^n`, or a capacity error when it would exceed `limit`.
    pub fn checked_dim(self, n: usize, limit: u128, what: &'static str) -> Result<usize> {
        let size = (self.get() as u128)
            .checked_pow(n as u32)
            .unwrap_or(u128::MAX);
        if size > limit {
            return Err(Error::Capacity { what, size, limit });
        }
        Ok(size as usize)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
