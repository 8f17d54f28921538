use std::fmt;

use crate::error::{Error, Result};

use super::Prime;

/// A vector over `F_p`.
///
/// Coordinates are numbered from 1 in documentation and text formats; `x_1` is the
/// most significant digit of the point index (see [`FpVec::to_index`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVec {
    p: Prime,
    entries: Vec<u8>,
}

impl FpVec {
    /// Builds a vector, reducing every entry mod `p`. Empty vectors are rejected.
    pub fn new<I>(p: Prime, entries: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let entries: Vec<u8> = entries.into_iter().map(|e| p.reduce(e.into())).collect();
        if entries.is_empty() {
            return Err(Error::Precondition("vectors must have length >= 1".into()));
        }
        Ok(FpVec { p, entries })
    }

    pub fn zeros(p: Prime, n: usize) -> Self {
        FpVec {
            p,
            entries: vec![0; n],
        }
    }

    /// The unit vector with a 1 at zero-based position `i`.
    pub fn unit(p: Prime, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(p, n);
        v.entries[i] = 1;
        v
    }

    /// Decodes a point index (`x_1` most significant).
    pub fn from_index(p: Prime, n: usize, mut index: usize) -> Self {
        let q = p.as_usize();
        let mut entries = vec![0u8; n];
        for slot in entries.iter_mut().rev() {
            *slot = (index % q) as u8;
            index /= q;
        }
        FpVec { p, entries }
    }

    /// `sum_i x_i p^(n-i)`.
    pub fn to_index(&self) -> usize {
        let q = self.p.as_usize();
        self.entries.iter().fold(0, |acc, &e| acc * q + e as usize)
    }

    /// Indicator vector of a set of zero-based positions.
    pub fn indicator(p: Prime, n: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(p, n);
        for i in positions {
            v.entries[i] = 1;
        }
        v
    }

    /// Parses a digit string such as `1011` (digits `0-9a-c`, one per coordinate).
    pub fn parse_digits(p: Prime, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut entries = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            let d = ch
                .to_digit(16)
                .filter(|&d| d < p.get())
                .ok_or(Error::Parse {
                    pos,
                    msg: format!("'{ch}' is not a digit mod {p}"),
                })?;
            entries.push(d as u8);
        }
        if entries.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty vector".into(),
            });
        }
        Ok(FpVec { p, entries })
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: u8) {
        self.entries[i] = value % self.p.get() as u8;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    pub(crate) fn check_compatible(&self, other: &FpVec) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::mismatch(self.len(), other.len()));
        }
        Ok(())
    }

    pub fn dot(&self, other: &FpVec) -> Result<u8> {
        self.check_compatible(other)?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &FpVec) -> u8 {
        let q = self.p.get();
        let s: u32 = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a as u32 * b as u32)
            .sum();
        (s % q) as u8
    }

    pub fn add(&self, other: &FpVec) -> Result<FpVec> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| self.p.add(a, b)))
    }

    pub fn sub(&self, other: &FpVec) -> Result<FpVec> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| self.p.sub(a, b)))
    }

    pub fn neg(&self) -> FpVec {
        FpVec {
            p: self.p,
            entries: self.entries.iter().map(|&a| self.p.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: u8) -> FpVec {
        FpVec {
            p: self.p,
            entries: self.entries.iter().map(|&a| self.p.mul(a, c)).collect(),
        }
    }

    fn zip_with(&self, other: &FpVec, op: impl Fn(u8, u8) -> u8) -> FpVec {
        FpVec {
            p: self.p,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &FpVec) -> FpVec {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        FpVec { p: self.p, entries }
    }
}

impl fmt::Display for FpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.entries {
            write!(f, "{}", char::from_digit(e as u32, 16).unwrap_or('?'))?;
        }
        Ok(())
    }
}
