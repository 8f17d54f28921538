//! Exact arithmetic in the cyclotomic integers `Z[ζ_p]`.
//!
//! An element is stored as a coefficient vector `(c_0, ..., c_{p-1})` meaning
//! `Σ c_j ζ^j`. Because `1 + ζ + ... + ζ^{p-1} = 0`, two vectors denote the same
//! element exactly when their difference is constant; that is also the zero test.
//! The coefficient ring is generic so that the same code runs on `i64` for speed
//! and on `BigInt` when magnitudes could overflow.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, Signed, ToPrimitive};

use super::Prime;

/// Integer types usable as coefficients of a [`CycloInt`].
pub trait CycloCoeff:
    Clone
    + fmt::Debug
    + fmt::Display
    + Eq
    + Ord
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> CycloCoeff for T where
    T: Clone
        + fmt::Debug
        + fmt::Display
        + Eq
        + Ord
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

#[derive(Clone, Debug)]
pub struct CycloInt<T = i64> {
    p: Prime,
    coeffs: Vec<T>,
}

impl<T: CycloCoeff> CycloInt<T> {
    pub fn zero(p: Prime) -> Self {
        CycloInt {
            p,
            coeffs: vec![T::zero(); p.as_usize()],
        }
    }

    pub fn one(p: Prime) -> Self {
        Self::zeta_pow(p, 0)
    }

    pub fn from_int(p: Prime, v: T) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = v;
        z
    }

    /// `ζ^k`.
    pub fn zeta_pow(p: Prime, k: u32) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[(k % p.get()) as usize] = T::one();
        z
    }

    /// Builds `Σ_j hist[j] ζ^j` from an exponent histogram.
    pub fn from_histogram(p: Prime, hist: &[u64]) -> Self {
        assert_eq!(hist.len(), p.as_usize());
        CycloInt {
            p,
            coeffs: hist
                .iter()
                .map(|&h| T::from_u64(h).expect("histogram count fits coefficient type"))
                .collect(),
        }
    }

    pub fn from_coeffs(p: Prime, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), p.as_usize());
        CycloInt { p, coeffs }
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Exact zero test: the coefficient vector is constant.
    pub fn is_zero(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }

    /// Representative with `min_j c_j = 0`.
    pub fn canonical(&self) -> Self {
        let min = self.coeffs.iter().min().cloned().unwrap_or_else(T::zero);
        CycloInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.clone() - min.clone())
                .collect(),
        }
    }

    /// The rational-integer value, when the element lies in `Z`.
    pub fn to_integer(&self) -> Option<T> {
        let rest = &self.coeffs[1..];
        let c = rest.first().cloned().unwrap_or_else(T::zero);
        rest.iter()
            .all(|x| *x == c)
            .then(|| self.coeffs[0].clone() - c)
    }

    /// If the element is `u ζ^k` for a single `k` (in canonical form), returns `(u, k)`.
    pub fn as_monomial(&self) -> Option<(T, u32)> {
        let c = self.canonical();
        let mut found = None;
        for (k, v) in c.coeffs.iter().enumerate() {
            if !v.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((v.clone(), k as u32));
            }
        }
        found
    }

    /// Complex conjugation, `ζ^j ↦ ζ^{-j}`.
    pub fn conj(&self) -> Self {
        let q = self.p.as_usize();
        let mut coeffs = vec![T::zero(); q];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(q - j) % q] = c.clone();
        }
        CycloInt { p: self.p, coeffs }
    }

    /// Multiplication by `ζ^k`.
    pub fn mul_zeta(&self, k: u32) -> Self {
        let q = self.p.as_usize();
        let k = (k % self.p.get()) as usize;
        let mut coeffs = vec![T::zero(); q];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(j + k) % q] = c.clone();
        }
        CycloInt { p: self.p, coeffs }
    }

    pub fn scale(&self, s: &T) -> Self {
        CycloInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// `self += conj(a) * b` without intermediate allocation.
    pub fn add_conj_product(&mut self, a: &Self, b: &Self) {
        debug_assert!(self.p == a.p && a.p == b.p);
        let q = self.p.as_usize();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let slot = &mut self.coeffs[(j + q - i) % q];
                *slot = slot.clone() + ai.clone() * bj.clone();
            }
        }
    }

    /// `self += a * b` without intermediate allocation.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        debug_assert!(self.p == a.p && a.p == b.p);
        let q = self.p.as_usize();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let slot = &mut self.coeffs[(i + j) % q];
                *slot = slot.clone() + ai.clone() * bj.clone();
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        debug_assert_eq!(self.p, other.p);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.clone() + b.clone();
        }
    }

    /// Numerical value at `ζ = exp(2πi/p)`; for cross-checks only.
    pub fn eval_complex(&self) -> (f64, f64) {
        let q = self.p.get() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (j, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let t = 2.0 * std::f64::consts::PI * j as f64 / q;
                (re + c * t.cos(), im + c * t.sin())
            })
    }
}

impl<T: CycloCoeff> PartialEq for CycloInt<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let d0 = self.coeffs[0].clone() - other.coeffs[0].clone();
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| a.clone() - b.clone() == d0)
    }
}

impl<T: CycloCoeff> Eq for CycloInt<T> {}

impl<T: CycloCoeff> Add for &CycloInt<T> {
    type Output = CycloInt<T>;
    fn add(self, rhs: Self) -> CycloInt<T> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<T: CycloCoeff> Sub for &CycloInt<T> {
    type Output = CycloInt<T>;
    fn sub(self, rhs: Self) -> CycloInt<T> {
        assert_eq!(self.p, rhs.p);
        CycloInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: CycloCoeff> Neg for &CycloInt<T> {
    type Output = CycloInt<T>;
    fn neg(self) -> CycloInt<T> {
        CycloInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: CycloCoeff> Mul for &CycloInt<T> {
    type Output = CycloInt<T>;
    fn mul(self, rhs: Self) -> CycloInt<T> {
        assert_eq!(self.p, rhs.p);
        let mut out = CycloInt::zero(self.p);
        out.add_product(self, rhs);
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: CycloCoeff> $tr for CycloInt<T> {
            type Output = CycloInt<T>;
            fn $m(self, rhs: Self) -> CycloInt<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: CycloCoeff> fmt::Display for CycloInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.to_integer() {
            return write!(f, "{v}");
        }
        let c = self.canonical();
        let mut first = true;
        for (j, v) in c.coeffs.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{v}")?,
                1 => write!(f, "{v}ζ")?,
                _ => write!(f, "{v}ζ^{j}")?,
            }
        }
        Ok(())
    }
}
