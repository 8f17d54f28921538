use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp_algebra::{CycloCoeff, CycloInt, PauliLabel, PointSpace, Prime};
use crate::state_oracle::StateVector;

/// Largest `p^n` for dense operator matrices (`p^{2n}` entries).
pub const MAX_OPERATOR_DIM: u128 = 1 << 10;

/// Dense `p^n × p^n` matrix over `Z[ζ_p]`, row-major in index order.
#[derive(Clone, Debug)]
pub struct OperatorMatrix<T = i64> {
    p: Prime,
    n: usize,
    dim: usize,
    entries: Vec<CycloInt<T>>,
}

impl<T: CycloCoeff> PartialEq for OperatorMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.entries == other.entries
    }
}

impl<T: CycloCoeff> Eq for OperatorMatrix<T> {}

fn space(p: Prime, n: usize) -> Result<PointSpace> {
    let dim = p.checked_dim(n, MAX_OPERATOR_DIM, "p^n operator dimension")?;
    Ok(PointSpace { p, n, dim })
}

impl<T: CycloCoeff> OperatorMatrix<T> {
    pub fn zeros(p: Prime, n: usize) -> Result<Self> {
        let s = space(p, n)?;
        Ok(OperatorMatrix {
            p,
            n,
            dim: s.dim,
            entries: vec![CycloInt::zero(p); s.dim * s.dim],
        })
    }

    pub fn identity(p: Prime, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n)?;
        for i in 0..m.dim {
            m.entries[i * m.dim + i] = CycloInt::one(p);
        }
        Ok(m)
    }

    /// `X_a Z_b`: entry `(x + a, x)` is `ζ^{b·x}`.
    pub fn from_label(e: &PauliLabel) -> Result<Self> {
        let mut m = Self::zeros(e.p(), e.n())?;
        let s = space(e.p(), e.n())?;
        let shift = s.shift_map(e.a());
        let dots = s.dot_table(e.b());
        for x in 0..m.dim {
            m.entries[shift[x] as usize * m.dim + x] = CycloInt::zeta_pow(m.p, dots[x] as u32);
        }
        Ok(m)
    }

    /// `|ψ⟩⟨φ|` (unnormalized).
    pub fn outer(psi: &StateVector<T>, phi: &StateVector<T>) -> Result<Self> {
        if psi.p() != phi.p() || psi.n() != phi.n() {
            return Err(Error::mismatch(psi.n(), phi.n()));
        }
        let mut m = Self::zeros(psi.p(), psi.n())?;
        let dim = m.dim;
        let conj: Vec<CycloInt<T>> = phi.amps().iter().map(CycloInt::conj).collect();
        for (r, u) in psi.amps().iter().enumerate() {
            for (c, v) in conj.iter().enumerate() {
                m.entries[r * dim + c] = u * v;
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &CycloInt<T> {
        &self.entries[r * self.dim + c]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        if self.n != other.n {
            return Err(Error::mismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let dim = self.dim;
        let p = self.p;
        let entries: Vec<CycloInt<T>> = (0..dim)
            .into_par_iter()
            .flat_map_iter(|r| {
                let mut row = vec![CycloInt::zero(p); dim];
                for k in 0..dim {
                    let a = &self.entries[r * dim + k];
                    if a.is_zero() {
                        continue;
                    }
                    for (c, slot) in row.iter_mut().enumerate() {
                        let b = &other.entries[k * dim + c];
                        if !b.is_zero() {
                            slot.add_product(a, b);
                        }
                    }
                }
                row
            })
            .collect();
        Ok(OperatorMatrix {
            p,
            n: self.n,
            dim,
            entries,
        })
    }

    /// `self · X_a Z_b` in `O(dim²)`: column `x` becomes `ζ^{b·x}` times column `x + a`.
    pub fn mul_label(&self, e: &PauliLabel) -> Result<Self> {
        if e.p() != self.p || e.n() != self.n {
            return Err(Error::mismatch(self.n, e.n()));
        }
        let s = space(self.p, self.n)?;
        let shift = s.shift_map(e.a());
        let dots = s.dot_table(e.b());
        let dim = self.dim;
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for x in 0..dim {
                entries.push(self.entries[r * dim + shift[x] as usize].mul_zeta(dots[x] as u32));
            }
        }
        Ok(OperatorMatrix {
            p: self.p,
            n: self.n,
            dim,
            entries,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&CycloInt<T>, &CycloInt<T>) -> CycloInt<T>,
    ) -> Self {
        OperatorMatrix {
            p: self.p,
            n: self.n,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        OperatorMatrix {
            p: self.p,
            n: self.n,
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.scale(s)).collect(),
        }
    }

    /// `ζ^k` times the matrix.
    pub fn with_phase(&self, k: u32) -> Self {
        OperatorMatrix {
            p: self.p,
            n: self.n,
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.mul_zeta(k)).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        let dim = self.dim;
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(self.entries[c * dim + r].conj());
            }
        }
        OperatorMatrix {
            p: self.p,
            n: self.n,
            dim,
            entries,
        }
    }

    pub fn trace(&self) -> CycloInt<T> {
        let mut acc = CycloInt::zero(self.p);
        for i in 0..self.dim {
            acc.add_assign_ref(&self.entries[i * self.dim + i]);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycloInt::is_zero)
    }

    /// First `(row, col)` where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.dim, i % self.dim))
    }

    /// Rank over `Q` for `p = 2`, where every entry is a rational integer.
    pub fn rank(&self) -> Result<usize> {
        if !self.p.is_two() {
            return Err(Error::UnsupportedField(
                "operator rank is implemented for F_2 (integer entries) only".into(),
            ));
        }
        let rows: Vec<Vec<BigInt>> = (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| {
                        let v = self
                            .get(r, c)
                            .to_integer()
                            .expect("F_2 entries are integers");
                        BigInt::from(v.to_i128().expect("entry fits i128"))
                    })
                    .collect()
            })
            .collect();
        Ok(bareiss_rank(rows))
    }
}

/// Fraction-free elimination rank.
fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn operator_matrix(e: &PauliLabel) -> Result<OperatorMatrix> {
    OperatorMatrix::from_label(e)
}

impl<T: CycloCoeff> fmt::Display for OperatorMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
