//! Arithmetic over `F_p` and `Z[ζ_p]`, symplectic labels, and small linear algebra.

mod cyclo;
mod matrix;
mod pauli;
mod prime;
mod vector;

pub use cyclo::{CycloCoeff, CycloInt};
pub use matrix::{FpMatrix, LinearSolution};
pub use pauli::{combinations, labels_of_weight, PauliLabel};
pub use prime::{Prime, MAX_PRIME};
pub use vector::FpVec;

use crate::error::Result;

/// Largest `p^n` for which dense state vectors and truth tables are built.
pub const MAX_STATE_DIM: u128 = 1 << 20;

pub fn symplectic_weight(e: &PauliLabel) -> usize {
    e.symplectic_weight()
}

pub fn symplectic_product(u: &PauliLabel, v: &PauliLabel) -> Result<u8> {
    u.symplectic_product(v)
}

pub fn rank(m: &FpMatrix) -> usize {
    m.rank()
}

pub fn solve_linear(m: &FpMatrix, rhs: &FpVec) -> Result<LinearSolution> {
    m.solve_linear(rhs.entries())
}

pub fn cyclo_is_zero<T: CycloCoeff>(z: &CycloInt<T>) -> bool {
    z.is_zero()
}

/// Index arithmetic on the points of `F_p^n`, in the `x_1`-most-significant order.
///
/// Over `F_2` an index is the bitmask of its point, so shifts are XORs and dot
/// products are parities of ANDs.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PointSpace {
    pub p: Prime,
    pub n: usize,
    pub dim: usize,
}

impl PointSpace {
    pub fn new(p: Prime, n: usize) -> Result<Self> {
        let dim = p.checked_dim(n, MAX_STATE_DIM, "p^n state dimension")?;
        Ok(PointSpace { p, n, dim })
    }

    /// `table[idx(x)] = idx(x + a)`.
    pub fn shift_map(&self, a: &FpVec) -> Vec<u32> {
        if self.p.is_two() {
            let m = a.to_index() as u32;
            return (0..self.dim as u32).map(|x| x ^ m).collect();
        }
        let q = self.p.as_usize();
        let mut out = Vec::with_capacity(self.dim);
        let mut digits = vec![0usize; self.n];
        for _ in 0..self.dim {
            let idx = digits
                .iter()
                .zip(a.entries())
                .fold(0usize, |acc, (&d, &s)| acc * q + (d + s as usize) % q);
            out.push(idx as u32);
            increment(&mut digits, q);
        }
        out
    }

    /// `table[idx(x)] = b·x mod p`.
    pub fn dot_table(&self, b: &FpVec) -> Vec<u8> {
        if self.p.is_two() {
            let m = b.to_index() as u32;
            return (0..self.dim as u32)
                .map(|x| ((x & m).count_ones() & 1) as u8)
                .collect();
        }
        let q = self.p.get();
        let mut out = Vec::with_capacity(self.dim);
        let mut digits = vec![0usize; self.n];
        for _ in 0..self.dim {
            let s: u32 = digits
                .iter()
                .zip(b.entries())
                .map(|(&d, &c)| d as u32 * c as u32)
                .sum();
            out.push((s % q) as u8);
            increment(&mut digits, q as usize);
        }
        out
    }
}

/// Odometer step on a most-significant-first digit vector.
pub(crate) fn increment(digits: &mut [usize], q: usize) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return;
        }
        *d = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_and_dot_tables_match_vector_ops() {
        for (p, n) in [
            (Prime::TWO, 4),
            (Prime::THREE, 3),
            (Prime::new(5).unwrap(), 2),
        ] {
            let space = PointSpace::new(p, n).unwrap();
            let a = FpVec::from_index(p, n, space.dim / 3 + 1);
            let b = FpVec::from_index(p, n, space.dim / 2 + 1);
            let shift = space.shift_map(&a);
            let dots = space.dot_table(&b);
            for idx in 0..space.dim {
                let x = FpVec::from_index(p, n, idx);
                assert_eq!(shift[idx] as usize, x.add(&a).unwrap().to_index());
                assert_eq!(dots[idx], x.dot(&b).unwrap());
            }
        }
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(PointSpace::new(Prime::TWO, 20).is_ok());
        let err = PointSpace::new(Prime::TWO, 21).unwrap_err();
        assert!(err.is_capacity());
        assert!(PointSpace::new(Prime::new(13).unwrap(), 6).is_err());
    }
}
