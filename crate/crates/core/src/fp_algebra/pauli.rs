use std::fmt;

use crate::error::{Error, Result};

use super::{FpVec, Prime};

/// The error label `(a|b)` naming `X_a Z_b` on `n` qudits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliLabel {
    a: FpVec,
    b: FpVec,
}

impl PauliLabel {
    pub fn new(a: FpVec, b: FpVec) -> Result<Self> {
        a.check_compatible(&b)?;
        Ok(PauliLabel { a, b })
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        PauliLabel {
            a: FpVec::zeros(p, n),
            b: FpVec::zeros(p, n),
        }
    }

    /// Parses `"a|b"` digit strings, e.g. `"1000|0011"`.
    pub fn parse(p: Prime, text: &str) -> Result<Self> {
        let (a, b) = text.split_once('|').ok_or(Error::Parse {
            pos: 0,
            msg: "expected a|b".into(),
        })?;
        Self::new(FpVec::parse_digits(p, a)?, FpVec::parse_digits(p, b)?)
    }

    #[inline]
    pub fn a(&self) -> &FpVec {
        &self.a
    }

    #[inline]
    pub fn b(&self) -> &FpVec {
        &self.b
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.a.p()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Number of positions with `(a_i, b_i) != (0, 0)`.
    pub fn symplectic_weight(&self) -> usize {
        self.a
            .entries()
            .iter()
            .zip(self.b.entries())
            .filter(|(&x, &z)| x != 0 || z != 0)
            .count()
    }

    /// `a_u·b_v − a_v·b_u mod p`.
    pub fn symplectic_product(&self, other: &PauliLabel) -> Result<u8> {
        self.a.check_compatible(&other.a)?;
        let p = self.p();
        Ok(p.sub(
            self.a.dot_unchecked(&other.b),
            other.a.dot_unchecked(&self.b),
        ))
    }

    pub fn add(&self, other: &PauliLabel) -> Result<PauliLabel> {
        Ok(PauliLabel {
            a: self.a.add(&other.a)?,
            b: self.b.add(&other.b)?,
        })
    }

    pub fn neg(&self) -> PauliLabel {
        PauliLabel {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    /// `(a, b)` concatenated into a length-`2n` vector.
    pub fn to_symplectic(&self) -> FpVec {
        self.a.concat(&self.b)
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.a, self.b)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every label of symplectic weight exactly `w`, ordered by support
/// (lexicographic), then by `(a, b)` lexicographically.
pub fn labels_of_weight(p: Prime, n: usize, w: usize) -> Vec<PauliLabel> {
    let q = p.get() as u8;
    let pairs: Vec<(u8, u8)> = (0..q)
        .flat_map(|x| (0..q).map(move |z| (x, z)))
        .filter(|&pair| pair != (0, 0))
        .collect();
    let mut out = Vec::new();
    for support in combinations(n, w) {
        let mut block = Vec::with_capacity(pairs.len().pow(w as u32));
        let mut choice = vec![0usize; w];
        loop {
            let mut a = FpVec::zeros(p, n);
            let mut b = FpVec::zeros(p, n);
            for (slot, &pos) in support.iter().enumerate() {
                let (x, z) = pairs[choice[slot]];
                a.set(pos, x);
                b.set(pos, z);
            }
            block.push(PauliLabel { a, b });
            let Some(i) = (0..w).rev().find(|&i| choice[i] + 1 < pairs.len()) else {
                break;
            };
            choice[i] += 1;
            for c in choice.iter_mut().skip(i + 1) {
                *c = 0;
            }
        }
        block.sort();
        out.extend(block);
    }
    out
}
