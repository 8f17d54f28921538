use std::fmt;

use crate::error::{Error, Result};

use super::{FpVec, Prime};

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Outcome of [`FpMatrix::solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Consistent {
        particular: Vec<u8>,
        nullspace: Vec<Vec<u8>>,
    },
    Inconsistent,
}

impl FpMatrix {
    pub fn new<I>(p: Prime, rows: usize, cols: usize, data: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let data: Vec<u8> = data.into_iter().map(|e| p.reduce(e.into())).collect();
        if data.len() != rows * cols {
            return Err(Error::mismatch(rows * cols, data.len()));
        }
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: Prime, rows: &[FpVec]) -> Result<Self> {
        let cols = rows.first().map_or(0, FpVec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.p() != p {
                return Err(Error::FieldMismatch {
                    left: p.get(),
                    right: r.p().get(),
                });
            }
            if r.len() != cols {
                return Err(Error::mismatch(cols, r.len()));
            }
            data.extend_from_slice(r.entries());
        }
        Ok(FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Parses rows of digit strings, e.g. `["10000011", "01000011"]`.
    pub fn from_digit_rows(p: Prime, rows: &[&str]) -> Result<Self> {
        let rows: Vec<FpVec> = rows
            .iter()
            .map(|r| FpVec::parse_digits(p, r))
            .collect::<Result<_>>()?;
        Self::from_rows(p, &rows)
    }

    /// Reads a matrix file: line 1 is `p`, then one row of digits per line.
    /// Whitespace inside a row is ignored and `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "empty matrix file".into(),
        })?;
        let p = header
            .parse::<u32>()
            .map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("expected `p`, got `{header}`"),
            })
            .and_then(Prime::new)?;
        let rows: Vec<String> = lines
            .map(|l| l.chars().filter(|c| !c.is_whitespace()).collect())
            .collect();
        if rows.is_empty() {
            return Err(Error::Parse {
                pos: 1,
                msg: "matrix has no rows".into(),
            });
        }
        let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
        Self::from_digit_rows(p, &refs)
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.p.get() as u8;
    }

    pub fn row(&self, r: usize) -> FpVec {
        let entries = self.data[r * self.cols..(r + 1) * self.cols].to_vec();
        FpVec::new(self.p, entries).unwrap_or_else(|_| FpVec::zeros(self.p, 0))
    }

    pub fn col(&self, c: usize) -> FpVec {
        let mut v = FpVec::zeros(self.p, self.rows);
        for r in 0..self.rows {
            v.set(r, self.get(r, c));
        }
        v
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// The submatrix with the given (zero-based) row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let mut m = Self::zeros(self.p, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.rows != other.rows {
            return Err(Error::mismatch(self.rows, other.rows));
        }
        let mut m = Self::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.cols {
            return Err(Error::mismatch(self.cols, v.len()));
        }
        let q = self.p.get();
        Ok((0..self.rows)
            .map(|r| {
                let s: u32 = (0..self.cols)
                    .map(|c| self.get(r, c) as u32 * v[c] as u32)
                    .sum();
                (s % q) as u8
            })
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.rows.min(self.cols)).all(|i| self.get(i, i) == 0)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for c in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(r) = (pivot_row..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if r != pivot_row {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, pivot_row * self.cols + j);
                }
            }
            let inv = p.inv(self.get(pivot_row, c));
            for j in 0..self.cols {
                let v = p.mul(self.get(pivot_row, j), inv);
                self.set(pivot_row, j, v);
            }
            for r2 in 0..self.rows {
                let factor = self.get(r2, c);
                if r2 == pivot_row || factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = p.sub(self.get(r2, j), p.mul(factor, self.get(pivot_row, j)));
                    self.set(r2, j, v);
                }
            }
            pivots.push(c);
            pivot_row += 1;
        }
        pivots
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : Mx = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u8; self.cols];
                x[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = p.neg(r.get(i, f));
                }
                x
            })
            .collect()
    }

    /// Solves `Mx = rhs`: one particular solution plus a nullspace basis, or inconsistency.
    pub fn solve_linear(&self, rhs: &[u8]) -> Result<LinearSolution> {
        if rhs.len() != self.rows {
            return Err(Error::mismatch(self.rows, rhs.len()));
        }
        let rhs_col = FpMatrix::new(self.p, self.rows, 1, rhs.iter().map(|&v| v as i64))?;
        let (aug, pivots) = self.hstack(&rhs_col)?.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(LinearSolution::Inconsistent);
        }
        let mut particular = vec![0u8; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            particular[pc] = aug.get(i, self.cols);
        }
        Ok(LinearSolution::Consistent {
            particular,
            nullspace: self.nullspace(),
        })
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            for c in 0..self.cols {
                write!(
                    f,
                    "{}",
                    char::from_digit(self.get(r, c) as u32, 16).unwrap_or('?')
                )?;
            }
        }
        Ok(())
    }
}
