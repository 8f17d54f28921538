use std::fmt;

use crate::error::{Error, Result};
use crate::fp_algebra::{increment, FpMatrix, FpVec, PointSpace, Prime};

use super::Polynomial;

/// A logic function `F_p^n → F_p` held as a dense truth table.
///
/// `table[idx(x)]` is `f(x)` where `idx(x) = Σ x_i p^(n-i)` (`x_1` most significant).
/// The ANF is kept alongside when the function was built from one; otherwise it is
/// interpolated on demand.
#[derive(Clone, Debug)]
pub struct LogicFunction {
    p: Prime,
    n: usize,
    table: Vec<u8>,
    anf: Option<Polynomial>,
}

impl PartialEq for LogicFunction {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.table == other.table
    }
}

impl Eq for LogicFunction {}

impl LogicFunction {
    pub fn from_table(p: Prime, n: usize, table: Vec<u8>) -> Result<Self> {
        let space = PointSpace::new(p, n)?;
        if table.len() != space.dim {
            return Err(Error::mismatch(space.dim, table.len()));
        }
        let table = table.into_iter().map(|v| v % p.get() as u8).collect();
        Ok(LogicFunction {
            p,
            n,
            table,
            anf: None,
        })
    }

    pub fn from_polynomial(poly: Polynomial) -> Result<Self> {
        PointSpace::new(poly.p(), poly.n())?;
        Ok(LogicFunction {
            p: poly.p(),
            n: poly.n(),
            table: poly.to_table(),
            anf: Some(poly),
        })
    }

    /// Parses an ANF such as `"(y1+y2+y3)*(y1+y2+y4)"`.
    pub fn parse_anf(text: &str, p: Prime, n: usize) -> Result<Self> {
        PointSpace::new(p, n)?;
        Self::from_polynomial(Polynomial::parse(text, p, n)?)
    }

    /// Parses a truth table written as `p^n` digits in index order.
    pub fn parse_table(text: &str, p: Prime, n: usize) -> Result<Self> {
        let digits: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let v = FpVec::parse_digits(p, &digits)?;
        Self::from_table(p, n, v.entries().to_vec())
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        Self::constant(p, n, 0)
    }

    pub fn constant(p: Prime, n: usize, c: u8) -> Self {
        let dim = p.as_usize().pow(n as u32);
        let c = c % p.get() as u8;
        LogicFunction {
            p,
            n,
            table: vec![c; dim],
            anf: Some(Polynomial::constant(p, n, c as i64)),
        }
    }

    /// `f(x) = Σ_{i<j} A_ij x_i x_j`, the form `½ x A xᵀ` of a symmetric zero-diagonal `A`.
    pub fn quadratic_form(a: &FpMatrix) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::InvalidMatrix(format!(
                "expected a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if !a.is_symmetric() {
            return Err(Error::InvalidMatrix("matrix is not symmetric".into()));
        }
        if !a.has_zero_diagonal() {
            return Err(Error::InvalidMatrix("matrix has a nonzero diagonal".into()));
        }
        let (p, n) = (a.p(), a.rows());
        let mut poly = Polynomial::zero(p, n);
        for i in 0..n {
            for j in i + 1..n {
                let w = a.get(i, j);
                if w != 0 {
                    let mut e = vec![0u8; n];
                    e[i] = 1;
                    e[j] = 1;
                    poly.add_term(e, w);
                }
            }
        }
        Self::from_polynomial(poly)
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
        self.table.len()
    }

    #[inline]
    pub fn table(&self) -> &[u8] {
        &self.table
    }

    #[inline]
    pub fn value(&self, index: usize) -> u8 {
        self.table[index]
    }

    pub fn value_at(&self, x: &FpVec) -> Result<u8> {
        if x.len() != self.n {
            return Err(Error::mismatch(self.n, x.len()));
        }
        Ok(self.table[x.to_index()])
    }

    /// The algebraic normal form (stored or interpolated).
    pub fn anf(&self) -> Polynomial {
        match &self.anf {
            Some(poly) => poly.clone(),
            None => Polynomial::from_table(self.p, self.n, &self.table),
        }
    }

    pub fn has_stored_anf(&self) -> bool {
        self.anf.is_some()
    }

    pub fn anf_string(&self) -> String {
        self.anf().to_string()
    }

    /// `M = #{x : f(x) != 0}` and the support in index order.
    pub fn weight_support(&self) -> (usize, Vec<FpVec>) {
        let support: Vec<FpVec> = self
            .table
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| FpVec::from_index(self.p, self.n, i))
            .collect();
        (support.len(), support)
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&v| v != 0).count()
    }

    /// `g(x) = f(x) + β·x + c`.
    pub fn add_affine(&self, beta: &FpVec, c: u8) -> Result<LogicFunction> {
        if beta.p() != self.p {
            return Err(Error::FieldMismatch {
                left: self.p.get(),
                right: beta.p().get(),
            });
        }
        if beta.len() != self.n {
            return Err(Error::mismatch(self.n, beta.len()));
        }
        let p = self.p;
        let q = p.as_usize();
        let mut digits = vec![0usize; self.n];
        let mut table = Vec::with_capacity(self.dim());
        for &v in &self.table {
            let dot = digits
                .iter()
                .zip(beta.entries())
                .fold(0u8, |acc, (&d, &b)| p.add(acc, p.mul(d as u8, b)));
            table.push(p.add(p.add(v, dot), c % p.get() as u8));
            increment(&mut digits, q);
        }
        let anf = self
            .anf
            .as_ref()
            .map(|poly| poly.add(&Polynomial::affine(p, beta.entries(), c)));
        Ok(LogicFunction {
            p,
            n: self.n,
            table,
            anf,
        })
    }

    /// `self - other` pointwise.
    pub fn difference(&self, other: &LogicFunction) -> Result<LogicFunction> {
        if self.p != other.p || self.n != other.n {
            return Err(Error::mismatch(self.n, other.n));
        }
        let p = self.p;
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| p.sub(a, b))
            .collect();
        Ok(LogicFunction {
            p,
            n: self.n,
            table,
            anf: None,
        })
    }

    /// Whether the function is `β·x + c` for some `β, c`.
    pub fn is_affine(&self) -> bool {
        self.anf().degree() <= 1
    }
}

impl fmt::Display for LogicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.anf())
    }
}
