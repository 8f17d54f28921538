//! Algebraic normal form: reduced polynomials over `F_p` in `x1..xn`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fp_algebra::{increment, FpMatrix, LinearSolution, Prime};

/// A reduced polynomial: each monomial is an exponent vector with entries `< p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    p: Prime,
    n: usize,
    terms: BTreeMap<Vec<u8>, u8>,
}

/// `x^e` with `x^p = x` applied: exponents in `1..p` (or 0).
fn reduce_exponent(p: Prime, e: u32) -> u8 {
    if e == 0 {
        0
    } else {
        (((e - 1) % (p.get() - 1)) + 1) as u8
    }
}

impl Polynomial {
    pub fn zero(p: Prime, n: usize) -> Self {
        Polynomial {
            p,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: Prime, n: usize, c: i64) -> Self {
        let mut poly = Self::zero(p, n);
        poly.add_term(vec![0; n], p.reduce(c));
        poly
    }

    /// The zero-based variable `x_{i+1}`.
    pub fn variable(p: Prime, n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut poly = Self::zero(p, n);
        poly.add_term(e, 1);
        poly
    }

    /// `Σ c_i x_i + c`.
    pub fn affine(p: Prime, linear: &[u8], c: u8) -> Self {
        let n = linear.len();
        let mut poly = Self::constant(p, n, c as i64);
        for (i, &ci) in linear.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            poly.add_term(e, ci);
        }
        poly
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], u8)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u8>, c: u8) {
        if c == 0 {
            return;
        }
        let p = self.p;
        let slot = self.terms.entry(exps).or_insert(0);
        *slot = p.add(*slot, c);
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u8) -> Polynomial {
        let mut out = Self::zero(self.p, self.n);
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), self.p.mul(v, c));
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.p.neg(1))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let p = self.p;
        let mut out = Self::zero(p, self.n);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<u8> = e1
                    .iter()
                    .zip(e2)
                    .map(|(&a, &b)| reduce_exponent(p, a as u32 + b as u32))
                    .collect();
                out.add_term(e, p.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = Self::constant(self.p, self.n, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &[u8]) -> u8 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let m = e
                .iter()
                .zip(x)
                .fold(c, |m, (&ei, &xi)| p.mul(m, p.pow(xi, ei as u32)));
            p.add(acc, m)
        })
    }

    /// Truth table in index order.
    pub fn to_table(&self) -> Vec<u8> {
        let q = self.p.as_usize();
        let dim = q.pow(self.n as u32);
        let mut digits = vec![0usize; self.n];
        let mut x = vec![0u8; self.n];
        let mut table = Vec::with_capacity(dim);
        for _ in 0..dim {
            for (xi, &d) in x.iter_mut().zip(&digits) {
                *xi = d as u8;
            }
            table.push(self.eval(&x));
            increment(&mut digits, q);
        }
        table
    }

    /// Interpolates the unique reduced polynomial with the given truth table.
    pub fn from_table(p: Prime, n: usize, table: &[u8]) -> Polynomial {
        let q = p.as_usize();
        let inv = inverse_vandermonde(p);
        let mut coeffs: Vec<u8> = table.to_vec();
        let mut stride = 1;
        for _ in 0..n {
            let block = stride * q;
            for base in (0..coeffs.len()).step_by(block) {
                for off in 0..stride {
                    let vals: Vec<u8> = (0..q).map(|x| coeffs[base + off + x * stride]).collect();
                    for e in 0..q {
                        let s =
                            (0..q).fold(0u8, |acc, x| p.add(acc, p.mul(inv[e * q + x], vals[x])));
                        coeffs[base + off + e * stride] = s;
                    }
                }
            }
            stride = block;
        }
        let mut poly = Self::zero(p, n);
        let mut digits = vec![0usize; n];
        for &c in &coeffs {
            if c != 0 {
                poly.add_term(digits.iter().map(|&d| d as u8).collect(), c);
            }
            increment(&mut digits, q);
        }
        poly
    }

    /// Parses a polynomial in `x1..xn` (or `y1..yn`) with `+ - * ^`, integers and
    /// parentheses. Juxtaposition multiplies.
    pub fn parse(text: &str, p: Prime, n: usize) -> Result<Polynomial> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            p,
            n,
        };
        let poly = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(poly)
    }

    fn sorted_terms(&self) -> Vec<(Vec<usize>, &Vec<u8>, u8)> {
        let mut v: Vec<(Vec<usize>, &Vec<u8>, u8)> = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let vars: Vec<usize> = e
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
                    .collect();
                (vars, e, c)
            })
            .collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        v
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (vars, e, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || vars.is_empty() {
                factors.push(c.to_string());
            }
            for (i, &ei) in e.iter().enumerate() {
                match ei {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, ei)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn inverse_vandermonde(p: Prime) -> Vec<u8> {
    let q = p.as_usize();
    let mut v = FpMatrix::zeros(p, q, q);
    for x in 0..q {
        for e in 0..q {
            v.set(x, e, p.pow(x as u8, e as u32));
        }
    }
    // column x of the inverse solves V y = unit_x
    let mut inv = vec![0u8; q * q];
    for x in 0..q {
        let mut rhs = vec![0u8; q];
        rhs[x] = 1;
        match v.solve_linear(&rhs).expect("square system") {
            LinearSolution::Consistent { particular, .. } => {
                for e in 0..q {
                    inv[e * q + x] = particular[e];
                }
            }
            LinearSolution::Inconsistent => unreachable!("Vandermonde matrix is invertible"),
        }
    }
    inv
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: Prime,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(c) if c == b'(' || c == b'x' || c == b'y' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.number()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse {
                pos: start,
                msg: "number out of range".into(),
            })
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') | Some(b'y') => {
                self.pos += 1;
                let index = self.number()? as usize;
                if index == 0 || index > self.n {
                    return Err(Error::VariableOutOfRange { index, n: self.n });
                }
                Ok(Polynomial::variable(self.p, self.n, index - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.number()?;
                Ok(Polynomial::constant(
                    self.p,
                    self.n,
                    (v % self.p.get() as u64) as i64,
                ))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_polynomials() {
        let p = Prime::TWO;
        let f = Polynomial::parse("x1*x2+(x1+x2)*(x3+x4)+x3*x4", p, 4).unwrap();
        let g = Polynomial::parse("x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4", p, 4).unwrap();
        assert_eq!(f, g);
        assert_eq!(
            f.to_string(),
            "x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4"
        );
        let h = Polynomial::parse("(y1+y2+y3)(y1+y2+y4)", p, 4).unwrap();
        assert_eq!(h.to_table().iter().filter(|&&v| v == 1).count(), 4);
    }

    #[test]
    fn exponent_reduction() {
        let p = Prime::THREE;
        let a = Polynomial::parse("x1^3", p, 1).unwrap();
        assert_eq!(a, Polynomial::variable(p, 1, 0));
        let b = Polynomial::parse("x1^4", p, 1).unwrap();
        assert_eq!(b.to_string(), "x1^2");
        let c = Polynomial::parse("x1*x1", Prime::TWO, 1).unwrap();
        assert_eq!(c.to_string(), "x1");
    }

    #[test]
    fn parse_errors() {
        let p = Prime::TWO;
        assert!(matches!(
            Polynomial::parse("x1 + x5", p, 4),
            Err(Error::VariableOutOfRange { index: 5, n: 4 })
        ));
        assert!(matches!(
            Polynomial::parse("x1 + ", p, 4),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            Polynomial::parse("(x1", p, 4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse("x1 $ x2", p, 4),
            Err(Error::Parse { pos: 3, .. })
        ));
    }

    #[test]
    fn interpolation_inverts_evaluation() {
        for (p, n) in [
            (Prime::TWO, 4),
            (Prime::THREE, 3),
            (Prime::new(5).unwrap(), 2),
        ] {
            let poly = Polynomial::parse("2*x1^2*x2 + x2 + 3", p, n).unwrap();
            let table = poly.to_table();
            assert_eq!(Polynomial::from_table(p, n, &table), poly);
        }
    }

    #[test]
    fn display_round_trips() {
        let p = Prime::new(5).unwrap();
        let poly = Polynomial::parse("4*x1^3*x2 + 2*x2 + 1", p, 2).unwrap();
        let again = Polynomial::parse(&poly.to_string(), p, 2).unwrap();
        assert_eq!(poly, again);
        assert_eq!(Polynomial::zero(p, 2).to_string(), "0");
    }
}
