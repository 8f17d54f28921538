//! Recovering a quadratic function from its shift derivatives.

use crate::error::{Error, Result};
use crate::fp_algebra::{FpMatrix, FpVec, LinearSolution, PointSpace, Prime};

use super::{LogicFunction, Polynomial};

/// One constraint `f(x + alpha) − f(x) = beta·x + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftConstraint {
    pub alpha: FpVec,
    pub beta: FpVec,
    pub t: u8,
}

impl ShiftConstraint {
    pub fn new(alpha: FpVec, beta: FpVec, t: u8) -> Self {
        ShiftConstraint { alpha, beta, t }
    }
}

/// Degree ≤ 2 monomials without constant: linear, cross terms, then squares (odd p only).
fn monomials(p: Prime, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for i in 0..n {
        let mut e = vec![0u8; n];
        e[i] = 1;
        out.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut e = vec![0u8; n];
            e[i] = 1;
            e[j] = 1;
            out.push(e);
        }
    }
    if !p.is_two() {
        for i in 0..n {
            let mut e = vec![0u8; n];
            e[i] = 2;
            out.push(e);
        }
    }
    out
}

fn eval_monomial(p: Prime, exps: &[u8], x: &[u8]) -> u8 {
    exps.iter()
        .zip(x)
        .fold(1u8, |acc, (&e, &v)| p.mul(acc, p.pow(v, e as u32)))
}

/// Finds a quadratic `f` with `f(x + α_i) − f(x) = β_i·x + t_i` for every constraint.
///
/// Over `F_2` this is `f(x) + f(x + α_i) = β_i·x + t_i`. Unknowns are the ANF
/// coefficients of degree 1 and 2; the constant term is normalized to 0. The output
/// is re-evaluated pointwise before it is returned.
pub fn solve_coboundary(
    constraints: &[ShiftConstraint],
    p: Prime,
    n: usize,
) -> Result<LogicFunction> {
    PointSpace::new(p, n)?;
    for c in constraints {
        for v in [&c.alpha, &c.beta] {
            if v.p() != p {
                return Err(Error::FieldMismatch {
                    left: p.get(),
                    right: v.p().get(),
                });
            }
            if v.len() != n {
                return Err(Error::mismatch(n, v.len()));
            }
        }
    }
    if !constraints.is_empty() {
        let alphas: Vec<FpVec> = constraints.iter().map(|c| c.alpha.clone()).collect();
        let rank = FpMatrix::from_rows(p, &alphas)?.rank();
        if rank < constraints.len() {
            return Err(Error::DependentShifts {
                rank,
                count: constraints.len(),
            });
        }
    }

    // Δ_α m(x) = m(x+α) − m(x) is affine for deg m ≤ 2:
    // constant part m(α), coefficient of x_k is m(e_k+α) − m(e_k) − m(α).
    let monos = monomials(p, n);
    let rows = constraints.len() * (n + 1);
    let mut system = FpMatrix::zeros(p, rows, monos.len());
    let mut rhs = vec![0u8; rows];
    for (ci, c) in constraints.iter().enumerate() {
        let alpha = c.alpha.entries();
        let base = ci * (n + 1);
        for (mi, m) in monos.iter().enumerate() {
            let at_alpha = eval_monomial(p, m, alpha);
            system.set(base, mi, at_alpha);
            for k in 0..n {
                let ek = FpVec::unit(p, n, k);
                let shifted = ek.add(&c.alpha)?;
                let v = p.sub(
                    p.sub(
                        eval_monomial(p, m, shifted.entries()),
                        eval_monomial(p, m, ek.entries()),
                    ),
                    at_alpha,
                );
                system.set(base + 1 + k, mi, v);
            }
        }
        rhs[base] = c.t % p.get() as u8;
        rhs[base + 1..base + 1 + n].copy_from_slice(c.beta.entries());
    }

    let coeffs = match system.solve_linear(&rhs)? {
        LinearSolution::Consistent { particular, .. } => particular,
        LinearSolution::Inconsistent => return Err(Error::NoQuadraticSolution),
    };
    let mut poly = Polynomial::zero(p, n);
    for (m, c) in monos.into_iter().zip(coeffs) {
        if c != 0 {
            poly.add_term(m, c);
        }
    }
    let f = LogicFunction::from_polynomial(poly)?;
    check_constraints(&f, constraints)?;
    Ok(f)
}

/// Pointwise check of every constraint on every point.
pub fn check_constraints(f: &LogicFunction, constraints: &[ShiftConstraint]) -> Result<()> {
    let p = f.p();
    let space = PointSpace::new(p, f.n())?;
    for (ci, c) in constraints.iter().enumerate() {
        let shift = space.shift_map(&c.alpha);
        let dots = space.dot_table(&c.beta);
        for x in 0..space.dim {
            let lhs = p.sub(f.value(shift[x] as usize), f.value(x));
            if lhs != p.add(dots[x], c.t) {
                return Err(Error::VerificationMismatch(format!(
                    "constraint {} fails at x = {}",
                    ci + 1,
                    FpVec::from_index(p, f.n(), x)
                )));
            }
        }
    }
    Ok(())
}
