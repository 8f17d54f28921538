use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp_algebra::{labels_of_weight, FpMatrix, FpVec, PauliLabel};
use crate::graph_codes::theorem2_check;
use crate::logic_fn::{apc_sum_vanishes, LogicFunction, Polynomial};
use crate::projector_codes::{extract_all, shift_generator_matrix};

use super::CodeSpec;

fn check_betas(f: &LogicFunction, betas: &[FpVec]) -> Result<()> {
    if betas.is_empty() {
        return Err(Error::Precondition("at least one shift is required".into()));
    }
    for b in betas {
        if b.p() != f.p() {
            return Err(Error::FieldMismatch {
                left: f.p().get(),
                right: b.p().get(),
            });
        }
        if b.len() != f.n() {
            return Err(Error::mismatch(f.n(), b.len()));
        }
    }
    for i in 0..betas.len() {
        for j in i + 1..betas.len() {
            if betas[i] == betas[j] {
                return Err(Error::Duplicate(format!(
                    "shifts {} and {} are both {}",
                    i + 1,
                    j + 1,
                    betas[i]
                )));
            }
        }
    }
    Ok(())
}

/// All differences `β_i − β_j`, including `0`, without repeats.
fn differences(betas: &[FpVec]) -> Vec<FpVec> {
    let mut out: Vec<FpVec> = Vec::new();
    for bi in betas {
        for bj in betas {
            let d = bi.sub(bj).expect("same shape");
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out
}

/// Smallest weight of a nonidentity label `(u, v)` with a nonvanishing sum at
/// `(u, v + β_i − β_j)` for some `i, j` (`i = j` included), or `n + 1` if none exists.
pub fn claimed_coset_distance(f: &LogicFunction, betas: &[FpVec]) -> Result<usize> {
    check_betas(f, betas)?;
    let diffs = differences(betas);
    for w in 1..=f.n() {
        let hit = labels_of_weight(f.p(), f.n(), w).into_par_iter().any(|e| {
            diffs.iter().any(|d| {
                let shifted = PauliLabel::new(e.a().clone(), e.b().add(d).expect("same shape"))
                    .expect("same shape");
                !apc_sum_vanishes(f, &shifted)
            })
        });
        if hit {
            return Ok(w);
        }
    }
    Ok(f.n() + 1)
}

/// Basis `g_i(x) = f(x) + β_i·x` with the distance from [`claimed_coset_distance`].
pub fn build_coset_code(f: &LogicFunction, betas: &[FpVec]) -> Result<CodeSpec> {
    let d = claimed_coset_distance(f, betas)?;
    let basis = betas
        .iter()
        .map(|b| f.add_affine(b, 0))
        .collect::<Result<Vec<_>>>()?;
    let shifts: Vec<String> = betas.iter().map(FpVec::to_string).collect();
    CodeSpec::new(
        basis,
        d,
        format!(
            "coset-code f={} betas=[{}]",
            f.anf_string(),
            shifts.join(",")
        ),
    )
}

/// Basis `x ↦ f(c, x)` for each `c ∈ F_p^k` in index order, where `f(c, x)` sums
/// `A_ij (c,x)_i (c,x)_j` over `i < j` and the first `k` coordinates are `c`.
/// Terms in `c` alone are constants and are dropped.
pub fn build_matrix_code(a: &FpMatrix, k: usize, d: usize) -> Result<CodeSpec> {
    let check = theorem2_check(a, k, d)?;
    if let Some(fail) = &check.failure {
        return Err(Error::Rejected(format!(
            "matrix criterion fails for E = {:?}: {}",
            fail.e, fail.condition
        )));
    }
    let (p, n) = (a.p(), check.n);
    let c_idx: Vec<usize> = (0..k).collect();
    let x_idx: Vec<usize> = (k..k + n).collect();
    let quad = LogicFunction::quadratic_form(&a.select(&x_idx, &x_idx))?;
    let a_cx = a.select(&c_idx, &x_idx);
    let count = p.checked_dim(k, 1 << 20, "matrix code basis")?;
    let basis = (0..count)
        .map(|ci| {
            let c = FpVec::from_index(p, k, ci);
            let mut beta = vec![0u8; n];
            for (j, b) in beta.iter_mut().enumerate() {
                let s: u32 = (0..k)
                    .map(|i| c.get(i) as u32 * a_cx.get(i, j) as u32)
                    .sum();
                *b = p.reduce(s as i64);
            }
            quad.add_affine(&FpVec::new(p, beta.iter().map(|&v| v as i64))?, 0)
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<String> = (0..a.rows()).map(|r| a.row(r).to_string()).collect();
    CodeSpec::new(
        basis,
        d,
        format!("matrix-code p={p} k={k} d={d} A=[{}]", rows.join(",")),
    )
}

/// `(S + y_{2m−1})(S + y_{2m})` with `S = y_1 + … + y_{2m−2}`.
pub fn mds_function(m: usize) -> Result<LogicFunction> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "m must be at least 2 (got {m})"
        )));
    }
    let n = 2 * m;
    let p = crate::fp_algebra::Prime::TWO;
    p.checked_dim(n, super::MAX_MDS_DIM as u128, "MDS family")?;
    let s = (0..n - 2).fold(Polynomial::zero(p, n), |acc, i| {
        acc.add(&Polynomial::variable(p, n, i))
    });
    let left = s.add(&Polynomial::variable(p, n, n - 2));
    let right = s.add(&Polynomial::variable(p, n, n - 1));
    LogicFunction::from_polynomial(left.mul(&right))
}

/// The `[[2m, 2m − 2, 2]]` family: one extracted quadratic per support point of
/// [`mds_function`], in index order.
pub fn build_mds_family(m: usize) -> Result<CodeSpec> {
    let f = mds_function(m)?;
    let a_f = shift_generator_matrix(&f)?;
    let basis = extract_all(&f, &a_f)?.into_iter().map(|(_, g)| g).collect();
    CodeSpec::new(basis, 2, format!("mds m={m} f={}", f.anf_string()))
}
