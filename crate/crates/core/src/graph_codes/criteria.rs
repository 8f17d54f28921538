//! Rank criteria on a symmetric matrix `A` over `C ∪ X` (`|C| = k`, `|X| = n`)
//! for the code spanned by `f(c, ·)`, `c ∈ F_p^k`, to have distance `d`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp_algebra::{combinations, FpMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixCondition {
    /// `rank(A_{EI}) < d − 1`.
    EiRankDeficient,
    /// Some kernel vector of `[A_{IC} | A_{IE}]` has `d^C != 0`.
    KernelTouchesC,
    /// Some kernel vector has `A_{CE} d^E != 0`.
    KernelLeaksToC,
}

impl fmt::Display for MatrixCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixCondition::EiRankDeficient => "(i) rows of A_EI are dependent",
            MatrixCondition::KernelTouchesC => "(ii) A_IC d^C + A_IE d^E = 0 admits d^C != 0",
            MatrixCondition::KernelLeaksToC => {
                "(ii') a kernel vector of [A_IC | A_IE] has A_CE d^E != 0"
            }
        })
    }
}

/// A failing error set `E` (1-based positions in the full matrix) and the condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFailure {
    pub e: Vec<usize>,
    pub condition: MatrixCondition,
    /// Offending kernel vector `(d^C, d^E)`, when the condition is about the kernel.
    pub kernel_vector: Option<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCheck {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub failure: Option<MatrixFailure>,
    pub warning: Option<String>,
}

impl MatrixCheck {
    pub fn accepted(&self) -> bool {
        self.failure.is_none()
    }
}

fn validate(a: &FpMatrix, k: usize, d: usize) -> Result<usize> {
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
    if k > a.rows() {
        return Err(Error::InvalidMatrix(format!(
            "k = {k} exceeds the matrix size {}",
            a.rows()
        )));
    }
    let n = a.rows() - k;
    if d == 0 || d - 1 > n {
        return Err(Error::Precondition(format!(
            "d = {d} must satisfy 1 <= d <= n + 1 = {}",
            n + 1
        )));
    }
    Ok(n)
}

fn warning(n: usize, k: usize, d: usize) -> Option<String> {
    (n + 2 < k + 2 * d).then(|| {
        format!(
            "n = {n} < k + 2d - 2 = {}: parameters exceed the Singleton bound",
            k + 2 * d - 2
        )
    })
}

/// The first failing `E` in lexicographic order, evaluated in parallel.
fn first_failure<F>(n: usize, k: usize, d: usize, check: F) -> Option<MatrixFailure>
where
    F: Fn(&[usize], &[usize]) -> Option<(MatrixCondition, Option<Vec<u8>>)> + Sync,
{
    let x: Vec<usize> = (k..k + n).collect();
    combinations(n, d - 1)
        .into_par_iter()
        .find_map_first(|pick| {
            let e: Vec<usize> = pick.iter().map(|&i| x[i]).collect();
            let i: Vec<usize> = x.iter().copied().filter(|v| !e.contains(v)).collect();
            check(&e, &i).map(|(condition, kernel_vector)| MatrixFailure {
                e: e.iter().map(|v| v + 1).collect(),
                condition,
                kernel_vector,
            })
        })
}

/// For every `E ⊆ X` with `|E| = d − 1` and `I = X ∖ E`:
/// (i) `rank(A_{EI}) = d − 1`, and
/// (ii) `rank([A_{IC} | A_{IE}]) = rank(A_{IE}) + k`, i.e. the kernel forces `d^C = 0`.
pub fn theorem2_check(a: &FpMatrix, k: usize, d: usize) -> Result<MatrixCheck> {
    let n = validate(a, k, d)?;
    let c: Vec<usize> = (0..k).collect();
    let failure = first_failure(n, k, d, |e, i| {
        if a.select(e, i).rank() < d - 1 {
            return Some((MatrixCondition::EiRankDeficient, None));
        }
        let a_ie = a.select(i, e);
        let a_ic = a.select(i, &c);
        let joined = a_ic.hstack(&a_ie).expect("same row count");
        (joined.rank() != a_ie.rank() + k).then_some((MatrixCondition::KernelTouchesC, None))
    });
    Ok(MatrixCheck {
        n,
        k,
        d,
        failure,
        warning: warning(n, k, d),
    })
}

/// Independent kernel-based check: every kernel vector `(d^C, d^E)` of
/// `[A_{IC} | A_{IE}]` has `d^C = 0` and `A_{CE} d^E = 0`, tested on a nullspace basis
/// (both conditions are linear, so the basis decides the whole kernel).
pub fn lemma1_check(a: &FpMatrix, k: usize, d: usize) -> Result<MatrixCheck> {
    let n = validate(a, k, d)?;
    let c: Vec<usize> = (0..k).collect();
    let failure = first_failure(n, k, d, |e, i| {
        let joined = a
            .select(i, &c)
            .hstack(&a.select(i, e))
            .expect("same row count");
        let a_ce = a.select(&c, e);
        for v in joined.nullspace() {
            let (dc, de) = v.split_at(k);
            if dc.iter().any(|&x| x != 0) {
                return Some((MatrixCondition::KernelTouchesC, Some(v)));
            }
            let leak = a_ce.mul_vec(de).expect("shape");
            if leak.iter().any(|&x| x != 0) {
                return Some((MatrixCondition::KernelLeaksToC, Some(v)));
            }
        }
        None
    });
    Ok(MatrixCheck {
        n,
        k,
        d,
        failure,
        warning: warning(n, k, d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_algebra::Prime;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric(rng: &mut ChaCha8Rng, p: Prime, size: usize) -> FpMatrix {
        let mut a = FpMatrix::zeros(p, size, size);
        for i in 0..size {
            for j in i + 1..size {
                let v = rng.gen_range(0..p.get()) as u8;
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        a
    }

    #[test]
    fn zero_matrix_is_rejected() {
        let z = FpMatrix::zeros(Prime::TWO, 4, 4);
        let r = theorem2_check(&z, 0, 2).unwrap();
        assert_eq!(
            r.failure.unwrap().condition,
            MatrixCondition::EiRankDeficient
        );
        let z5 = FpMatrix::zeros(Prime::TWO, 5, 5);
        assert!(!lemma1_check(&z5, 1, 2).unwrap().accepted());
        assert!(!theorem2_check(&z5, 1, 2).unwrap().accepted());
    }

    #[test]
    fn shape_errors() {
        let p = Prime::TWO;
        assert!(theorem2_check(&FpMatrix::zeros(p, 3, 4), 0, 2).is_err());
        assert!(theorem2_check(&FpMatrix::identity(p, 3), 0, 2).is_err());
        assert!(theorem2_check(&FpMatrix::zeros(p, 3, 3), 4, 2).is_err());
        assert!(theorem2_check(&FpMatrix::zeros(p, 3, 3), 1, 4).is_err());
        assert!(theorem2_check(&FpMatrix::zeros(p, 3, 3), 1, 0).is_err());
    }

    #[test]
    fn k4_is_accepted_for_k0() {
        let k4 = FpMatrix::from_digit_rows(Prime::TWO, &["0111", "1011", "1101", "1110"]).unwrap();
        let r = theorem2_check(&k4, 0, 2).unwrap();
        assert!(r.accepted());
        assert!(r.warning.is_none());
        assert!(theorem2_check(&k4, 0, 4).unwrap().warning.is_some());
    }

    #[test]
    fn lemma1_implies_theorem2_kernel_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut accepted = 0;
        for trial in 0..1000 {
            let p = if trial % 2 == 0 {
                Prime::TWO
            } else {
                Prime::THREE
            };
            let size = rng.gen_range(3..=6);
            let k = rng.gen_range(0..=1);
            let a = random_symmetric(&mut rng, p, size);
            let l = lemma1_check(&a, k, 2).unwrap();
            if l.accepted() {
                accepted += 1;
                let t = theorem2_check(&a, k, 2).unwrap();
                assert!(
                    t.failure
                        .is_none_or(|f| f.condition != MatrixCondition::KernelTouchesC),
                    "{a}"
                );
            }
        }
        assert!(accepted > 0);
    }
}
