use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp_algebra::{labels_of_weight, CycloCoeff, CycloInt, PauliLabel, PointSpace};

use super::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// `⟨ψ_i|E|ψ_j⟩ != 0` for some `i != j`.
    OffdiagNonzero,
    /// `⟨ψ_i|E|ψ_i⟩ != ⟨ψ_0|E|ψ_0⟩`.
    DiagUnequal,
    /// Single state with `⟨ψ|E|ψ⟩ != 0`.
    ExpectationNonzero,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureKind::OffdiagNonzero => "offdiag_nonzero",
            FailureKind::DiagUnequal => "diag_unequal",
            FailureKind::ExpectationNonzero => "expectation_nonzero",
        })
    }
}

/// One failing Gram entry. `a` and `b` are the label halves as digit strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlFailure {
    pub a: String,
    pub b: String,
    pub kind: FailureKind,
    pub i: usize,
    pub j: usize,
}

impl KlFailure {
    fn new(e: &PauliLabel, kind: FailureKind, i: usize, j: usize) -> Self {
        KlFailure {
            a: e.a().to_string(),
            b: e.b().to_string(),
            kind,
            i,
            j,
        }
    }
}

/// Result of checking the Knill–Laflamme conditions up to `max_weight`.
///
/// For `K > 1` the identity label is checked too, so a non-orthogonal basis is
/// reported as `offdiag_nonzero` on `(0|0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub p: u32,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub max_weight: usize,
    pub verdict: Verdict,
    pub failures: Vec<KlFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })
    }
}

/// Smallest weight at which the KL conditions fail, or a bound when none fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    AboveCap(usize),
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AboveCap(c) => write!(f, "> {c}"),
        }
    }
}

/// Precomputed data for Gram matrices of a fixed basis.
struct Oracle<'a, T> {
    basis: &'a [StateVector<T>],
    phases: Option<Vec<Vec<u8>>>,
    space: PointSpace,
}

impl<'a, T: CycloCoeff> Oracle<'a, T> {
    fn new(basis: &'a [StateVector<T>]) -> Result<Self> {
        let first = basis
            .first()
            .ok_or_else(|| Error::Precondition("empty basis".into()))?;
        for s in &basis[1..] {
            first.check_same_space(s)?;
        }
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if basis[i] == basis[j] {
                    return Err(Error::Duplicate(format!("basis states {i} and {j}")));
                }
            }
        }
        let phases = basis.iter().map(StateVector::phase_exponents).collect();
        Ok(Oracle {
            basis,
            phases,
            space: PointSpace {
                p: first.p(),
                n: first.n(),
                dim: first.dim(),
            },
        })
    }

    /// `G[i][j] = ⟨ψ_i|E|ψ_j⟩`.
    fn gram(&self, e: &PauliLabel) -> Vec<Vec<CycloInt<T>>> {
        let k = self.basis.len();
        match &self.phases {
            Some(ph) => {
                // phase states: ⟨ψ_i|E|ψ_j⟩ = Σ_x ζ^{e_j(x) + b·x − e_i(x+a)}
                let p = self.space.p;
                let shift = self.space.shift_map(e.a());
                let dots = self.space.dot_table(e.b());
                (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| {
                                let mut hist = vec![0u64; p.as_usize()];
                                for x in 0..self.space.dim {
                                    let ex =
                                        p.sub(p.add(ph[j][x], dots[x]), ph[i][shift[x] as usize]);
                                    hist[ex as usize] += 1;
                                }
                                CycloInt::from_histogram(p, &hist)
                            })
                            .collect()
                    })
                    .collect()
            }
            None => {
                let moved: Vec<StateVector<T>> = self
                    .basis
                    .iter()
                    .map(|s| s.apply_error(e).expect("label checked"))
                    .collect();
                self.basis
                    .iter()
                    .map(|si| {
                        moved
                            .iter()
                            .map(|mj| si.inner_product(mj).expect("same space"))
                            .collect()
                    })
                    .collect()
            }
        }
    }

    fn failures(&self, e: &PauliLabel) -> Vec<KlFailure> {
        let g = self.gram(e);
        let k = g.len();
        if k == 1 {
            return if g[0][0].is_zero() {
                Vec::new()
            } else {
                vec![KlFailure::new(e, FailureKind::ExpectationNonzero, 0, 0)]
            };
        }
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if !g[i][j].is_zero() {
                    out.push(KlFailure::new(e, FailureKind::OffdiagNonzero, i, j));
                }
            }
        }
        for j in 1..k {
            if g[j][j] != g[0][0] {
                out.push(KlFailure::new(e, FailureKind::DiagUnequal, 0, j));
            }
        }
        out
    }

    fn check_label(&self, e: &PauliLabel) -> Result<()> {
        if e.p() != self.space.p {
            return Err(Error::FieldMismatch {
                left: self.space.p.get(),
                right: e.p().get(),
            });
        }
        if e.n() != self.space.n {
            return Err(Error::mismatch(self.space.n, e.n()));
        }
        Ok(())
    }

    fn orthogonality_failures(&self) -> Vec<KlFailure> {
        if self.basis.len() == 1 {
            return Vec::new();
        }
        let id = PauliLabel::identity(self.space.p, self.space.n);
        self.failures(&id)
            .into_iter()
            .filter(|f| f.kind == FailureKind::OffdiagNonzero)
            .collect()
    }
}

/// Gram matrix `⟨ψ_i|X_a Z_b|ψ_j⟩` of a basis for one label.
pub fn gram_matrix<T: CycloCoeff>(
    basis: &[StateVector<T>],
    e: &PauliLabel,
) -> Result<Vec<Vec<CycloInt<T>>>> {
    let oracle = Oracle::new(basis)?;
    oracle.check_label(e)?;
    Ok(oracle.gram(e))
}

/// Checks every label of weight `1..=max_weight`.
///
/// With one state the criterion is a vanishing expectation; with several, every Gram
/// matrix must be diagonal with equal entries. Failures come out in label order.
pub fn kl_verify<T: CycloCoeff>(
    basis: &[StateVector<T>],
    max_weight: usize,
) -> Result<VerifyReport> {
    let oracle = Oracle::new(basis)?;
    let n = oracle.space.n;
    if max_weight > n {
        return Err(Error::Precondition(format!(
            "max_weight {max_weight} exceeds n = {n}"
        )));
    }
    let mut failures = oracle.orthogonality_failures();
    for w in 1..=max_weight {
        let labels = labels_of_weight(oracle.space.p, n, w);
        let per_label: Vec<Vec<KlFailure>> =
            labels.par_iter().map(|e| oracle.failures(e)).collect();
        failures.extend(per_label.into_iter().flatten());
    }
    Ok(VerifyReport {
        p: oracle.space.p.get(),
        n,
        k: basis.len(),
        max_weight,
        verdict: if failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        failures,
    })
}

/// Smallest `w >= 1` at which [`kl_verify`] fails, searching up to `cap`.
pub fn min_distance<T: CycloCoeff>(basis: &[StateVector<T>], cap: usize) -> Result<Distance> {
    let oracle = Oracle::new(basis)?;
    if let Some(f) = oracle.orthogonality_failures().first() {
        return Err(Error::NonOrthogonalBasis { i: f.i, j: f.j });
    }
    let cap = cap.min(oracle.space.n);
    for w in 1..=cap {
        let labels = labels_of_weight(oracle.space.p, oracle.space.n, w);
        if labels.par_iter().any(|e| !oracle.failures(e).is_empty()) {
            return Ok(Distance::Exact(w));
        }
    }
    Ok(Distance::AboveCap(cap))
}

/// First failing label of weight exactly `w`, in enumeration order.
pub fn first_failure<T: CycloCoeff>(
    basis: &[StateVector<T>],
    w: usize,
) -> Result<Option<KlFailure>> {
    let oracle = Oracle::new(basis)?;
    let labels = labels_of_weight(oracle.space.p, oracle.space.n, w);
    Ok(labels
        .par_iter()
        .find_map_first(|e| oracle.failures(e).into_iter().next()))
}
