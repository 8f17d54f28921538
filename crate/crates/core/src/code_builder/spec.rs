use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp_algebra::Prime;
use crate::logic_fn::LogicFunction;
use crate::state_oracle::{kl_verify, min_distance, Distance, StateVector, VerifyReport};

/// A code given by basis functions `g_i`, each defining `|ψ_i⟩ ∝ Σ ζ^{g_i(x)} |x⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    p: Prime,
    n: usize,
    basis: Vec<LogicFunction>,
    claimed_d: usize,
    provenance: String,
}

#[derive(Serialize, Deserialize)]
struct CodeSpecJson {
    p: u32,
    n: usize,
    #[serde(rename = "K")]
    k: usize,
    claimed_d: usize,
    provenance: String,
    basis: Vec<String>,
}

impl CodeSpec {
    pub fn new(
        basis: Vec<LogicFunction>,
        claimed_d: usize,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let first = basis.first().ok_or_else(|| {
            Error::Precondition("a code needs at least one basis function".into())
        })?;
        let (p, n) = (first.p(), first.n());
        for g in &basis[1..] {
            if g.p() != p {
                return Err(Error::FieldMismatch {
                    left: p.get(),
                    right: g.p().get(),
                });
            }
            if g.n() != n {
                return Err(Error::mismatch(n, g.n()));
            }
        }
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if basis[i] == basis[j] {
                    return Err(Error::Duplicate(format!(
                        "basis functions {} and {} have equal tables",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(CodeSpec {
            p,
            n,
            basis,
            claimed_d,
            provenance: provenance.into(),
        })
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
    pub fn basis(&self) -> &[LogicFunction] {
        &self.basis
    }

    /// `K`, the number of basis states.
    #[inline]
    pub fn claimed_k(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn claimed_d(&self) -> usize {
        self.claimed_d
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn states(&self) -> Vec<StateVector> {
        self.basis
            .iter()
            .map(StateVector::<i64>::from_function)
            .collect()
    }

    /// Runs the oracle on every error of weight `1..=max_weight`.
    pub fn verify(&self, max_weight: usize) -> Result<VerifyReport> {
        kl_verify(&self.states(), max_weight)
    }

    /// Checks the claim: every error of weight below `claimed_d` is detected.
    pub fn verify_claimed(&self) -> Result<VerifyReport> {
        self.verify(self.claimed_d.saturating_sub(1).min(self.n))
    }

    pub fn true_distance(&self, cap: usize) -> Result<Distance> {
        min_distance(&self.states(), cap)
    }

    /// `((n, K, d))_p` notation.
    pub fn params(&self) -> String {
        format!(
            "(({},{},{}))_{}",
            self.n,
            self.claimed_k(),
            self.claimed_d,
            self.p
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_repr()).expect("spec serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_repr()).expect("spec serializes")
    }

    fn to_json_repr(&self) -> CodeSpecJson {
        CodeSpecJson {
            p: self.p.get(),
            n: self.n,
            k: self.claimed_k(),
            claimed_d: self.claimed_d,
            provenance: self.provenance.clone(),
            basis: self.basis.iter().map(LogicFunction::anf_string).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        Self::from_json_value(value)
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let raw: CodeSpecJson = serde_json::from_value(value).map_err(|e| Error::Parse {
            pos: 0,
            msg: e.to_string(),
        })?;
        let p = Prime::new(raw.p)?;
        if raw.k != raw.basis.len() {
            return Err(Error::mismatch(raw.k, raw.basis.len()));
        }
        let basis = raw
            .basis
            .iter()
            .map(|anf| LogicFunction::parse_anf(anf, p, raw.n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(basis, raw.claimed_d, raw.provenance)
    }
}
