use std::fmt;

use crate::error::{Error, Result};
use crate::fp_algebra::PauliLabel;

use super::OperatorMatrix;

/// `±X_a Z_b` over `F_2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedLabel {
    pub negative: bool,
    pub label: PauliLabel,
}

impl SignedLabel {
    pub fn new(negative: bool, label: PauliLabel) -> Result<Self> {
        if !label.p().is_two() {
            return Err(Error::UnsupportedField(format!(
                "signed labels are defined over F_2 (got F_{})",
                label.p()
            )));
        }
        Ok(SignedLabel { negative, label })
    }

    pub fn positive(label: PauliLabel) -> Result<Self> {
        Self::new(false, label)
    }

    pub fn matrix(&self) -> Result<OperatorMatrix> {
        let m = OperatorMatrix::from_label(&self.label)?;
        Ok(if self.negative { m.scale(&-1) } else { m })
    }
}

impl fmt::Display for SignedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negative { '-' } else { '+' }, self.label)
    }
}

/// `P ∧ Q = (−1)^{a′·b} X_{a+a′} Z_{b+b′}` times both signs: the product of the two operators.
pub fn projector_and(p: &SignedLabel, q: &SignedLabel) -> Result<SignedLabel> {
    let label = p.label.add(&q.label)?;
    let flip = q.label.a().dot(p.label.b())? == 1;
    SignedLabel::new(p.negative ^ q.negative ^ flip, label)
}

/// `P ∨ Q`: the matrix sum. Only meaningful as a projector when `P Q = 0`.
pub fn projector_or(p: &OperatorMatrix, q: &OperatorMatrix) -> Result<OperatorMatrix> {
    p.add(q)
}

/// `I − P`.
pub fn projector_not(p: &OperatorMatrix) -> Result<OperatorMatrix> {
    OperatorMatrix::identity(p.p(), p.n())?.sub(p)
}
