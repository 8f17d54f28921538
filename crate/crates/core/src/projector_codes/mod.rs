//! Explicit Pauli operator matrices, signed-label projector logic, and codes
//! determined by a Boolean function together with commuting shift generators.

mod logic;
mod operator;
mod premises;

pub use logic::{projector_and, projector_not, projector_or, SignedLabel};
pub use operator::{operator_matrix, OperatorMatrix, MAX_OPERATOR_DIM};
pub use premises::{
    bent_exclusion, build_projector, extract_all, extract_boolean_basis, lemma3_check,
    shift_generator_matrix, Lemma3Premises, Projector, ZsetWitness,
};
