//! Exact state vectors and the Knill–Laflamme referee.

mod state;
mod verify;

pub use state::{apply_error, inner_product, state_from_function, StateVector};
pub use verify::{
    first_failure, gram_matrix, kl_verify, min_distance, Distance, FailureKind, KlFailure, Verdict,
    VerifyReport,
};
