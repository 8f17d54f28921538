//! Quantum codes from logic functions over `F_p`: APC analysis, graph and matrix
//! criteria, projector constructions, and an exact Knill-Laflamme oracle.

pub mod code_builder;
pub mod error;
pub mod fp_algebra;
pub mod graph_codes;
pub mod logic_fn;
pub mod projector_codes;
pub mod state_oracle;

pub use code_builder::CodeSpec;
pub use error::{Error, Result};

/// Cyclotomic integer with machine-word coefficients.
pub type Cyclo = fp_algebra::CycloInt<i64>;

/// Cyclotomic integer with arbitrary-precision coefficients.
pub type BigCyclo = fp_algebra::CycloInt<num_bigint::BigInt>;

/// State vector with machine-word cyclotomic amplitudes.
pub type State = state_oracle::StateVector<i64>;

/// Dense operator with machine-word cyclotomic entries.
pub type Operator = projector_codes::OperatorMatrix<i64>;
