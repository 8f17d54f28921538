//! Code specifications and the constructions that produce them.

mod builders;
mod spec;

pub use builders::{
    build_coset_code, build_matrix_code, build_mds_family, claimed_coset_distance, mds_function,
};
pub use spec::CodeSpec;

/// Largest state dimension for the MDS family; extraction checks `dim x dim` matrices.
pub const MAX_MDS_DIM: usize = 1 << 10;
