//! Graph states, d-uncoverable vertex sets, and matrix criteria for graph codes.

mod coverage;
mod criteria;
mod graph;

pub use coverage::{
    corollary1_build, coverage_witness, graph_to_stabilizer_rows, is_uncoverable, neighborhood,
    odd_neighborhood, uncoverable_family, verify_stabilizer, Cover, UncoverableSet,
    MAX_FAMILY_VERTICES,
};
pub use criteria::{lemma1_check, theorem2_check, MatrixCheck, MatrixCondition, MatrixFailure};
pub use graph::{VertexSet, WeightedGraph, MAX_VERTICES};
