use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime (must be prime and at most 13)")]
    InvalidPrime(u32),

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("capacity exceeded: {what} ({size} > {limit})")]
    Capacity {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("variable index {index} out of range 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("shift vectors are linearly dependent (rank {rank} of {count})")]
    DependentShifts { rank: usize, count: usize },

    #[error("no quadratic solution exists for the coboundary system")]
    NoQuadraticSolution,

    #[error("duplicate entry: {0}")]
    Duplicate(String),

    #[error("construction rejected: {0}")]
    Rejected(String),

    #[error("verification mismatch: {0}")]
    VerificationMismatch(String),

    #[error("basis states are not pairwise orthogonal ({i}, {j})")]
    NonOrthogonalBasis { i: usize, j: usize },
}

impl Error {
    pub(crate) fn mismatch(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
