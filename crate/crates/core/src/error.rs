//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised while building lattices or assembling complexes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a lattice: elements {0} and {1} have no {2}")]
    NotALattice(String, String, &'static str),

    #[error("not graded: {0}")]
    NotGraded(String),

    #[error("not geometric: {axiom} fails at {witness}")]
    NotGeometric { axiom: &'static str, witness: String },

    #[error("matroid axiom violated: {0}")]
    MatroidAxiom(String),

    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),

    #[error("element {0} is not in the open interior of the interval")]
    NotInterior(usize),

    #[error("size guard exceeded: {what} exceeds the cap of {limit}")]
    SizeGuardExceeded { what: &'static str, limit: usize },

    #[error("EL verification failed on interval [{0}, {1}]")]
    ElVerificationFailed(usize, usize),

    #[error("degree of entry [{0}, {1}] exceeds the rank of the interval")]
    DegreeExceedsRank(usize, usize),

    #[error("incidence polynomials live on different posets")]
    HostMismatch,

    #[error("not a kernel: the identity fails on interval [{0}, {1}]")]
    KernelCheckFailed(usize, usize),

    #[error("recursion produced an inconsistent solution on interval [{0}, {1}]")]
    RecursionInconsistent(usize, usize),

    #[error("rewriting did not terminate within {0} steps")]
    LoopCapExceeded(usize),

    #[error("inequality and lattice-path membership tests disagree on {0}")]
    CharacterizationMismatch(String),

    #[error("differential leaves the subcomplex at {0}")]
    SubcomplexViolation(String),

    #[error("d^2 is nonzero in degree {0}")]
    DSquareNonzero(i64),

    #[error("cohomology of {variant} at weight {weight} appears in degree {degree} (expected {expected})")]
    ConcentrationFailure {
        variant: String,
        weight: usize,
        degree: i64,
        expected: String,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
