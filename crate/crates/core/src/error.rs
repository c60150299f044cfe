use thiserror::Error;

/// Crate-wide error type. Every fallible operation reports one of these
/// variants; witnesses for failed axiom checks live in the report types of
/// the individual modules, not here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in GF({q})")]
    DivisionByZero { q: usize },
    #[error("invalid field element {index} for GF({q})")]
    InvalidElement { index: usize, q: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial is not monic of degree {expected}")]
    BadModulusDegree { expected: usize },
    #[error("modulus polynomial is reducible over Z_{p}")]
    ReducibleModulus { p: u64 },
    #[error("field too large: {q} elements exceeds the table cap {cap}")]
    FieldTooLarge { q: usize, cap: usize },

    #[error("dimension mismatch: expected {expected} columns, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch between operands")]
    FieldMismatch,

    #[error("ambient space mismatch")]
    AmbientMismatch,
    #[error("invalid dimension {k} for ambient dimension {n}")]
    InvalidDimension { k: usize, n: usize },
    #[error("subspace is not contained in the given space")]
    NotContained,
    #[error("Gram matrix is singular; the bilinear form must be nondegenerate")]
    DegenerateForm,
    #[error("lattice of {count} subspaces exceeds the materialization cap {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("subspace not found in lattice")]
    NotInLattice,

    #[error("rank table does not cover the full lattice")]
    IncompleteTable,
    #[error("family is not the basis family of a q-matroid: axiom {axiom} fails at {witness}")]
    NotAQMatroid { axiom: &'static str, witness: String },
    #[error("reconstructed basis family differs from the input family")]
    BasisMismatch,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("found {count} circuits where the fundamental-circuit lemma requires exactly one")]
    NonUnique { count: usize },

    #[error("the two q-matroids do not share a lattice")]
    LatticeMismatch,

    #[error("feasible family is empty")]
    EmptyFamily,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("X and Y are not orthogonal")]
    NotOrthogonal,
    #[error("expected {expected}-dimensional subspaces in the family")]
    WrongDimensions { expected: usize },
    #[error("construction requires ambient dimension {required}, got {got}")]
    UnsupportedAmbient { required: usize, got: usize },
    #[error("missing certificate: {0}")]
    CertificateMissing(String),

    #[error("codeword length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("C2 is not a subcode of C1")]
    NotNested,
    #[error("generator matrix does not have full rank")]
    NotFullRank,
    #[error("extension tower requires a prime base field, got GF({q})")]
    UnsupportedTower { q: usize },

    #[error("parse error: {0}")]
    Parse(String),
    #[error("search budget must be positive")]
    BudgetZero,
}

pub type Result<T> = std::result::Result<T, Error>;
