use thiserror::Error;

/// Errors produced by algebra, congruence, CSP and solver operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation `{op}`: {reason}")]
    InvalidTable { op: String, reason: String },

    #[error("unknown operation symbol `{0}`")]
    UnknownOperation(String),

    #[error("operation `{op}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        op: String,
        expected: usize,
        found: usize,
    },

    #[error("element {element} is outside the universe 0..{size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("variable x{index} is not bound (environment has {len} entries)")]
    UnboundVariable { index: usize, len: usize },

    #[error("algebras have different similarity types")]
    SignatureMismatch,

    #[error("partition is not a congruence of the algebra")]
    NotCongruence,

    #[error("set is not closed under the operations")]
    NotClosed,

    #[error("closure of an empty seed was requested")]
    EmptySeed,

    #[error("size {size} exceeds the configured bound {bound}")]
    SizeBound { size: usize, bound: usize },

    #[error("algebra is not a binar (exactly one binary operation)")]
    NotBinar,

    #[error("algebra is not a commutative idempotent binar")]
    NotCib,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("scope index {index} out of range for {len} coordinates or variables")]
    ScopeOutOfRange { index: usize, len: usize },

    #[error("scope {0:?} is not injective")]
    NonInjectiveScope(Vec<usize>),

    #[error("relation is not subdirect: {0}")]
    NotSubdirect(String),

    #[error("search space of {size} assignments exceeds the oracle bound {bound}")]
    SearchSpace { size: u128, bound: u128 },

    #[error("domain of variable {0} became empty")]
    EmptyDomain(usize),

    #[error("relation is not an affine subspace: {0}")]
    NonAffine(String),

    #[error("strategy `{strategy}` does not apply: {reason}")]
    Unsupported {
        strategy: &'static str,
        reason: String,
    },

    #[error("witness re-verification failed: {0}")]
    WitnessRejected(String),

    #[error("iteration bound exhausted: {0}")]
    IterationBound(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
