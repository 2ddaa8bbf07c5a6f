use thiserror::Error;

/// Errors raised by the field, linear-algebra, scheme and attack layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree {0} is outside the supported range 2..={max}", max = crate::field::MAX_DEGREE)]
    UnsupportedDegree(usize),
    #[error("modulus is malformed: {0}")]
    MalformedModulus(String),
    #[error("modulus is reducible: it has an irreducible factor of degree {witness_degree}")]
    ReducibleModulus { witness_degree: usize },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element has degree {degree}, not reduced modulo a degree-{m} modulus")]
    ElementOutOfField { degree: usize, m: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("rank weight {w} out of range 0..={max}")]
    WeightOutOfRange { w: usize, max: usize },
    #[error("the zero vector has no support decomposition")]
    ZeroVector,
    #[error("basis elements are not linearly independent over F2")]
    DependentBasis,
    #[error("parameter constraint violated: {0}")]
    InvalidParams(String),
    #[error("support-matrix system is inconsistent")]
    InconsistentSystem,
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
    #[error("malformed encoding: {0}")]
    Format(String),
    #[error("key recovery failed after {attempts} attempt(s): {last_failure}")]
    RetriesExhausted {
        attempts: usize,
        last_failure: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
