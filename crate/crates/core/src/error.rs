use thiserror::Error;

/// Errors raised by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operation requires a field, got {0}")]
    NonFieldRing(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("missing value for variable `{0}`")]
    MissingVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a complex: d∘d ≠ 0 starting at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("not a chain map: commutativity fails at degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("not a cocycle: the Hom differential is nonzero at source degree {degree}")]
    NotACocycle { degree: i64 },
    #[error("unsupported module for tensor product: {0}")]
    UnsupportedModule(String),
    #[error("unsupported ring for this operation: {0}")]
    UnsupportedRing(String),
    #[error("unsupported embedding: {0}")]
    UnsupportedEmbedding(String),
    #[error("not a degreewise split extension: {0}")]
    NotExtension(String),
    #[error("map is not a quasi-isomorphism")]
    NotQiso,
    #[error("differentials are not constant, complex is not base-changed from the coefficient field")]
    NotBaseChanged,
    #[error("empty family of coefficient maps")]
    EmptyFamily,
    #[error("no trivializing point found after {trials} trials (either no linear combination is a quasi-isomorphism or the sample set is too small; the search cannot tell which)")]
    NoPointFound { trials: usize },
    #[error("sample bound {bound} exceeds the field size {size}")]
    FieldTooSmall { bound: u64, size: u64 },
    #[error("input is not a quasi-isomorphism: the cone is not exact at the generic point")]
    NotQisoInput,
    #[error("cannot parse scalar `{text}`: {reason}")]
    ScalarSyntax { text: String, reason: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
