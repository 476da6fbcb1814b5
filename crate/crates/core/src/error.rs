use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("empty pattern")]
    EmptyPattern,

    #[error("`{inner}` is a proper subword of `{outer}`")]
    ProperSubword { inner: String, outer: String },

    #[error("overlap does not match the leading monomials")]
    OverlapMismatch,

    #[error("the ideal is the whole algebra")]
    UnitIdeal,

    #[error("quotient is infinite-dimensional")]
    InfiniteQuotient,

    #[error("basis is not a complete Gröbner basis")]
    IncompleteBasis,

    #[error("invalid structure constants: {0}")]
    StructureConstants(String),

    #[error("arity mismatch: operation has arity {operation}, structure constants have arity {constants}")]
    ArityMismatch { operation: usize, constants: usize },

    #[error("product lies outside the span of the basis")]
    OutsideSpan,

    #[error("invalid matrix system: {0}")]
    MatrixSystem(String),

    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),

    #[error("invalid multilinear operation: {0}")]
    Operation(String),

    #[error("{0}")]
    Usage(String),
}
