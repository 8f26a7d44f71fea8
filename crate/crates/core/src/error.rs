use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^31")]
    InvalidModulus(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("quiver has no vertices")]
    EmptyQuiver,

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("malformed relation {index}: {reason}")]
    MalformedRelation { index: usize, reason: String },

    #[error("truncation degree {0} is too small")]
    TruncationTooSmall(usize),

    #[error("path space of dimension {0} exceeds the supported size")]
    TooLarge(usize),

    #[error("structure constants fail the {0} check")]
    InvalidAlgebra(String),

    #[error("vertex {vertex} out of range for {count} vertices")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("invalid module action: {0}")]
    InvalidModule(String),

    #[error("subspace is not invariant under the action")]
    NotInvariant,

    #[error("modules are defined over different algebras")]
    AlgebraMismatch,

    #[error("matrix does not intertwine the module actions")]
    NotHomomorphism,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("spec file: {0}")]
    SpecFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
