use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },

    #[error("not a subgroup of the ambient group: {0}")]
    SubgroupMismatch(String),

    #[error("internal consistency check failed: {0}")]
    InternalCheckFailed(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),

    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("invalid biset: {0}")]
    InvalidBiset(String),

    #[error("biset is not free on the left: {0}")]
    FreenessViolated(String),

    #[error("functor to the right factor is not faithful")]
    NotRightFaithful,

    #[error("middle groupoids of the tensor product do not match")]
    MiddleMismatch,

    #[error("span endpoints do not match: {0}")]
    EndpointMismatch(String),

    #[error("homomorphism is not injective")]
    NotInjective,

    #[error("tensor product overflows the size bound {bound} (requested object {requested})")]
    OverflowPoisoned { requested: usize, bound: usize },

    #[error("isomorphism classes do not decompose uniquely: {0}")]
    DecompositionNotUnique(String),

    #[error("group not in the Mackey family: {0}")]
    GroupNotInFamily(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("invalid G-object: {0}")]
    InvalidGObject(String),

    #[error("invalid document: {0}")]
    InvalidDocument(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OrderBoundExceeded { .. } => "OrderBoundExceeded",
            Error::SubgroupMismatch(_) => "SubgroupMismatch",
            Error::InternalCheckFailed(_) => "InternalCheckFailed",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::InvalidHomomorphism(_) => "InvalidHomomorphism",
            Error::InvalidGroupoid(_) => "InvalidGroupoid",
            Error::InvalidFunctor(_) => "InvalidFunctor",
            Error::InvalidBiset(_) => "InvalidBiset",
            Error::FreenessViolated(_) => "FreenessViolated",
            Error::NotRightFaithful => "NotRightFaithful",
            Error::MiddleMismatch => "MiddleMismatch",
            Error::EndpointMismatch(_) => "EndpointMismatch",
            Error::NotInjective => "NotInjective",
            Error::OverflowPoisoned { .. } => "OverflowPoisoned",
            Error::DecompositionNotUnique(_) => "DecompositionNotUnique",
            Error::GroupNotInFamily(_) => "GroupNotInFamily",
            Error::InvalidCategory(_) => "InvalidCategory",
            Error::InvalidGObject(_) => "InvalidGObject",
            Error::InvalidDocument(_) => "InvalidDocument",
        }
    }
}
