use thiserror::Error;

/// Errors raised while building or querying posets, maps, diagrams and complexes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation is not antisymmetric: cycle through `{0}`")]
    Cycle(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("map is not order preserving: {0} <= {1} but images are not related")]
    NotOrderPreserving(String, String),
    #[error("map is not simplicial: image of {0} is not a simplex")]
    NotSimplicial(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("map is not total: no image for `{0}`")]
    PartialMap(String),
    #[error("poset of size {size} exceeds the limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("functoriality fails on ({0}, {1}, {2})")]
    Functoriality(String, String, String),
    #[error("missing fiber over `{0}`")]
    MissingFiber(String),
    #[error("fiber over `{0}` is empty")]
    EmptyFiber(String),
    #[error("missing transition `{0}->{1}`")]
    MissingTransition(String, String),
    #[error("`{0}` is not below `{1}` in the index poset")]
    NotRelated(String, String),
    #[error("naturality fails at `{0}->{1}`")]
    Naturality(String, String),
    #[error("identifier `{0}` contains the reserved separator `::`")]
    ReservedIdentifier(String),
    #[error("poset is empty")]
    EmptyPoset,
    #[error("simplicial complex is empty")]
    EmptyComplex,
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
