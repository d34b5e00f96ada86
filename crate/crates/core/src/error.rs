use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("depth {requested} exceeds the cap of {cap}")]
    DepthOverflow { requested: usize, cap: usize },

    #[error("expansion did not terminate within {cap} digits")]
    ExpansionOverflow { cap: usize },

    #[error("operation needs a finite, non-empty sequence")]
    NotFiniteNonEmpty,

    #[error("sequence is not realizable as a Pierce expansion")]
    NotRealizable,

    #[error("invalid digit stream: {0}")]
    InvalidStream(String),

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("expansion of length {len} is shorter than the requested order {order}")]
    ShortExpansion { len: usize, order: usize },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
