use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad input from the caller: unknown labels, wrong dimensions, weights
    /// outside the domain of an operation.
    #[error("usage error: {0}")]
    Usage(String),
    /// Hard-coded case data failed one of its structural checks.
    #[error("case data error: {0}")]
    CaseData(String),
    /// A computed quantity violated an invariant that must hold by theory,
    /// e.g. the lambda norm disagreeing between two allowable chambers.
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
