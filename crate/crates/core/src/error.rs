use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("configuration error: {0}")]
    Config(String),
    #[error("pole at evaluation point: factor {factor} vanishes")]
    Pole { factor: String },
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("group closure exceeds {0} elements")]
    InfiniteGroup(usize),
    #[error("element is not integral; offending denominators: {0:?}")]
    NotIntegral(Vec<String>),
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("multiple central characters: {0}")]
    MultipleCentralCharacters(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("relation violated: {0}")]
    Relation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
