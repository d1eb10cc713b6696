use thiserror::Error;

/// Errors raised by the algebra, word, path and variety layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible coefficient rings: {0}")]
    IncompatibleRings(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("letter {letter} outside the alphabet 1..={alphabet}")]
    LetterOutOfRange { letter: usize, alphabet: usize },
    #[error("half-shuffle is undefined on the empty word")]
    HalfShuffleEmptyWord,
    #[error("empty word not allowed here")]
    EmptyWord,
    #[error("{0} is not a Lyndon word")]
    NotLyndon(String),
    #[error("{0} has no standard factorization (single letter)")]
    SingleLetter(String),
    #[error("polynomial has a nonzero constant term")]
    ConstantTerm,
    #[error("coefficients must be rational constants")]
    NonConstantCoefficient,
    #[error("tensor mixes levels; pass an explicit level")]
    MixedLevels,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("insufficient samples: need at least {needed}, got {got}; raise `samples`")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
