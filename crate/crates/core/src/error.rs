use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("invalid level assignment: {0}")]
    InvalidLevel(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("arity error: expected {expected} pieces, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("unsupported structure: {0}")]
    Unsupported(String),
    #[error("rank error: {0}")]
    Rank(String),
    #[error("graph mismatch: {0}")]
    GraphMismatch(String),
    #[error("invalid tubing: {0}")]
    InvalidTubing(String),
    #[error("invalid representative: {0}")]
    InvalidRepresentative(String),
    #[error("invalid shuffle: {0}")]
    InvalidShuffle(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable name, surfaced by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::KindMismatch(_) => "kind-mismatch",
            Error::InvalidLevel(_) => "invalid-level",
            Error::Structural(_) => "structural-error",
            Error::Arity { .. } => "arity-error",
            Error::Unsupported(_) => "unsupported-structure",
            Error::Rank(_) => "rank-error",
            Error::GraphMismatch(_) => "graph-mismatch",
            Error::InvalidTubing(_) => "invalid-tubing",
            Error::InvalidRepresentative(_) => "invalid-representative",
            Error::InvalidShuffle(_) => "invalid-shuffle",
            Error::Parse(_) => "parse-error",
        }
    }
}
