use thiserror::Error;

/// Errors raised by the library and surfaced by the CLI and the C ABI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("not a dominant weight (entries must be weakly decreasing): {0}")]
    NotDominant(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("gluing error: {0}")]
    Gluing(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inexact division in the Laurent ring")]
    InexactDivision,
    #[error("cannot tropicalize a term with coefficient {0}")]
    Tropicalization(i64),
    #[error("no value assigned to variable {0}")]
    MissingVariable(String),
    #[error("size {n} exceeds the limit {limit} (pass the override flag to force)")]
    TooLarge { n: usize, limit: usize },
    #[error("entry {0} needs no excavation")]
    EmptySubgraph(String),
    #[error("oracle inconsistency: {0}")]
    Oracle(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
