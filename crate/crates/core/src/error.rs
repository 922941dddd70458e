//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Every point of the shift was excluded; the empty shift is rejected
    /// rather than represented.
    #[error("the presentation defines the empty shift")]
    EmptyShift,

    #[error("word is not in the language of the presentation: {0:?}")]
    WordNotInLanguage(Vec<String>),

    #[error("word of length {len} is shorter than the code window {window}")]
    TooShort { len: usize, window: usize },

    #[error("listing {requested} words exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("operation requires an irreducible presentation")]
    NotIrreducible,

    #[error("operation requires a shift of finite type; {context}")]
    NotSft { context: String },

    #[error("domain is not a subshift of the ambient presentation; witness word {witness:?}")]
    NotSubshift { witness: Vec<String> },

    #[error("{0} is not synchronizing for the presentation")]
    NotSynchronizing(String),

    #[error("no embedding found: tried blow-up levels up to {n_max} and window radius {radius}")]
    EmbeddingNotFound { n_max: usize, radius: usize },

    #[error("construction plan infeasible: {0}")]
    PlanInfeasible(String),

    #[error("1-block extension search failed at block levels up to {level}")]
    ExtensionSearchFailed { level: usize },

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("required condition failed: {condition}{}", witness.as_ref().map(|w| format!("; witness {w}")).unwrap_or_default())]
    ConditionFailed { condition: String, witness: Option<String> },

    #[error("entropy brackets of the two shifts overlap at tolerance {tol}")]
    EntropyTie { tol: f64 },

    #[error("malformed witness: {0}")]
    MalformedWitness(String),

    #[error("subshift is not proper: it equals the ambient shift")]
    NotProper,

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown gallery entry: {0}")]
    UnknownGallery(String),

    #[error("state budget exceeded: {0}")]
    Budget(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
