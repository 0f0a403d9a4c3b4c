use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degenerate density")]
    DegenerateDensity,
    #[error("grid resolution must be at least 2, got {0}")]
    ResolutionTooSmall(usize),
    #[error("grid resolution mismatch: {left} vs {right}")]
    ResolutionMismatch { left: usize, right: usize },
    #[error("invalid density height {value} at cell {index}")]
    InvalidHeight { index: usize, value: f64 },
    #[error("smoothing quantity must lie in (0, 1), got {0}")]
    NonPositiveSmoothing(f64),
    #[error("divergence must be nonnegative, got {0}")]
    NegativeDivergence(f64),
    #[error("degenerate lexicon entropy range")]
    DegenerateEntropyRange,
    #[error("shape parameters must be positive and finite, got ({a}, {b})")]
    InvalidShape { a: f64, b: f64 },
    #[error("unsupported prior family `{0}`")]
    UnsupportedFamily(String),
    #[error("duplicate adverb `{0}`")]
    DuplicateAdverb(String),
    #[error("lexicon needs at least 2 adverbs, got {0}")]
    LexiconTooSmall(usize),
    #[error("unknown adverb `{0}`")]
    UnknownAdverb(String),
    #[error("cause and effect are the same concept `{0}`")]
    SelfLoop(String),
    #[error("empty {0}")]
    EmptyField(&'static str),
    #[error("expected 3 fields separated by `|`, found {0}")]
    FieldCount(usize),
    #[error("invalid hyperparameter `{name}`: {reason}")]
    InvalidHyperparameter { name: &'static str, reason: String },
    #[error("no scorable causals")]
    NoScorableCausals,
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("inconsistent graph: {0}")]
    InconsistentGraph(String),
}
