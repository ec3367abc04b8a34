use thiserror::Error;

/// Errors surfaced by the library. Contract violations (empty inputs, bad
/// configuration, incompatible dictionaries) are reported here rather than
/// panicking so callers can attach file/line context.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty token after preprocessing")]
    EmptyToken,
    #[error("expected a single word, got {0:?}")]
    NotSingleWord(String),
    #[error("training corpus is empty")]
    EmptyCorpus,
    #[error("window size k must be at least 1")]
    ZeroWindow,
    #[error("k_max must be in 1..=4, got {0}")]
    InvalidKMax(usize),
    #[error("rule sides must be non-empty")]
    EmptyRuleSide,
    #[error("rule key {key:?} is {len} chars, longer than k_max {k_max}")]
    KeyTooLong { key: String, len: usize, k_max: usize },
    #[error("rule count must be positive")]
    ZeroCount,
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("dictionaries are incompatible: k_max {0} vs {1}, mode {2} vs {3}")]
    IncompatibleDictionaries(usize, usize, String, String),
    #[error("cutoff must be at least 1 when bounded")]
    ZeroCutoff,
    #[error("generation config k_max {config} does not match dictionary k_max {dictionary}")]
    KMaxMismatch { config: usize, dictionary: usize },
    #[error("candidate list is empty")]
    EmptyCandidates,
    #[error("stale trace: rule {wrong:?} -> {right:?} is not in the dictionary")]
    StaleTrace { wrong: String, right: String },
    #[error("oracle inputs are limited to {limit} chars, got {len}")]
    OracleInputTooLong { limit: usize, len: usize },
    #[error("vocabulary is empty")]
    EmptyVocabulary,
    #[error("predictions and targets differ in length: {predictions} vs {targets}")]
    LengthMismatch { predictions: usize, targets: usize },
    #[error("no examples to evaluate")]
    NoExamples,
    #[error("need at least 2 folds, got {0}")]
    TooFewFolds(usize),
    #[error("{examples} examples cannot fill {folds} folds")]
    TooFewExamples { examples: usize, folds: usize },
    #[error("no cutoffs given")]
    NoCutoffs,
    #[error("unsupported model schema version {0}")]
    UnsupportedVersion(u64),
    #[error("model file violates the schema: {0}")]
    SchemaViolation(String),
    #[error("malformed model file: {0}")]
    MalformedModel(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
