//! Spelling normalization for Filipino textspeak.
//!
//! The engine learns character n-gram rewrite rules from labeled pairs of
//! misspelled and corrected words, then proposes corrections for new words
//! by recursively applying those rules and ranking the results. A typical
//! round trip:
//!
//! ```
//! use spellnorm::{
//!     normalize, train, ModelOptions, TrainingPair, Vocabulary,
//! };
//!
//! let pairs = vec![
//!     TrainingPair::new("d2", "dito").unwrap(),
//!     TrainingPair::new("dhil", "dahil").unwrap(),
//! ];
//! let vocab = Vocabulary::from_words(["dito", "dahil"]);
//! let model = train(&pairs, vocab, &ModelOptions::default()).unwrap();
//!
//! let suggestions = normalize(&model, "d2", 5).unwrap();
//! assert_eq!(suggestions[0].text, "dito");
//! ```
//!
//! Trained models serialize to a stable JSON format, and the [`eval`]
//! module adds accuracy metrics, cross validation, and beam width sweeps on
//! top of the pipeline.

pub mod corpus;
pub mod distance;
pub mod error;
pub mod eval;
mod fsutil;
pub mod generate;
pub mod model;
pub mod rank;
pub mod rules;
pub mod text;
pub mod vocab;

pub use corpus::{load_pairs, read_pairs, PairCorpus, SkippedLine, TrainingPair};
pub use distance::{dld, dld_oracle, DldVariant, ORACLE_LIMIT};
pub use error::{Error, Result};
pub use fsutil::atomic_write;
pub use eval::{
    accuracy_at_k, cross_validate, dld_stats, evaluate, sweep_cutoff, CvReport, EvalReport,
    MetricSummary, SweepRow,
};
pub use generate::{
    filter_by_vocabulary, generate, Candidate, FilteredCandidates, GenerationConfig, TraceStep,
    Variant,
};
pub use model::{
    baseline_nearest_vocab, default_cutoff, load_model, model_from_json, model_to_json,
    normalize, save_model, train, Model, ModelMetadata, ModelOptions, SCHEMA_VERSION,
};
pub use rank::{likelihood, rank_by_dld, rank_by_likelihood, top_k, RankedSuggestions, Ranker, Scored};
pub use rules::{
    build_dictionary, extract_rules, merge_dictionaries, CountedReplacement, RecordingMode, Rule,
    RuleDictionary, K_MAX_LIMIT,
};
pub use text::{preprocess, preprocess_word};
pub use vocab::Vocabulary;
