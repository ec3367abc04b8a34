//! The end-to-end pipeline: train a model, persist it, and normalize words
//! with it.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::corpus::TrainingPair;
use crate::distance::{dld, DldVariant};
use crate::error::{Error, Result};
use crate::fsutil::atomic_write;
use crate::generate::{filter_by_vocabulary, generate, GenerationConfig, Variant};
use crate::rank::{rank_by_dld, rank_by_likelihood, Ranker, Scored};
use crate::rules::{build_dictionary, CountedReplacement, RecordingMode, RuleDictionary};
use crate::text::preprocess_word;
use crate::vocab::Vocabulary;

pub const SCHEMA_VERSION: u64 = 1;

/// Everything configurable about training and inference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelOptions {
    pub k_max: usize,
    pub recording_mode: RecordingMode,
    pub variant: Variant,
    /// Beam width; `None` disables pruning.
    pub cutoff: Option<usize>,
    pub ranker: Ranker,
    pub dld_variant: DldVariant,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions {
            k_max: 2,
            recording_mode: RecordingMode::ShortKey,
            variant: Variant::V1,
            cutoff: Some(default_cutoff(Ranker::Dld)),
            ranker: Ranker::Dld,
            dld_variant: DldVariant::Osa,
        }
    }
}

/// The beam width each ranker was tuned with.
pub fn default_cutoff(ranker: Ranker) -> usize {
    match ranker {
        Ranker::Dld => 100,
        Ranker::Likelihood => 30,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelMetadata {
    pub created_at_unix: u64,
    pub training_pairs: usize,
}

/// A trained normalizer: the learned rule dictionary plus the vocabulary and
/// inference settings. Shared references are safe to use from many threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub dictionary: RuleDictionary,
    pub vocabulary: Vocabulary,
    pub generation: GenerationConfig,
    pub ranker: Ranker,
    pub dld_variant: DldVariant,
    pub metadata: ModelMetadata,
}

/// Build a model from preprocessed pairs.
pub fn train(
    pairs: &[TrainingPair],
    vocabulary: Vocabulary,
    options: &ModelOptions,
) -> Result<Model> {
    let dictionary = build_dictionary(pairs, options.k_max, options.recording_mode)?;
    Ok(Model {
        dictionary,
        vocabulary,
        generation: GenerationConfig {
            variant: options.variant,
            cutoff: options.cutoff,
            k_max: options.k_max,
        },
        ranker: options.ranker,
        dld_variant: options.dld_variant,
        metadata: ModelMetadata {
            created_at_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            training_pairs: pairs.len(),
        },
    })
}

impl Model {
    /// The options this model was trained/configured with.
    pub fn options(&self) -> ModelOptions {
        ModelOptions {
            k_max: self.generation.k_max,
            recording_mode: self.dictionary.mode(),
            variant: self.generation.variant,
            cutoff: self.generation.cutoff,
            ranker: self.ranker,
            dld_variant: self.dld_variant,
        }
    }

    /// Replace the dictionary (e.g. after `add_rule`). The new dictionary
    /// must keep the model's k_max.
    pub fn with_dictionary(mut self, dictionary: RuleDictionary) -> Result<Model> {
        if dictionary.k_max() != self.generation.k_max {
            return Err(Error::KMaxMismatch {
                config: self.generation.k_max,
                dictionary: dictionary.k_max(),
            });
        }
        self.dictionary = dictionary;
        Ok(self)
    }
}

/// Correct one word: generate, filter against the vocabulary, rank, and keep
/// the best `k`. Always returns at least one suggestion because the kept
/// spelling itself is a candidate and an empty vocabulary intersection falls
/// back to the unfiltered list.
pub fn normalize(model: &Model, word: &str, k: usize) -> Result<Vec<Scored>> {
    let cleaned = preprocess_word(word)?;
    let cands = generate(&cleaned, &model.dictionary, &model.generation)?;
    let filtered = filter_by_vocabulary(cands, &model.vocabulary)?;
    let ranked = match model.ranker {
        Ranker::Dld => rank_by_dld(&filtered.candidates, &cleaned, model.dld_variant)?,
        Ranker::Likelihood => {
            rank_by_likelihood(&filtered.candidates, &cleaned, model.dld_variant)?
        }
    };
    Ok(ranked.entries.into_iter().take(k).collect())
}

/// Rank the whole vocabulary by edit distance to `word` (ties alphabetical)
/// and keep the best `k`. The no-learning baseline.
pub fn baseline_nearest_vocab(
    word: &str,
    vocab: &Vocabulary,
    k: usize,
    variant: DldVariant,
) -> Result<Vec<Scored>> {
    if vocab.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let cleaned = preprocess_word(word)?;
    let mut scored: Vec<(usize, &str)> = vocab
        .iter()
        .map(|entry| (dld(&cleaned, entry, variant), entry))
        .collect();
    scored.sort_by(|(da, ta), (db, tb)| da.cmp(db).then_with(|| ta.cmp(tb)));
    Ok(scored
        .into_iter()
        .take(k)
        .map(|(d, t)| Scored {
            text: t.to_string(),
            score: d as f64,
        })
        .collect())
}

// --- persistence -----------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ReplacementFile {
    text: String,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    wrong: String,
    replacements: Vec<ReplacementFile>,
}

#[derive(Serialize, Deserialize)]
struct DictionaryFile {
    k_max: usize,
    recording_mode: RecordingMode,
    entries: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    schema_version: u64,
    dictionary: DictionaryFile,
    vocabulary: Vocabulary,
    generation: GenerationConfig,
    ranker: Ranker,
    dld_variant: DldVariant,
    metadata: ModelMetadata,
}

#[derive(Deserialize)]
struct VersionProbe {
    schema_version: u64,
}

/// Serialize to the versioned JSON wire format. Entries and replacements are
/// emitted sorted, so equal models always produce identical bytes.
pub fn model_to_json(model: &Model) -> Vec<u8> {
    let file = ModelFile {
        schema_version: SCHEMA_VERSION,
        dictionary: DictionaryFile {
            k_max: model.dictionary.k_max(),
            recording_mode: model.dictionary.mode(),
            entries: model
                .dictionary
                .iter()
                .map(|(wrong, replacements)| EntryFile {
                    wrong: wrong.to_string(),
                    replacements: replacements
                        .iter()
                        .map(|r| ReplacementFile {
                            text: r.text.clone(),
                            count: r.count,
                        })
                        .collect(),
                })
                .collect(),
        },
        vocabulary: model.vocabulary.clone(),
        generation: model.generation,
        ranker: model.ranker,
        dld_variant: model.dld_variant,
        metadata: model.metadata.clone(),
    };
    let mut bytes = serde_json::to_vec_pretty(&file).expect("model serialization cannot fail");
    bytes.push(b'\n');
    bytes
}

fn violation(msg: impl Into<String>) -> Error {
    Error::SchemaViolation(msg.into())
}

/// Parse and validate the wire format.
pub fn model_from_json(bytes: &[u8]) -> Result<Model> {
    let probe: VersionProbe = serde_json::from_slice(bytes)?;
    if probe.schema_version != SCHEMA_VERSION {
        return Err(Error::UnsupportedVersion(probe.schema_version));
    }
    let file: ModelFile = serde_json::from_slice(bytes)?;

    let dict = &file.dictionary;
    let mut entries: BTreeMap<String, Vec<CountedReplacement>> = BTreeMap::new();
    let mut prev_key: Option<&str> = None;
    for entry in &dict.entries {
        if entry.wrong.is_empty() {
            return Err(violation("empty rule key"));
        }
        if entry.wrong.chars().count() > dict.k_max {
            return Err(violation(format!(
                "key {:?} is longer than k_max {}",
                entry.wrong, dict.k_max
            )));
        }
        if prev_key.is_some_and(|p| p >= entry.wrong.as_str()) {
            return Err(violation("dictionary entries must be sorted and unique"));
        }
        prev_key = Some(&entry.wrong);
        if entry.replacements.is_empty() {
            return Err(violation(format!("key {:?} has no replacements", entry.wrong)));
        }
        let mut prev_text: Option<&str> = None;
        let mut replacements = Vec::with_capacity(entry.replacements.len());
        for r in &entry.replacements {
            if r.text.is_empty() {
                return Err(violation(format!("key {:?} has an empty replacement", entry.wrong)));
            }
            if r.count == 0 {
                return Err(violation(format!(
                    "rule {:?} -> {:?} has count 0",
                    entry.wrong, r.text
                )));
            }
            if prev_text.is_some_and(|p| p >= r.text.as_str()) {
                return Err(violation(format!(
                    "replacements under {:?} must be sorted and unique",
                    entry.wrong
                )));
            }
            prev_text = Some(&r.text);
            replacements.push(CountedReplacement {
                text: r.text.clone(),
                count: r.count,
            });
        }
        entries.insert(entry.wrong.clone(), replacements);
    }
    let dictionary = RuleDictionary::from_parts(dict.k_max, dict.recording_mode, entries)?;

    if file.generation.k_max != dictionary.k_max() {
        return Err(violation(format!(
            "generation k_max {} does not match dictionary k_max {}",
            file.generation.k_max,
            dictionary.k_max()
        )));
    }
    if file.generation.cutoff == Some(0) {
        return Err(violation("cutoff 0 is not a valid beam width"));
    }
    for word in file.vocabulary.iter() {
        match crate::text::preprocess(word) {
            Ok(clean) if clean == word => {}
            _ => return Err(violation(format!("vocabulary word {word:?} is not preprocessed"))),
        }
    }

    Ok(Model {
        dictionary,
        vocabulary: file.vocabulary,
        generation: file.generation,
        ranker: file.ranker,
        dld_variant: file.dld_variant,
        metadata: file.metadata,
    })
}

/// Atomically write the model to disk.
pub fn save_model(model: &Model, path: &Path) -> Result<()> {
    atomic_write(path, &model_to_json(model))
}

pub fn load_model(path: &Path) -> Result<Model> {
    model_from_json(&std::fs::read(path)?)
}
