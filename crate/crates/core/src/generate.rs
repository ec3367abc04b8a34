//! Candidate generation: expand a misspelled word into possible corrections
//! by applying dictionary rewrites at every position.
//!
//! The expansion walks the word left to right. At each position every window
//! of length 1..=k_max (clamped at the end) that is a dictionary key branches
//! into all of its replacements, and a keep-one-char branch is always
//! available, so the identity candidate survives even where rules match.
//! Under `V2`, single-character keys only apply at the word's final letter;
//! because v2 merely removes rule branches, its candidate set is a subset of
//! v1's for the same dictionary and an unbounded cutoff.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rules::{Rule, RuleDictionary};
use crate::vocab::Vocabulary;

/// Generation variant. `V1` applies any matching rule anywhere; `V2`
/// restricts length-1 keys to the final letter, trading recall for a much
/// smaller search space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    V1,
    V2,
}


impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::V1 => "v1",
            Variant::V2 => "v2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationConfig {
    pub variant: Variant,
    /// Beam width: partial candidates kept per expansion depth. `None` means
    /// unbounded.
    pub cutoff: Option<usize>,
    /// Must match the dictionary the config is used with.
    pub k_max: usize,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        GenerationConfig {
            variant: Variant::V1,
            cutoff: Some(100),
            k_max: 2,
        }
    }
}

/// One step of a candidate's derivation.
#[derive(Debug, Clone, PartialEq)]
pub enum TraceStep {
    /// A dictionary rule rewrote its key.
    Applied(Rule),
    /// A character was carried over unchanged (likelihood factor 1).
    Kept(char),
}

/// A generated correction candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub text: String,
    pub trace: Vec<TraceStep>,
    /// Product of rule probabilities along the trace, in (0, 1].
    pub likelihood: f64,
}

#[derive(Debug, Clone)]
struct Partial {
    text: String,
    trace: Vec<TraceStep>,
    likelihood: f64,
    pos: usize,
}

/// Expand `word` into deduplicated candidates ordered by likelihood
/// (descending), ties broken lexicographically.
pub fn generate(
    word: &str,
    dict: &RuleDictionary,
    config: &GenerationConfig,
) -> Result<Vec<Candidate>> {
    if word.is_empty() {
        return Err(Error::EmptyToken);
    }
    if config.cutoff == Some(0) {
        return Err(Error::ZeroCutoff);
    }
    if config.k_max != dict.k_max() {
        return Err(Error::KMaxMismatch {
            config: config.k_max,
            dictionary: dict.k_max(),
        });
    }
    let chars: Vec<char> = word.chars().collect();
    let len = chars.len();

    let mut frontier = vec![Partial {
        text: String::new(),
        trace: Vec::new(),
        likelihood: 1.0,
        pos: 0,
    }];
    let mut completed: Vec<Candidate> = Vec::new();

    while !frontier.is_empty() {
        let mut next: Vec<Partial> = Vec::new();
        for partial in &frontier {
            let pos = partial.pos;
            let mut push = |piece: &str, step: TraceStep, factor: f64, advance: usize| {
                let mut text = partial.text.clone();
                text.push_str(piece);
                let mut trace = partial.trace.clone();
                trace.push(step);
                let child = Partial {
                    text,
                    trace,
                    likelihood: partial.likelihood * factor,
                    pos: pos + advance,
                };
                if child.pos == len {
                    completed.push(Candidate {
                        text: child.text,
                        trace: child.trace,
                        likelihood: child.likelihood,
                    });
                } else {
                    next.push(child);
                }
            };

            // keep branch: carry the character, cost-free
            let kept = chars[pos];
            push(&kept.to_string(), TraceStep::Kept(kept), 1.0, 1);

            let mut prev_end = pos;
            for k in 1..=config.k_max {
                let end = (pos + k).min(len);
                if end == prev_end {
                    break; // window already clamped to the word end
                }
                prev_end = end;
                let window_len = end - pos;
                if config.variant == Variant::V2 && window_len == 1 && pos != len - 1 {
                    continue; // single-char keys only fire on the last letter
                }
                let window: String = chars[pos..end].iter().collect();
                if let Some(replacements) = dict.replacements(&window) {
                    let total: u64 = replacements.iter().map(|r| r.count).sum();
                    for rep in replacements {
                        push(
                            &rep.text,
                            TraceStep::Applied(Rule::new(window.clone(), rep.text.clone())),
                            rep.count as f64 / total as f64,
                            window_len,
                        );
                    }
                }
            }
        }
        next.sort_by(|a, b| {
            b.likelihood
                .total_cmp(&a.likelihood)
                .then_with(|| a.text.cmp(&b.text))
        });
        if let Some(cutoff) = config.cutoff {
            next.truncate(cutoff);
        }
        frontier = next;
    }

    // Deduplicate by text, keeping the highest-likelihood trace.
    let mut by_text: std::collections::HashMap<String, usize> = std::collections::HashMap::new();
    let mut unique: Vec<Candidate> = Vec::new();
    for cand in completed {
        match by_text.get(&cand.text) {
            Some(&i) => {
                if cand.likelihood > unique[i].likelihood {
                    unique[i] = cand;
                }
            }
            None => {
                by_text.insert(cand.text.clone(), unique.len());
                unique.push(cand);
            }
        }
    }
    unique.sort_by(|a, b| {
        b.likelihood
            .total_cmp(&a.likelihood)
            .then_with(|| a.text.cmp(&b.text))
    });
    Ok(unique)
}

/// Candidates surviving the vocabulary filter. When no candidate is a known
/// word the full list is passed through with `fallback` set.
#[derive(Debug, Clone)]
pub struct FilteredCandidates {
    pub candidates: Vec<Candidate>,
    pub fallback: bool,
}

/// Keep candidates that are vocabulary words, preserving order. An empty
/// intersection falls back to the unfiltered list rather than returning
/// nothing.
pub fn filter_by_vocabulary(
    cands: Vec<Candidate>,
    vocab: &Vocabulary,
) -> Result<FilteredCandidates> {
    if cands.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let kept: Vec<Candidate> = cands
        .iter()
        .filter(|c| vocab.contains(&c.text))
        .cloned()
        .collect();
    if kept.is_empty() {
        Ok(FilteredCandidates {
            candidates: cands,
            fallback: true,
        })
    } else {
        Ok(FilteredCandidates {
            candidates: kept,
            fallback: false,
        })
    }
}
