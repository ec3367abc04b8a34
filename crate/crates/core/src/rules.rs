//! N-gram rewrite rules learned from labeled pairs.
//!
//! Extraction walks a wrong/right word pair with two pointers comparing
//! k-sized windows (clamped at the ends). Matching windows advance both
//! pointers by k and record an identity rule; mismatches advance the wrong
//! pointer by 1, the right pointer by k, and record a rewrite whose key is
//! either the full wrong window (`Literal`) or the single character at the
//! wrong pointer (`ShortKey`). A rule is recorded on every iteration, so the
//! concatenated right sides always rebuild a prefix of the correct word.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::TrainingPair;
use crate::error::{Error, Result};

pub const K_MAX_LIMIT: usize = 4;

/// What the mismatch branch records as the lookup key.
/// `ShortKey` is the default: it keys rewrites by the single wrong character,
/// which is what lets a learned dictionary round-trip shortcuts like
/// "2loy" -> "tuloy" (the literal key "2l" never occurs as a scan window of
/// length 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RecordingMode {
    #[default]
    ShortKey,
    Literal,
}


impl fmt::Display for RecordingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecordingMode::ShortKey => "short_key",
            RecordingMode::Literal => "literal",
        })
    }
}

/// One rewrite: replace `wrong` with `right`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub wrong: String,
    pub right: String,
}

impl Rule {
    pub fn new(wrong: impl Into<String>, right: impl Into<String>) -> Self {
        Rule {
            wrong: wrong.into(),
            right: right.into(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.wrong, self.right)
    }
}

/// Ordered list of rules recorded by one pointer walk over one pair.
pub fn extract_rules(pair: &TrainingPair, k: usize, mode: RecordingMode) -> Result<Vec<Rule>> {
    if k == 0 {
        return Err(Error::ZeroWindow);
    }
    let w: Vec<char> = pair.wrong.chars().collect();
    let r: Vec<char> = pair.correct.chars().collect();
    let mut rules = Vec::new();
    let (mut pw, mut pr) = (0usize, 0usize);
    while pw < w.len() && pr < r.len() {
        let sub_w: String = w[pw..(pw + k).min(w.len())].iter().collect();
        let sub_r: String = r[pr..(pr + k).min(r.len())].iter().collect();
        if sub_w == sub_r {
            rules.push(Rule::new(sub_w, sub_r));
            pw += k;
        } else {
            let key = match mode {
                RecordingMode::Literal => sub_w,
                RecordingMode::ShortKey => w[pw].to_string(),
            };
            rules.push(Rule::new(key, sub_r));
            pw += 1;
        }
        pr += k;
    }
    Ok(rules)
}

/// A replacement string with its observation count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountedReplacement {
    pub text: String,
    pub count: u64,
}

/// Counts of observed rewrites, keyed by wrong substring. Counts stay
/// integers; probabilities are computed on demand so added rules immediately
/// shift the distribution of their key.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleDictionary {
    entries: BTreeMap<String, Vec<CountedReplacement>>,
    k_max: usize,
    mode: RecordingMode,
}

fn check_k_max(k_max: usize) -> Result<()> {
    if (1..=K_MAX_LIMIT).contains(&k_max) {
        Ok(())
    } else {
        Err(Error::InvalidKMax(k_max))
    }
}

impl RuleDictionary {
    pub fn new(k_max: usize, mode: RecordingMode) -> Result<Self> {
        check_k_max(k_max)?;
        Ok(RuleDictionary {
            entries: BTreeMap::new(),
            k_max,
            mode,
        })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn mode(&self) -> RecordingMode {
        self.mode
    }

    /// Number of distinct keys.
    pub fn key_count(&self) -> usize {
        self.entries.len()
    }

    /// Number of distinct (wrong, right) rules.
    pub fn rule_count(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Replacements recorded under `wrong`, sorted by text.
    pub fn replacements(&self, wrong: &str) -> Option<&[CountedReplacement]> {
        self.entries.get(wrong).map(Vec::as_slice)
    }

    /// Keys in sorted order with their replacement lists.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[CountedReplacement])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Conditional probability of rewriting `rule.wrong` as `rule.right`:
    /// its count over the total count under that key. A key that was never
    /// observed is an error (distinct from a present key with an unobserved
    /// replacement, which has probability 0).
    pub fn rule_probability(&self, rule: &Rule) -> Result<f64> {
        let replacements = self
            .entries
            .get(&rule.wrong)
            .ok_or_else(|| Error::UnknownKey(rule.wrong.clone()))?;
        let total: u64 = replacements.iter().map(|r| r.count).sum();
        let count = replacements
            .iter()
            .find(|r| r.text == rule.right)
            .map_or(0, |r| r.count);
        Ok(count as f64 / total as f64)
    }

    fn insert_count(&mut self, wrong: &str, right: &str, count: u64) {
        let replacements = self.entries.entry(wrong.to_string()).or_default();
        match replacements.binary_search_by(|r| r.text.as_str().cmp(right)) {
            Ok(i) => replacements[i].count += count,
            Err(i) => replacements.insert(
                i,
                CountedReplacement {
                    text: right.to_string(),
                    count,
                },
            ),
        }
    }

    /// Return a copy with `rule` observed `count` more times. The wrong side
    /// must fit within k_max or the window scan could never reach it; the
    /// right side may be any non-empty string so that hand-written fixes like
    /// nkk -> nakaka can patch gaps found during error analysis.
    pub fn add_rule(&self, rule: &Rule, count: u64) -> Result<RuleDictionary> {
        if rule.wrong.is_empty() || rule.right.is_empty() {
            return Err(Error::EmptyRuleSide);
        }
        let key_len = rule.wrong.chars().count();
        if key_len > self.k_max {
            return Err(Error::KeyTooLong {
                key: rule.wrong.clone(),
                len: key_len,
                k_max: self.k_max,
            });
        }
        if count == 0 {
            return Err(Error::ZeroCount);
        }
        let mut updated = self.clone();
        updated.insert_count(&rule.wrong, &rule.right, count);
        Ok(updated)
    }

    /// Used by the model loader after it has validated the schema.
    pub(crate) fn from_parts(
        k_max: usize,
        mode: RecordingMode,
        entries: BTreeMap<String, Vec<CountedReplacement>>,
    ) -> Result<Self> {
        check_k_max(k_max)?;
        Ok(RuleDictionary {
            entries,
            k_max,
            mode,
        })
    }
}

/// Extract rules from every pair at every window size 1..=k_max and count
/// them. Counting is order-independent, so any permutation of `pairs` builds
/// the same dictionary.
pub fn build_dictionary(
    pairs: &[TrainingPair],
    k_max: usize,
    mode: RecordingMode,
) -> Result<RuleDictionary> {
    check_k_max(k_max)?;
    if pairs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut dict = RuleDictionary::new(k_max, mode)?;
    for pair in pairs {
        for k in 1..=k_max {
            for rule in extract_rules(pair, k, mode)? {
                dict.insert_count(&rule.wrong, &rule.right, 1);
            }
        }
    }
    Ok(dict)
}

/// Key-wise union of two dictionaries with summed counts. Both must share
/// k_max and recording mode.
pub fn merge_dictionaries(a: &RuleDictionary, b: &RuleDictionary) -> Result<RuleDictionary> {
    if a.k_max != b.k_max || a.mode != b.mode {
        return Err(Error::IncompatibleDictionaries(
            a.k_max,
            b.k_max,
            a.mode.to_string(),
            b.mode.to_string(),
        ));
    }
    let mut merged = a.clone();
    for (wrong, replacements) in &b.entries {
        for r in replacements {
            merged.insert_count(wrong, &r.text, r.count);
        }
    }
    Ok(merged)
}
