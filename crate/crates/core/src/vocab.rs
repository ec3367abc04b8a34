//! Known-good word list used to filter generated candidates.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::text::preprocess;

/// Set of valid words. Every member is its own preprocessing fixed point, so
/// membership tests on preprocessed candidates are exact string lookups.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vocabulary {
    words: BTreeSet<String>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Vocabulary::default()
    }

    /// Build from raw words, preprocessing each. Lines that collapse to empty
    /// are dropped; multi-word lines contribute each token; duplicates are
    /// ignored.
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut vocab = Vocabulary::new();
        for raw in words {
            if let Ok(cleaned) = preprocess(raw.as_ref()) {
                for token in cleaned.split(' ') {
                    vocab.words.insert(token.to_string());
                }
            }
        }
        vocab
    }

    /// Read a one-word-per-line file.
    pub fn read<R: Read>(reader: R) -> Result<Self> {
        let mut lines = Vec::new();
        for line in BufReader::new(reader).lines() {
            lines.push(line?);
        }
        Ok(Vocabulary::from_words(lines))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Vocabulary::read(File::open(path)?)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_preprocessed_deduplicated() {
        let vocab = Vocabulary::read("Dito\ndito\nDA-HIL\n\ntuloy\n".as_bytes()).unwrap();
        assert_eq!(vocab.len(), 3);
        assert!(vocab.contains("dito"));
        assert!(vocab.contains("dahil"));
        assert!(vocab.contains("tuloy"));
    }

    #[test]
    fn multi_word_lines_split_into_tokens() {
        let vocab = Vocabulary::read("thank you\n".as_bytes()).unwrap();
        assert!(vocab.contains("thank"));
        assert!(vocab.contains("you"));
        assert_eq!(vocab.len(), 2);
    }

    #[test]
    fn members_are_preprocessing_fixed_points() {
        let vocab = Vocabulary::read("Di-To\n  TULOY  \n".as_bytes()).unwrap();
        for word in vocab.iter() {
            assert_eq!(crate::text::preprocess(word).unwrap(), word);
        }
    }

    #[test]
    fn iteration_is_sorted() {
        let vocab = Vocabulary::from_words(["zebra", "alpha", "mid"]);
        let words: Vec<&str> = vocab.iter().collect();
        assert_eq!(words, vec!["alpha", "mid", "zebra"]);
    }
}
