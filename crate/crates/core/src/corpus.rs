//! Labeled training pairs and the tab-separated file format that carries them.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::error::Result;
use crate::text::preprocess_word;

/// One labeled example: a misspelled word and its correction, both already
/// preprocessed single tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrainingPair {
    pub wrong: String,
    pub correct: String,
}

impl TrainingPair {
    /// Build a pair from raw text, preprocessing both sides. Either side
    /// collapsing to empty or to more than one token is an error.
    pub fn new(wrong: &str, correct: &str) -> Result<Self> {
        Ok(TrainingPair {
            wrong: preprocess_word(wrong)?,
            correct: preprocess_word(correct)?,
        })
    }
}

/// A line the loader rejected, with its 1-based line number and the reason.
#[derive(Debug, Clone)]
pub struct SkippedLine {
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for SkippedLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

/// Result of loading a pairs file: the pairs that parsed plus diagnostics for
/// every line that did not.
#[derive(Debug, Clone, Default)]
pub struct PairCorpus {
    pub pairs: Vec<TrainingPair>,
    pub skipped: Vec<SkippedLine>,
}

/// Read `wrong<TAB>correct` lines (no header). Bad lines are reported in
/// `skipped` and do not abort the load.
pub fn read_pairs<R: Read>(reader: R) -> Result<PairCorpus> {
    let mut corpus = PairCorpus::default();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let mut fields = line.split('\t');
        let (wrong, correct) = match (fields.next(), fields.next(), fields.next()) {
            (Some(w), Some(c), None) => (w, c),
            _ => {
                corpus.skipped.push(SkippedLine {
                    line: lineno,
                    reason: format!("expected 2 tab-separated fields, got {:?}", line),
                });
                continue;
            }
        };
        match TrainingPair::new(wrong, correct) {
            Ok(pair) => corpus.pairs.push(pair),
            Err(err) => corpus.skipped.push(SkippedLine {
                line: lineno,
                reason: err.to_string(),
            }),
        }
    }
    Ok(corpus)
}

/// Load a pairs file from disk. See [`read_pairs`].
pub fn load_pairs(path: &Path) -> Result<PairCorpus> {
    read_pairs(File::open(path)?)
}
