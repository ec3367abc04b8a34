//! Text canonicalization applied to every word entering the system.

use crate::error::{Error, Result};

/// Lowercase, strip hyphens, trim, and collapse internal whitespace to single
/// spaces. Operates on Unicode scalar values. A result containing a space is a
/// multi-word string; callers split it into separate tokens.
pub fn preprocess(raw: &str) -> Result<String> {
    let lowered = raw.to_lowercase();
    let dehyphenated: String = lowered.chars().filter(|&c| c != '-').collect();
    let collapsed = dehyphenated.split_whitespace().collect::<Vec<_>>().join(" ");
    if collapsed.is_empty() {
        return Err(Error::EmptyToken);
    }
    Ok(collapsed)
}

/// Preprocess and require a single token (no internal spaces).
pub fn preprocess_word(raw: &str) -> Result<String> {
    let cleaned = preprocess(raw)?;
    if cleaned.contains(' ') {
        return Err(Error::NotSingleWord(cleaned));
    }
    Ok(cleaned)
}
