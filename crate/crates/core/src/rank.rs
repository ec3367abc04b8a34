//! Ordering generated candidates, by edit distance to the input or by the
//! likelihood of the rewrite trace that produced them.

use serde::{Deserialize, Serialize};

use crate::distance::{dld, DldVariant};
use crate::error::{Error, Result};
use crate::generate::{Candidate, TraceStep};
use crate::rules::RuleDictionary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Ranker {
    #[default]
    Dld,
    Likelihood,
}


impl std::fmt::Display for Ranker {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ranker::Dld => "dld",
            Ranker::Likelihood => "likelihood",
        })
    }
}

/// A candidate with the score its ranker assigned (edit distance for `Dld`,
/// trace probability for `Likelihood`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scored {
    pub text: String,
    pub score: f64,
}

/// Ranked candidates for one input word.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedSuggestions {
    pub input: String,
    pub ranker: Ranker,
    pub entries: Vec<Scored>,
}

/// Recompute a trace's probability against `dict`: the product of rule
/// probabilities over applied steps (kept characters contribute factor 1).
/// A rule the dictionary no longer contains makes the trace stale.
pub fn likelihood(trace: &[TraceStep], dict: &RuleDictionary) -> Result<f64> {
    let mut product = 1.0;
    for step in trace {
        if let TraceStep::Applied(rule) = step {
            let p = dict.rule_probability(rule).map_err(|_| Error::StaleTrace {
                wrong: rule.wrong.clone(),
                right: rule.right.clone(),
            })?;
            if p == 0.0 {
                return Err(Error::StaleTrace {
                    wrong: rule.wrong.clone(),
                    right: rule.right.clone(),
                });
            }
            product *= p;
        }
    }
    Ok(product)
}

/// Rank ascending by edit distance to `input`; ties prefer higher likelihood,
/// then lexicographic order.
pub fn rank_by_dld(
    cands: &[Candidate],
    input: &str,
    variant: DldVariant,
) -> Result<RankedSuggestions> {
    if cands.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut scored: Vec<(&Candidate, usize)> = cands
        .iter()
        .map(|c| (c, dld(&c.text, input, variant)))
        .collect();
    scored.sort_by(|(a, da), (b, db)| {
        da.cmp(db)
            .then_with(|| b.likelihood.total_cmp(&a.likelihood))
            .then_with(|| a.text.cmp(&b.text))
    });
    Ok(RankedSuggestions {
        input: input.to_string(),
        ranker: Ranker::Dld,
        entries: scored
            .into_iter()
            .map(|(c, d)| Scored {
                text: c.text.clone(),
                score: d as f64,
            })
            .collect(),
    })
}

/// Rank descending by trace likelihood; ties prefer smaller edit distance to
/// `input`, then lexicographic order.
pub fn rank_by_likelihood(
    cands: &[Candidate],
    input: &str,
    variant: DldVariant,
) -> Result<RankedSuggestions> {
    if cands.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut scored: Vec<&Candidate> = cands.iter().collect();
    scored.sort_by(|a, b| {
        b.likelihood
            .total_cmp(&a.likelihood)
            .then_with(|| dld(&a.text, input, variant).cmp(&dld(&b.text, input, variant)))
            .then_with(|| a.text.cmp(&b.text))
    });
    Ok(RankedSuggestions {
        input: input.to_string(),
        ranker: Ranker::Likelihood,
        entries: scored
            .into_iter()
            .map(|c| Scored {
                text: c.text.clone(),
                score: c.likelihood,
            })
            .collect(),
    })
}

/// The first `k` ranked texts (all of them when fewer exist).
pub fn top_k(ranked: &RankedSuggestions, k: usize) -> Vec<String> {
    ranked
        .entries
        .iter()
        .take(k)
        .map(|s| s.text.clone())
        .collect()
}
