//! Damerau-Levenshtein distance over Unicode scalar values, unit costs.
//!
//! Two variants: `Osa` (optimal string alignment, no substring edited twice)
//! and `Unrestricted` (true Damerau-Levenshtein). They differ on inputs like
//! ("ca", "abc"): OSA gives 3, unrestricted gives 2.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DldVariant {
    #[default]
    Osa,
    Unrestricted,
}


impl std::fmt::Display for DldVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DldVariant::Osa => "osa",
            DldVariant::Unrestricted => "unrestricted",
        })
    }
}

pub const ORACLE_LIMIT: usize = 8;

/// Reference implementation straight from the recursive definitions, used to
/// cross-check `dld` in tests. Refuses inputs longer than 8 chars because the
/// recursion is exponential.
pub fn dld_oracle(a: &str, b: &str, variant: DldVariant) -> Result<usize> {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    for len in [a.len(), b.len()] {
        if len > ORACLE_LIMIT {
            return Err(Error::OracleInputTooLong {
                limit: ORACLE_LIMIT,
                len,
            });
        }
    }
    Ok(match variant {
        DldVariant::Osa => osa_rec(&a, &b, a.len(), b.len()),
        DldVariant::Unrestricted => unrestricted_rec(&a, &b, a.len(), b.len()),
    })
}

// d(i, j) over prefix lengths, with a single adjacent-transposition term.
fn osa_rec(a: &[char], b: &[char], i: usize, j: usize) -> usize {
    if i == 0 {
        return j;
    }
    if j == 0 {
        return i;
    }
    let cost = usize::from(a[i - 1] != b[j - 1]);
    let mut best = (osa_rec(a, b, i - 1, j) + 1)
        .min(osa_rec(a, b, i, j - 1) + 1)
        .min(osa_rec(a, b, i - 1, j - 1) + cost);
    if i >= 2 && j >= 2 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
        best = best.min(osa_rec(a, b, i - 2, j - 2) + 1);
    }
    best
}

// Full recursive definition: the transposition term ranges over every pair of
// matching positions, not just the most recent one.
fn unrestricted_rec(a: &[char], b: &[char], i: usize, j: usize) -> usize {
    if i == 0 {
        return j;
    }
    if j == 0 {
        return i;
    }
    let cost = usize::from(a[i - 1] != b[j - 1]);
    let mut best = (unrestricted_rec(a, b, i - 1, j) + 1)
        .min(unrestricted_rec(a, b, i, j - 1) + 1)
        .min(unrestricted_rec(a, b, i - 1, j - 1) + cost);
    for k in 1..i {
        for l in 1..j {
            if a[k - 1] == b[j - 1] && a[i - 1] == b[l - 1] {
                let swap = unrestricted_rec(a, b, k - 1, l - 1) + (i - k - 1) + 1 + (j - l - 1);
                best = best.min(swap);
            }
        }
    }
    best
}

/// Damerau-Levenshtein distance between `a` and `b`.
pub fn dld(a: &str, b: &str, variant: DldVariant) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    match variant {
        DldVariant::Osa => osa(&a, &b),
        DldVariant::Unrestricted => unrestricted(&a, &b),
    }
}

// Rolling three-row DP.
fn osa(a: &[char], b: &[char]) -> usize {
    let (m, n) = (a.len(), b.len());
    if m == 0 {
        return n;
    }
    if n == 0 {
        return m;
    }
    let mut prev2 = vec![0usize; n + 1];
    let mut prev: Vec<usize> = (0..=n).collect();
    let mut cur = vec![0usize; n + 1];
    for i in 1..=m {
        cur[0] = i;
        for j in 1..=n {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            let mut d = (prev[j] + 1) // deletion
                .min(cur[j - 1] + 1) // insertion
                .min(prev[j - 1] + cost); // substitution
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                d = d.min(prev2[j - 2] + 1); // adjacent transposition
            }
            cur[j] = d;
        }
        std::mem::swap(&mut prev2, &mut prev);
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[n]
}

// Lowrance-Wagner: tracks the last row/column where each character matched so
// transposed characters may drift apart.
fn unrestricted(a: &[char], b: &[char]) -> usize {
    let (m, n) = (a.len(), b.len());
    if m == 0 {
        return n;
    }
    if n == 0 {
        return m;
    }
    let maxdist = m + n;
    let mut d = vec![vec![0usize; n + 2]; m + 2];
    d[0][0] = maxdist;
    for i in 0..=m {
        d[i + 1][0] = maxdist;
        d[i + 1][1] = i;
    }
    for j in 0..=n {
        d[0][j + 1] = maxdist;
        d[1][j + 1] = j;
    }
    let mut last_row: HashMap<char, usize> = HashMap::new();
    for i in 1..=m {
        let mut last_col = 0usize;
        for j in 1..=n {
            let k = *last_row.get(&b[j - 1]).unwrap_or(&0);
            let l = last_col;
            let cost = if a[i - 1] == b[j - 1] {
                last_col = j;
                0
            } else {
                1
            };
            d[i + 1][j + 1] = (d[i][j] + cost)
                .min(d[i + 1][j] + 1)
                .min(d[i][j + 1] + 1)
                .min(d[k][l] + (i - k - 1) + 1 + (j - l - 1));
        }
        last_row.insert(a[i - 1], i);
    }
    d[m + 1][n + 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BOTH: [DldVariant; 2] = [DldVariant::Osa, DldVariant::Unrestricted];

    #[test]
    fn oracle_frozen_values() {
        for v in BOTH {
            assert_eq!(dld_oracle("teh", "the", v).unwrap(), 1);
            assert_eq!(dld_oracle("2loy", "tuloy", v).unwrap(), 2);
            assert_eq!(dld_oracle("", "abc", v).unwrap(), 3);
            assert_eq!(dld_oracle("abc", "abc", v).unwrap(), 0);
            assert_eq!(dld_oracle("d2", "dito", v).unwrap(), 3);
        }
        assert_eq!(dld_oracle("ca", "abc", DldVariant::Osa).unwrap(), 3);
        assert_eq!(dld_oracle("ca", "abc", DldVariant::Unrestricted).unwrap(), 2);
    }

    #[test]
    fn frozen_values() {
        for v in BOTH {
            assert_eq!(dld("teh", "the", v), 1);
            assert_eq!(dld("2loy", "tuloy", v), 2);
            assert_eq!(dld("", "abc", v), 3);
            assert_eq!(dld("abc", "", v), 3);
            assert_eq!(dld("", "", v), 0);
            assert_eq!(dld("d2", "dito", v), 3);
            assert_eq!(dld("d2", "doon", v), 3);
        }
        assert_eq!(dld("ca", "abc", DldVariant::Osa), 3);
        assert_eq!(dld("ca", "abc", DldVariant::Unrestricted), 2);
    }

    #[test]
    fn variants_split_only_where_expected() {
        // The unrestricted distance is never larger than OSA.
        for (a, b) in [("ca", "abc"), ("teh", "the"), ("abcdef", "fedcba")] {
            assert!(dld(a, b, DldVariant::Unrestricted) <= dld(a, b, DldVariant::Osa));
        }
    }

    #[test]
    fn unicode_counts_scalars_not_bytes() {
        // Each side is one scalar value, so a single substitution.
        assert_eq!(dld("ñ", "n", DldVariant::Osa), 1);
        assert_eq!(dld("añb", "anb", DldVariant::Osa), 1);
    }

    #[test]
    fn oracle_rejects_long_inputs() {
        let long = "abcdefghi"; // 9 chars
        assert!(matches!(
            dld_oracle(long, "a", DldVariant::Osa),
            Err(Error::OracleInputTooLong { .. })
        ));
        assert!(dld_oracle("abcdefgh", "a", DldVariant::Osa).is_ok());
    }

    proptest! {
        #[test]
        fn symmetric(a in "[a-d]{0,7}", b in "[a-d]{0,7}") {
            for v in BOTH {
                prop_assert_eq!(dld(&a, &b, v), dld(&b, &a, v));
            }
        }

        #[test]
        fn zero_iff_equal(a in "[a-d]{0,7}", b in "[a-d]{0,7}") {
            for v in BOTH {
                prop_assert_eq!(dld(&a, &b, v) == 0, a == b);
            }
        }

        #[test]
        fn bounded_by_longer_length(a in "[a-d]{0,7}", b in "[a-d]{0,7}") {
            let la = a.chars().count();
            let lb = b.chars().count();
            for v in BOTH {
                let d = dld(&a, &b, v);
                prop_assert!(d >= la.abs_diff(lb));
                prop_assert!(d <= la.max(lb));
            }
        }

        #[test]
        fn agrees_with_oracle(a in "[a-c]{0,5}", b in "[a-c]{0,5}") {
            for v in BOTH {
                prop_assert_eq!(dld(&a, &b, v), dld_oracle(&a, &b, v).unwrap());
            }
        }

        #[test]
        fn appending_same_char_never_increases(a in "[a-c]{0,6}", b in "[a-c]{0,6}", c in "[a-c]") {
            let a2 = format!("{a}{c}");
            let b2 = format!("{b}{c}");
            for v in BOTH {
                prop_assert!(dld(&a2, &b2, v) <= dld(&a, &b, v));
            }
        }
    }
}
