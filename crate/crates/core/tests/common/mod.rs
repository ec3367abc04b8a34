//! Seeded synthetic corpora for the acceptance suite. Words are built from
//! common Filipino syllables and abbreviated the way texters do: dropped
//! vowels and digit shorthand.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spellnorm::{TrainingPair, Vocabulary};

const SYLLABLES: &[&str] = &[
    "ka", "na", "ta", "wa", "ma", "pa", "sa", "la", "ba", "ga", "ha", "da", "di", "to", "lo",
    "po", "ko", "mo", "no", "so", "si", "bi", "ki", "ni", "tu", "lu", "pu", "mu", "hin", "lang",
    "yan", "yun",
];

const VOWELS: &[char] = &['a', 'e', 'i', 'o', 'u'];

fn syllable_word(rng: &mut ChaCha8Rng) -> String {
    let count = rng.random_range(2..=4);
    (0..count)
        .map(|_| *SYLLABLES.choose(rng).unwrap())
        .collect()
}

fn drop_vowels_after_first(word: &str) -> String {
    let mut chars = word.chars();
    let first = chars.next().unwrap();
    let rest: String = chars.filter(|c| !VOWELS.contains(c)).collect();
    format!("{first}{rest}")
}

fn drop_one_vowel(word: &str, rng: &mut ChaCha8Rng) -> String {
    let positions: Vec<usize> = word
        .char_indices()
        .skip(1)
        .filter(|(_, c)| VOWELS.contains(c))
        .map(|(i, _)| i)
        .collect();
    match positions.choose(rng) {
        Some(&at) => {
            let mut out = word.to_string();
            out.remove(at);
            out
        }
        None => word.to_string(),
    }
}

fn abbreviate(correct: &str, rng: &mut ChaCha8Rng) -> String {
    let mut word = correct.to_string();
    for _ in 0..rng.random_range(1..=2) {
        word = match rng.random_range(0..4) {
            0 if word.contains("tu") => word.replacen("tu", "2", 1),
            0 if word.contains("to") => word.replacen("to", "2", 1),
            1 => drop_vowels_after_first(&word),
            _ => drop_one_vowel(&word, rng),
        };
    }
    word
}

/// `n` abbreviation pairs drawn deterministically from `seed`.
pub fn textspeak_corpus(seed: u64, n: usize) -> Vec<TrainingPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let correct = syllable_word(&mut rng);
            let wrong = abbreviate(&correct, &mut rng);
            TrainingPair::new(&wrong, &correct).unwrap()
        })
        .collect()
}

pub fn vocabulary_of(pairs: &[TrainingPair]) -> Vocabulary {
    Vocabulary::from_words(pairs.iter().map(|p| p.correct.as_str()))
}

/// A corpus of up to `max_pairs` pairs of short random words over a small
/// alphabet, for property sweeps.
pub fn tiny_corpus(
    rng: &mut ChaCha8Rng,
    max_pairs: usize,
    max_len: usize,
    alphabet: &[char],
) -> Vec<TrainingPair> {
    let word = |rng: &mut ChaCha8Rng| -> String {
        let len = rng.random_range(1..=max_len);
        (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
    };
    let count = rng.random_range(1..=max_pairs);
    (0..count)
        .map(|_| TrainingPair::new(&word(rng), &word(rng)).unwrap())
        .collect()
}

/// A short random word over the same alphabet, for probing trained models.
pub fn tiny_word(rng: &mut ChaCha8Rng, max_len: usize, alphabet: &[char]) -> String {
    let len = rng.random_range(1..=max_len);
    (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
}
