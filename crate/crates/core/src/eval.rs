//! Offline evaluation: accuracy and distance metrics, cross validation, and
//! beam cutoff sweeps.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::TrainingPair;
use crate::distance::dld;
use crate::error::{Error, Result};
use crate::model::{normalize, train, Model, ModelOptions};
use crate::vocab::Vocabulary;

/// Metrics from one pass over a labeled test set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalReport {
    pub examples: usize,
    /// Fraction of examples whose target appears in the top k suggestions,
    /// for k in {1, 3, 5}.
    pub accuracy_at: BTreeMap<usize, f64>,
    /// Mean over examples of the best top-5 distance to the target.
    pub dld_min: f64,
    /// Mean over examples of the average top-5 distance to the target.
    pub dld_mean: f64,
    /// Mean over examples of the worst top-5 distance to the target.
    pub dld_max: f64,
    pub mean_inference_seconds: f64,
    pub config: ModelOptions,
}

pub const ACCURACY_KS: [usize; 3] = [1, 3, 5];

/// Fraction of examples whose target is among the first `k` predictions.
pub fn accuracy_at_k(predictions: &[Vec<String>], targets: &[String], k: usize) -> Result<f64> {
    if predictions.len() != targets.len() {
        return Err(Error::LengthMismatch {
            predictions: predictions.len(),
            targets: targets.len(),
        });
    }
    if targets.is_empty() {
        return Err(Error::NoExamples);
    }
    let hits = predictions
        .iter()
        .zip(targets)
        .filter(|(preds, target)| preds.iter().take(k).any(|p| p == *target))
        .count();
    Ok(hits as f64 / targets.len() as f64)
}

/// Distance-to-target statistics over the top five predictions. Per example
/// the best, average, and worst distance are taken; the three numbers
/// returned are their means across examples.
pub fn dld_stats(
    predictions: &[Vec<String>],
    targets: &[String],
    variant: crate::distance::DldVariant,
) -> Result<(f64, f64, f64)> {
    if predictions.len() != targets.len() {
        return Err(Error::LengthMismatch {
            predictions: predictions.len(),
            targets: targets.len(),
        });
    }
    if targets.is_empty() {
        return Err(Error::NoExamples);
    }
    let mut best_sum = 0.0;
    let mut avg_sum = 0.0;
    let mut worst_sum = 0.0;
    for (preds, target) in predictions.iter().zip(targets) {
        if preds.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        let distances: Vec<usize> = preds
            .iter()
            .take(5)
            .map(|p| dld(p, target, variant))
            .collect();
        best_sum += *distances.iter().min().unwrap() as f64;
        worst_sum += *distances.iter().max().unwrap() as f64;
        avg_sum += distances.iter().sum::<usize>() as f64 / distances.len() as f64;
    }
    let n = targets.len() as f64;
    Ok((best_sum / n, avg_sum / n, worst_sum / n))
}

/// Run the model over a test set and compute the full report. A first
/// untimed pass warms caches; the timed pass follows.
pub fn evaluate(model: &Model, pairs: &[TrainingPair]) -> Result<EvalReport> {
    if pairs.is_empty() {
        return Err(Error::NoExamples);
    }
    for pair in pairs {
        normalize(model, &pair.wrong, 5)?;
    }

    let mut predictions = Vec::with_capacity(pairs.len());
    let mut elapsed = 0.0;
    for pair in pairs {
        let start = Instant::now();
        let suggestions = normalize(model, &pair.wrong, 5)?;
        elapsed += start.elapsed().as_secs_f64();
        predictions.push(suggestions.into_iter().map(|s| s.text).collect::<Vec<_>>());
    }
    let targets: Vec<String> = pairs.iter().map(|p| p.correct.clone()).collect();

    let mut accuracy_at = BTreeMap::new();
    for k in ACCURACY_KS {
        accuracy_at.insert(k, accuracy_at_k(&predictions, &targets, k)?);
    }
    let (dld_min, dld_mean, dld_max) = dld_stats(&predictions, &targets, model.dld_variant)?;

    Ok(EvalReport {
        examples: pairs.len(),
        accuracy_at,
        dld_min,
        dld_mean,
        dld_max,
        mean_inference_seconds: elapsed / pairs.len() as f64,
        config: model.options(),
    })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MetricSummary {
    pub mean: f64,
    /// Population standard deviation across folds.
    pub std_dev: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CvReport {
    pub fold_count: usize,
    pub seed: u64,
    pub folds: Vec<EvalReport>,
    pub summary: BTreeMap<String, MetricSummary>,
}

/// Split `n` shuffled indices into contiguous folds. The first `n % folds`
/// folds get the extra element.
fn fold_sizes(n: usize, folds: usize) -> Vec<usize> {
    let base = n / folds;
    (0..folds).map(|i| base + usize::from(i < n % folds)).collect()
}

fn population_std(values: &[f64], mean: f64) -> f64 {
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / values.len() as f64;
    var.sqrt()
}

fn summarize(folds: &[EvalReport]) -> BTreeMap<String, MetricSummary> {
    let mut summary = BTreeMap::new();
    let mut add = |name: &str, values: Vec<f64>| {
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        summary.insert(
            name.to_string(),
            MetricSummary {
                mean,
                std_dev: population_std(&values, mean),
            },
        );
    };
    for k in ACCURACY_KS {
        add(
            &format!("accuracy_at_{k}"),
            folds.iter().map(|f| f.accuracy_at[&k]).collect(),
        );
    }
    add("dld_min", folds.iter().map(|f| f.dld_min).collect());
    add("dld_mean", folds.iter().map(|f| f.dld_mean).collect());
    add("dld_max", folds.iter().map(|f| f.dld_max).collect());
    add(
        "mean_inference_seconds",
        folds.iter().map(|f| f.mean_inference_seconds).collect(),
    );
    summary
}

/// Seeded k-fold cross validation. The corpus is shuffled once with the
/// given seed, split into contiguous folds, and each fold in turn is held
/// out while a model is trained on the rest.
pub fn cross_validate(
    pairs: &[TrainingPair],
    vocabulary: &Vocabulary,
    options: &ModelOptions,
    folds: usize,
    seed: u64,
) -> Result<CvReport> {
    if folds < 2 {
        return Err(Error::TooFewFolds(folds));
    }
    if pairs.len() < folds {
        return Err(Error::TooFewExamples {
            examples: pairs.len(),
            folds,
        });
    }

    let mut indices: Vec<usize> = (0..pairs.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    indices.shuffle(&mut rng);

    let sizes = fold_sizes(pairs.len(), folds);
    let mut reports = Vec::with_capacity(folds);
    let mut start = 0;
    for size in sizes {
        let held_out = &indices[start..start + size];
        start += size;
        let test: Vec<TrainingPair> = held_out.iter().map(|&i| pairs[i].clone()).collect();
        let train_set: Vec<TrainingPair> = indices
            .iter()
            .filter(|i| !held_out.contains(i))
            .map(|&i| pairs[i].clone())
            .collect();
        let model = train(&train_set, vocabulary.clone(), options)?;
        reports.push(evaluate(&model, &test)?);
    }

    let summary = summarize(&reports);
    Ok(CvReport {
        fold_count: folds,
        seed,
        folds: reports,
        summary,
    })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SweepRow {
    pub cutoff: usize,
    pub accuracy_at_1: f64,
    pub mean_inference_seconds: f64,
}

/// Measure the accuracy/latency trade-off of the beam width. The model is
/// trained once; each cutoff only changes the generation settings.
pub fn sweep_cutoff(
    train_pairs: &[TrainingPair],
    test_pairs: &[TrainingPair],
    vocabulary: &Vocabulary,
    options: &ModelOptions,
    cutoffs: &[usize],
) -> Result<Vec<SweepRow>> {
    if cutoffs.is_empty() {
        return Err(Error::NoCutoffs);
    }
    if cutoffs.contains(&0) {
        return Err(Error::ZeroCutoff);
    }
    let base = train(train_pairs, vocabulary.clone(), options)?;
    let mut rows = Vec::with_capacity(cutoffs.len());
    for &cutoff in cutoffs {
        let mut model = base.clone();
        model.generation.cutoff = Some(cutoff);
        let report = evaluate(&model, test_pairs)?;
        rows.push(SweepRow {
            cutoff,
            accuracy_at_1: report.accuracy_at[&1],
            mean_inference_seconds: report.mean_inference_seconds,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::DldVariant;

    fn pair(wrong: &str, correct: &str) -> TrainingPair {
        TrainingPair::new(wrong, correct).unwrap()
    }

    fn owned(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn accuracy_counts_hits_within_k() {
        let predictions = vec![owned(&["dito", "doon"]), owned(&["doon", "dahil"])];
        let targets = owned(&["dito", "dahil"]);
        assert_eq!(accuracy_at_k(&predictions, &targets, 1).unwrap(), 0.5);
        assert_eq!(accuracy_at_k(&predictions, &targets, 3).unwrap(), 1.0);
    }

    #[test]
    fn accuracy_validates_its_inputs() {
        let preds = vec![owned(&["a"])];
        assert!(matches!(
            accuracy_at_k(&preds, &[], 1),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            accuracy_at_k(&[], &[], 1),
            Err(Error::NoExamples)
        ));
    }

    #[test]
    fn dld_stats_on_a_single_example() {
        let predictions = vec![owned(&["dito", "dto"])];
        let targets = owned(&["dito"]);
        let (min, mean, max) = dld_stats(&predictions, &targets, DldVariant::Osa).unwrap();
        assert_eq!((min, mean, max), (0.0, 0.5, 1.0));
    }

    #[test]
    fn dld_stats_only_looks_at_the_top_five() {
        let predictions = vec![owned(&["a", "a", "a", "a", "a", "zzzzzz"])];
        let targets = owned(&["a"]);
        let (min, mean, max) = dld_stats(&predictions, &targets, DldVariant::Osa).unwrap();
        assert_eq!((min, mean, max), (0.0, 0.0, 0.0));
    }

    fn sample_corpus() -> (Vec<TrainingPair>, Vocabulary) {
        let pairs = vec![
            pair("d2", "dito"),
            pair("dhil", "dahil"),
            pair("2loy", "tuloy"),
            pair("aq", "ako"),
            pair("lng", "lang"),
            pair("kc", "kasi"),
            pair("dto", "dito"),
            pair("s2", "sito"),
            pair("un", "yun"),
            pair("nman", "naman"),
        ];
        let vocab = Vocabulary::from_words([
            "dito", "dahil", "tuloy", "ako", "lang", "kasi", "sito", "yun", "naman",
        ]);
        (pairs, vocab)
    }

    #[test]
    fn evaluate_produces_a_coherent_report() {
        let (pairs, vocab) = sample_corpus();
        let model = train(&pairs, vocab, &ModelOptions::default()).unwrap();
        let report = evaluate(&model, &pairs).unwrap();
        assert_eq!(report.examples, pairs.len());
        let a1 = report.accuracy_at[&1];
        let a3 = report.accuracy_at[&3];
        let a5 = report.accuracy_at[&5];
        assert!(a1 <= a3 && a3 <= a5, "{a1} {a3} {a5}");
        assert!((0.0..=1.0).contains(&a5));
        assert!(report.dld_min <= report.dld_mean && report.dld_mean <= report.dld_max);
        assert!(report.mean_inference_seconds > 0.0);
    }

    #[test]
    fn fold_sizes_distribute_the_remainder() {
        assert_eq!(fold_sizes(10, 5), vec![2, 2, 2, 2, 2]);
        assert_eq!(fold_sizes(7, 3), vec![3, 2, 2]);
        assert_eq!(fold_sizes(398, 5), vec![80, 80, 80, 79, 79]);
    }

    #[test]
    fn population_std_matches_hand_computation() {
        let values = [1.0, 2.0, 3.0, 4.0];
        let std = population_std(&values, 2.5);
        assert!((std - 1.25f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn cross_validation_partitions_exactly() {
        let (pairs, vocab) = sample_corpus();
        let report =
            cross_validate(&pairs, &vocab, &ModelOptions::default(), 5, 7).unwrap();
        assert_eq!(report.fold_count, 5);
        assert_eq!(report.folds.len(), 5);
        let total: usize = report.folds.iter().map(|f| f.examples).sum();
        assert_eq!(total, pairs.len());
    }

    #[test]
    fn cross_validation_is_deterministic_for_a_seed() {
        let (pairs, vocab) = sample_corpus();
        let options = ModelOptions::default();
        let a = cross_validate(&pairs, &vocab, &options, 5, 42).unwrap();
        let b = cross_validate(&pairs, &vocab, &options, 5, 42).unwrap();
        for (fa, fb) in a.folds.iter().zip(&b.folds) {
            assert_eq!(fa.accuracy_at, fb.accuracy_at);
            assert_eq!(fa.dld_mean, fb.dld_mean);
        }
        assert_eq!(
            a.summary["accuracy_at_1"].mean,
            b.summary["accuracy_at_1"].mean
        );
    }

    #[test]
    fn cross_validation_rejects_bad_fold_counts() {
        let (pairs, vocab) = sample_corpus();
        let options = ModelOptions::default();
        assert!(matches!(
            cross_validate(&pairs, &vocab, &options, 1, 0),
            Err(Error::TooFewFolds(1))
        ));
        assert!(matches!(
            cross_validate(&pairs[..3], &vocab, &options, 5, 0),
            Err(Error::TooFewExamples { examples: 3, folds: 5 })
        ));
    }

    #[test]
    fn summary_means_average_the_folds() {
        let (pairs, vocab) = sample_corpus();
        let report =
            cross_validate(&pairs, &vocab, &ModelOptions::default(), 2, 3).unwrap();
        let manual: f64 = report
            .folds
            .iter()
            .map(|f| f.accuracy_at[&1])
            .sum::<f64>()
            / report.folds.len() as f64;
        assert!((report.summary["accuracy_at_1"].mean - manual).abs() < 1e-12);
    }

    #[test]
    fn sweep_reports_one_row_per_cutoff() {
        let (pairs, vocab) = sample_corpus();
        let options = ModelOptions::default();
        let rows = sweep_cutoff(&pairs, &pairs, &vocab, &options, &[1, 100]).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].cutoff, 1);
        assert_eq!(rows[1].cutoff, 100);
        // a wider beam can only help accuracy on this corpus
        assert!(rows[1].accuracy_at_1 >= rows[0].accuracy_at_1);
    }

    #[test]
    fn sweep_validates_cutoffs() {
        let (pairs, vocab) = sample_corpus();
        let options = ModelOptions::default();
        assert!(matches!(
            sweep_cutoff(&pairs, &pairs, &vocab, &options, &[]),
            Err(Error::NoCutoffs)
        ));
        assert!(matches!(
            sweep_cutoff(&pairs, &pairs, &vocab, &options, &[3, 0]),
            Err(Error::ZeroCutoff)
        ));
    }
}
