//! `spellnorm`: train and run the textspeak spelling normalizer.

use std::io::{self, BufRead};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use spellnorm::{
    atomic_write, baseline_nearest_vocab, cross_validate, default_cutoff, evaluate, load_model,
    load_pairs, normalize, save_model, sweep_cutoff, train, DldVariant, EvalReport, Model,
    ModelOptions, PairCorpus, Ranker, RecordingMode, Rule, Variant, Vocabulary,
};

#[derive(Parser)]
#[command(
    name = "spellnorm",
    version,
    about = "Learn spelling-normalization rules from labeled word pairs and use them to correct textspeak"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn a rule dictionary from a pairs file and save a model
    Train(TrainArgs),
    /// Suggest corrections for one word, or for words streamed on stdin
    Normalize(NormalizeArgs),
    /// Score a model against a labeled test set
    Evaluate(EvaluateArgs),
    /// Seeded k-fold cross validation over a pairs file
    Cv(CvArgs),
    /// Measure accuracy and latency across beam widths
    Sweep(SweepArgs),
    /// Add a hand-written rule to a saved model
    AddRule(AddRuleArgs),
    /// Print a model's rules with counts and probabilities
    Inspect(InspectArgs),
    /// Rank raw vocabulary entries by edit distance, no learned rules
    Baseline(BaselineArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    ShortKey,
    Literal,
}

impl From<ModeArg> for RecordingMode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::ShortKey => RecordingMode::ShortKey,
            ModeArg::Literal => RecordingMode::Literal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    V1,
    V2,
}

impl From<VariantArg> for Variant {
    fn from(arg: VariantArg) -> Self {
        match arg {
            VariantArg::V1 => Variant::V1,
            VariantArg::V2 => Variant::V2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RankerArg {
    Dld,
    Likelihood,
}

impl From<RankerArg> for Ranker {
    fn from(arg: RankerArg) -> Self {
        match arg {
            RankerArg::Dld => Ranker::Dld,
            RankerArg::Likelihood => Ranker::Likelihood,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DldArg {
    Osa,
    Unrestricted,
}

impl From<DldArg> for DldVariant {
    fn from(arg: DldArg) -> Self {
        match arg {
            DldArg::Osa => DldVariant::Osa,
            DldArg::Unrestricted => DldVariant::Unrestricted,
        }
    }
}

/// Training and inference settings shared by the model-building commands.
#[derive(Args)]
struct OptionArgs {
    /// Longest substring window learned from each pair
    #[arg(long, default_value_t = 2)]
    k_max: usize,
    /// How the wrong-side key is recorded on mismatches
    #[arg(long, value_enum, default_value_t = ModeArg::ShortKey)]
    mode: ModeArg,
    /// Where single-letter rules may apply during generation
    #[arg(long, value_enum, default_value_t = VariantArg::V1)]
    variant: VariantArg,
    /// How candidates are ordered
    #[arg(long, value_enum, default_value_t = RankerArg::Dld)]
    ranker: RankerArg,
    /// Beam width during generation [default: 100, or 30 with --ranker likelihood]
    #[arg(long, conflicts_with = "no_cutoff")]
    cutoff: Option<usize>,
    /// Disable beam pruning entirely
    #[arg(long)]
    no_cutoff: bool,
    /// Edit distance flavor used for ranking and metrics
    #[arg(long, value_enum, default_value_t = DldArg::Osa)]
    dld_variant: DldArg,
}

impl OptionArgs {
    fn to_options(&self) -> ModelOptions {
        let ranker = Ranker::from(self.ranker);
        ModelOptions {
            k_max: self.k_max,
            recording_mode: self.mode.into(),
            variant: self.variant.into(),
            cutoff: if self.no_cutoff {
                None
            } else {
                Some(self.cutoff.unwrap_or_else(|| default_cutoff(ranker)))
            },
            ranker,
            dld_variant: self.dld_variant.into(),
        }
    }
}

#[derive(Args)]
struct TrainArgs {
    /// TSV file of wrong<TAB>correct pairs
    #[arg(long)]
    data: PathBuf,
    /// Vocabulary file, one word per line
    #[arg(long)]
    vocab: PathBuf,
    /// Where to write the model
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    options: OptionArgs,
}

#[derive(Args)]
struct NormalizeArgs {
    #[arg(long)]
    model: PathBuf,
    /// Correct this word and print one suggestion per line; without it,
    /// words are read from stdin and TSV rows are printed
    #[arg(long)]
    word: Option<String>,
    /// Suggestions per word
    #[arg(long, default_value_t = 5)]
    top: usize,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    model: PathBuf,
    /// TSV file of wrong<TAB>correct pairs to score against
    #[arg(long)]
    data: PathBuf,
    /// Write the full report as JSON
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write per-example top-5 predictions as TSV
    #[arg(long)]
    predictions: Option<PathBuf>,
}

#[derive(Args)]
struct CvArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    vocab: PathBuf,
    #[arg(long, default_value_t = 5)]
    folds: usize,
    /// Shuffle seed; recorded in the report so splits are reproducible
    #[arg(long)]
    seed: u64,
    /// Write the full report as JSON
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    options: OptionArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    data: PathBuf,
    /// Held-out pairs to score; defaults to scoring on the training data
    #[arg(long)]
    test: Option<PathBuf>,
    #[arg(long)]
    vocab: PathBuf,
    /// Comma-separated beam widths to try
    #[arg(long, default_value = "1,5,10,30,100,300")]
    cutoffs: String,
    /// Write the rows as CSV
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    options: OptionArgs,
}

#[derive(Args)]
struct AddRuleArgs {
    #[arg(long)]
    model: PathBuf,
    /// Key to rewrite
    #[arg(long)]
    wrong: String,
    /// Replacement text
    #[arg(long)]
    right: String,
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Output path; defaults to rewriting the model in place
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InspectArgs {
    #[arg(long)]
    model: PathBuf,
    /// Only show rules under this key
    #[arg(long)]
    key: Option<String>,
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(long)]
    vocab: PathBuf,
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = 5)]
    top: usize,
    #[arg(long, value_enum, default_value_t = DldArg::Osa)]
    dld_variant: DldArg,
}

fn main() -> std::process::ExitCode {
    let result = match Cli::parse().command {
        Command::Train(args) => run_train(args),
        Command::Normalize(args) => run_normalize(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::Cv(args) => run_cv(args),
        Command::Sweep(args) => run_sweep(args),
        Command::AddRule(args) => run_add_rule(args),
        Command::Inspect(args) => run_inspect(args),
        Command::Baseline(args) => run_baseline(args),
    };
    match result {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::ExitCode::FAILURE
        }
    }
}

fn read_corpus(path: &Path) -> Result<PairCorpus> {
    let corpus =
        load_pairs(path).with_context(|| format!("reading pairs from {}", path.display()))?;
    for skipped in &corpus.skipped {
        eprintln!("warning: {}: {skipped}", path.display());
    }
    Ok(corpus)
}

fn read_vocab(path: &Path) -> Result<Vocabulary> {
    Vocabulary::load(path).with_context(|| format!("reading vocabulary from {}", path.display()))
}

fn read_model(path: &Path) -> Result<Model> {
    load_model(path).with_context(|| format!("loading model from {}", path.display()))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    atomic_write(path, &bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn run_train(args: TrainArgs) -> Result<()> {
    let corpus = read_corpus(&args.data)?;
    let vocab = read_vocab(&args.vocab)?;
    let model = train(&corpus.pairs, vocab, &args.options.to_options())?;
    save_model(&model, &args.out)
        .with_context(|| format!("writing model to {}", args.out.display()))?;
    println!(
        "trained on {} pairs ({} skipped): {} keys, {} rules -> {}",
        corpus.pairs.len(),
        corpus.skipped.len(),
        model.dictionary.key_count(),
        model.dictionary.rule_count(),
        args.out.display()
    );
    Ok(())
}

fn run_normalize(args: NormalizeArgs) -> Result<()> {
    let model = read_model(&args.model)?;
    if let Some(word) = &args.word {
        for suggestion in normalize(&model, word, args.top)? {
            println!("{}\t{}", suggestion.text, suggestion.score);
        }
        return Ok(());
    }
    for line in io::stdin().lock().lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let cleaned = match spellnorm::preprocess(&line) {
            Ok(cleaned) => cleaned,
            Err(err) => {
                eprintln!("warning: skipping {line:?}: {err}");
                continue;
            }
        };
        for token in cleaned.split(' ') {
            match normalize(&model, token, args.top) {
                Ok(suggestions) => {
                    let mut row = token.to_string();
                    for suggestion in suggestions {
                        row.push('\t');
                        row.push_str(&suggestion.text);
                    }
                    println!("{row}");
                }
                Err(err) => eprintln!("warning: skipping {token:?}: {err}"),
            }
        }
    }
    Ok(())
}

fn summarize_report(report: &EvalReport) -> String {
    format!(
        "accuracy@1 {:.3}  @3 {:.3}  @5 {:.3} | dld min {:.3} mean {:.3} max {:.3} | {:.6}s per word ({} examples)",
        report.accuracy_at[&1],
        report.accuracy_at[&3],
        report.accuracy_at[&5],
        report.dld_min,
        report.dld_mean,
        report.dld_max,
        report.mean_inference_seconds,
        report.examples
    )
}

fn run_evaluate(args: EvaluateArgs) -> Result<()> {
    let model = read_model(&args.model)?;
    let corpus = read_corpus(&args.data)?;
    let report = evaluate(&model, &corpus.pairs)?;
    if let Some(path) = &args.report {
        write_json(path, &report)?;
    }
    if let Some(path) = &args.predictions {
        let mut out = String::new();
        for pair in &corpus.pairs {
            out.push_str(&pair.wrong);
            out.push('\t');
            out.push_str(&pair.correct);
            for suggestion in normalize(&model, &pair.wrong, 5)? {
                out.push('\t');
                out.push_str(&suggestion.text);
            }
            out.push('\n');
        }
        atomic_write(path, out.as_bytes())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{}", summarize_report(&report));
    Ok(())
}

fn run_cv(args: CvArgs) -> Result<()> {
    let corpus = read_corpus(&args.data)?;
    let vocab = read_vocab(&args.vocab)?;
    let report = cross_validate(
        &corpus.pairs,
        &vocab,
        &args.options.to_options(),
        args.folds,
        args.seed,
    )?;
    if let Some(path) = &args.report {
        write_json(path, &report)?;
    }
    let acc1 = &report.summary["accuracy_at_1"];
    let acc5 = &report.summary["accuracy_at_5"];
    println!(
        "{}-fold cv (seed {}): accuracy@1 {:.3} ± {:.3}  accuracy@5 {:.3} ± {:.3} over {} pairs",
        report.fold_count,
        report.seed,
        acc1.mean,
        acc1.std_dev,
        acc5.mean,
        acc5.std_dev,
        corpus.pairs.len()
    );
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    let cutoffs: Vec<usize> = args
        .cutoffs
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .with_context(|| format!("bad cutoff {part:?}"))
        })
        .collect::<Result<_>>()?;
    let train_corpus = read_corpus(&args.data)?;
    let test_corpus = match &args.test {
        Some(path) => read_corpus(path)?,
        None => train_corpus.clone(),
    };
    let vocab = read_vocab(&args.vocab)?;
    let rows = sweep_cutoff(
        &train_corpus.pairs,
        &test_corpus.pairs,
        &vocab,
        &args.options.to_options(),
        &cutoffs,
    )?;
    let mut csv = String::from("cutoff,accuracy_at_1,mean_inference_seconds\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{}\n",
            row.cutoff, row.accuracy_at_1, row.mean_inference_seconds
        ));
        println!(
            "cutoff {:>5}: accuracy@1 {:.3}  {:.6}s per word",
            row.cutoff, row.accuracy_at_1, row.mean_inference_seconds
        );
    }
    if let Some(path) = &args.out {
        atomic_write(path, csv.as_bytes())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run_add_rule(args: AddRuleArgs) -> Result<()> {
    let model = read_model(&args.model)?;
    let rule = Rule::new(args.wrong.as_str(), args.right.as_str());
    let patched = model.dictionary.add_rule(&rule, args.count)?;
    let model = model.with_dictionary(patched)?;
    let out = args.out.as_deref().unwrap_or(&args.model);
    save_model(&model, out).with_context(|| format!("writing model to {}", out.display()))?;
    println!("added {rule} (count {}) -> {}", args.count, out.display());
    Ok(())
}

fn run_inspect(args: InspectArgs) -> Result<()> {
    let model = read_model(&args.model)?;
    let options = model.options();
    println!(
        "{} keys, {} rules | k_max {} mode {} variant {} ranker {} cutoff {} dld {} | vocabulary {} words | trained on {} pairs",
        model.dictionary.key_count(),
        model.dictionary.rule_count(),
        options.k_max,
        options.recording_mode,
        options.variant,
        options.ranker,
        options
            .cutoff
            .map_or_else(|| "none".to_string(), |c| c.to_string()),
        options.dld_variant,
        model.vocabulary.len(),
        model.metadata.training_pairs
    );
    let print_key = |key: &str, replacements: &[spellnorm::CountedReplacement]| {
        for replacement in replacements {
            let p = model
                .dictionary
                .rule_probability(&Rule::new(key, replacement.text.as_str()))
                .expect("replacement listed by the dictionary");
            println!(
                "{key} -> {}\tcount {}\tp {:.4}",
                replacement.text, replacement.count, p
            );
        }
    };
    match &args.key {
        Some(key) => {
            let replacements = model
                .dictionary
                .replacements(key)
                .ok_or_else(|| anyhow!("no rules recorded under key {key:?}"))?;
            print_key(key, replacements);
        }
        None => {
            for (key, replacements) in model.dictionary.iter() {
                print_key(key, replacements);
            }
        }
    }
    Ok(())
}

fn run_baseline(args: BaselineArgs) -> Result<()> {
    let vocab = read_vocab(&args.vocab)?;
    for suggestion in baseline_nearest_vocab(
        &args.word,
        &vocab,
        args.top,
        args.dld_variant.into(),
    )? {
        println!("{}\t{}", suggestion.text, suggestion.score);
    }
    Ok(())
}
