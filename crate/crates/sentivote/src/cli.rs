//! The `sentivote` command-line interface.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{ArgGroup, Parser, Subcommand};

use sentivote_core::classifiers::{train, ClassifierModel, ClassifierSpec, Family};
use sentivote_core::corpus::{validate_reference_distribution, Document, Polarity};
use sentivote_core::ensemble::{disagreement_rate, ensemble_predict_batch};
use sentivote_core::evaluation::{evaluate, fleiss_kappa, ratings_from_votes};
use sentivote_core::experiments::{
    emit_report, parse_report_csv, FoldLabel, GridSelection, ReportFormat, VoteLog, VoteLogRow,
};

use crate::corpus_csv::{
    load_corpus, load_emotion_corpus, load_prediction_input, sniff_kind, write_corpus, CorpusKind,
};
use crate::mapping::load_mapping;
use crate::model_file::{load_model, save_model};
use crate::runner::{execute_grid, vote_log_csv};

const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "sentivote",
    version,
    about = "Majority-voting polarity classification for software-engineering text"
)]
pub struct Cli {
    /// Seed for all stochastic operations (fold shuffling, SGD order,
    /// vote tie-breaking). For run-grid it overrides the config seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize a corpus file into the canonical CSV form and print its
    /// class distribution. Emotion-labeled corpora are mapped to polarities.
    Ingest {
        /// Input CSV (header `id,text,label` or `id,text,emotion`).
        #[arg(long)]
        input: PathBuf,
        /// Corpus name; canonical names are checked against the built-in
        /// reference distributions.
        #[arg(long)]
        name: String,
        /// Emotion-mapping file; the built-in default mapping otherwise.
        #[arg(long)]
        emotion_map: Option<PathBuf>,
        /// Drop repeated normalized texts (majority label wins, label ties
        /// drop the group).
        #[arg(long)]
        dedup: bool,
        /// Where to write the canonical CSV.
        #[arg(long)]
        output: PathBuf,
    },
    /// Check a corpus file: format, ids, labels, and (for canonical names)
    /// the reference distribution.
    ValidateCorpus {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        name: String,
    },
    /// Train one classifier on a full corpus and save the model file.
    Train {
        /// Classifier family: lexicon, naive-bayes, or logistic.
        #[arg(long)]
        family: String,
        /// Training corpus CSV.
        #[arg(long)]
        input: PathBuf,
        /// Corpus name recorded in the model.
        #[arg(long)]
        name: String,
        /// Where to write the model file.
        #[arg(long)]
        output: PathBuf,
    },
    /// Predict with a majority-voting ensemble of saved models.
    #[command(group(ArgGroup::new("source").required(true).args(["text", "input"])))]
    Predict {
        /// Model file; repeat for each member (odd count, at least 3).
        #[arg(long, required = true)]
        model: Vec<PathBuf>,
        /// Classify a single text.
        #[arg(long)]
        text: Option<String>,
        /// Classify a batch: CSV with header starting `id,text`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Vote CSV destination for batch input (stdout otherwise).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a single model or a voting ensemble on a labeled corpus.
    Evaluate {
        /// Model file; one for plain evaluation, an odd count of at least 3
        /// for ensemble evaluation.
        #[arg(long, required = true)]
        model: Vec<PathBuf>,
        /// Labeled corpus CSV.
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the configured experiment grids and write report files.
    RunGrid {
        /// Experiment configuration (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Which grids to run: within, rq21, rq22, or all.
        #[arg(long, default_value = "all")]
        grid: String,
        /// Output directory; overrides the config's output_dir.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-render a results.csv in another format.
    Report {
        #[arg(long)]
        input: PathBuf,
        /// csv or md.
        #[arg(long)]
        format: String,
        /// Destination file (stdout otherwise).
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match cli.command {
        Command::Ingest {
            input,
            name,
            emotion_map,
            dedup,
            output,
        } => ingest(&input, &name, emotion_map.as_deref(), dedup, &output),
        Command::ValidateCorpus { input, name } => validate_corpus(&input, &name),
        Command::Train {
            family,
            input,
            name,
            output,
        } => train_command(&family, &input, &name, &output, seed),
        Command::Predict {
            model,
            text,
            input,
            output,
        } => predict(&model, text.as_deref(), input.as_deref(), output.as_deref(), seed),
        Command::Evaluate { model, input } => evaluate_command(&model, &input, seed),
        Command::RunGrid { config, grid, out } => {
            run_grid_command(&config, &grid, out.as_deref(), cli.seed)
        }
        Command::Report {
            input,
            format,
            output,
        } => report(&input, &format, output.as_deref()),
    }
}

fn ingest(
    input: &Path,
    name: &str,
    emotion_map: Option<&Path>,
    dedup: bool,
    output: &Path,
) -> anyhow::Result<()> {
    let corpus = match sniff_kind(input)? {
        CorpusKind::Labeled => load_corpus(input, name)?,
        CorpusKind::Emotion => {
            let raw = load_emotion_corpus(input, name)?;
            let mapping = match emotion_map {
                Some(path) => load_mapping(path)?,
                None => sentivote_core::corpus::EmotionMapping::builtin_default(),
            };
            sentivote_core::corpus::map_emotions(&raw, &mapping)?
        }
    };
    let corpus = if dedup { corpus.deduplicate() } else { corpus };
    validate_reference_distribution(&corpus)?;
    write_corpus(&corpus, output)?;
    println!("{}", corpus.distribution_report());
    println!("wrote {}", output.display());
    Ok(())
}

fn validate_corpus(input: &Path, name: &str) -> anyhow::Result<()> {
    let corpus = load_corpus(input, name)?;
    validate_reference_distribution(&corpus)?;
    println!("{}", corpus.distribution_report());
    println!("ok");
    Ok(())
}

fn train_command(
    family: &str,
    input: &Path,
    name: &str,
    output: &Path,
    seed: u64,
) -> anyhow::Result<()> {
    let family = Family::parse(family)?;
    let corpus = load_corpus(input, name)?;
    let spec = ClassifierSpec::new(family, name);
    let model = train(&spec, corpus.documents(), seed)?;
    save_model(&model, output)?;
    println!(
        "trained {} on {} ({} documents), saved to {}",
        family,
        name,
        corpus.len(),
        output.display()
    );
    Ok(())
}

fn load_ensemble(paths: &[PathBuf]) -> anyhow::Result<Vec<ClassifierModel>> {
    if paths.len() < 3 || paths.len().is_multiple_of(2) {
        bail!(
            "an ensemble needs an odd number of models, at least 3; got {}",
            paths.len()
        );
    }
    paths
        .iter()
        .map(|p| load_model(p).with_context(|| format!("loading {}", p.display())))
        .collect()
}

fn placeholder_document(id: &str, text: &str) -> anyhow::Result<Document> {
    Ok(Document::new(id, text, Polarity::Neutral)?)
}

fn predict(
    model_paths: &[PathBuf],
    text: Option<&str>,
    input: Option<&Path>,
    output: Option<&Path>,
    seed: u64,
) -> anyhow::Result<()> {
    let models = load_ensemble(model_paths)?;
    if let Some(text) = text {
        let doc = placeholder_document("input", text)?;
        let predictions = ensemble_predict_batch(&models, std::slice::from_ref(&doc), seed)?;
        let prediction = &predictions[0];
        println!("final: {}", prediction.final_label);
        for (model, label) in models.iter().zip(&prediction.member_labels) {
            println!(
                "  {} (trained on {}): {}",
                model.family(),
                model.train_corpus(),
                label
            );
        }
        println!("tie broken randomly: {}", prediction.tie_broken_randomly);
        return Ok(());
    }

    let input = input.expect("clap group guarantees text or input");
    let rows = load_prediction_input(input)?;
    let docs: Vec<Document> = rows
        .iter()
        .map(|r| placeholder_document(&r.id, &r.text))
        .collect::<anyhow::Result<_>>()?;
    let predictions = ensemble_predict_batch(&models, &docs, seed)?;
    let log = VoteLog {
        run_id: "0.0".to_string(),
        fold: FoldLabel::Full,
        rows: docs
            .iter()
            .zip(&predictions)
            .map(|(doc, p)| VoteLogRow {
                doc_id: doc.id.clone(),
                member_labels: p.member_labels.clone(),
                final_label: p.final_label,
                tie: p.tie_broken_randomly,
            })
            .collect(),
    };
    let csv = vote_log_csv(&log);
    match output {
        Some(path) => {
            fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {} predictions to {}", predictions.len(), path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn evaluate_command(model_paths: &[PathBuf], input: &Path, seed: u64) -> anyhow::Result<()> {
    let corpus = load_corpus(input, "eval")?;
    let gold = corpus.labels();
    if model_paths.len() == 1 {
        let model = load_model(&model_paths[0])?;
        let predicted = model.predict_batch(corpus.documents());
        let report = evaluate(&predicted, &gold)?;
        print!("{}", report.render());
        return Ok(());
    }
    let models = load_ensemble(model_paths)?;
    let predictions = ensemble_predict_batch(&models, corpus.documents(), seed)?;
    let finals: Vec<Polarity> = predictions.iter().map(|p| p.final_label).collect();
    println!("voting classifier:");
    print!("{}", evaluate(&finals, &gold)?.render());
    for (slot, model) in models.iter().enumerate() {
        let labels: Vec<Polarity> = predictions.iter().map(|p| p.member_labels[slot]).collect();
        let report = evaluate(&labels, &gold)?;
        println!(
            "member {} ({}, trained on {}): accuracy {:.4}, macro F1 {:.4}",
            slot + 1,
            model.family(),
            model.train_corpus(),
            report.accuracy,
            report.macro_f1
        );
    }
    println!(
        "disagreement rate: {:.1}%",
        disagreement_rate(&predictions)? * 100.0
    );
    print!("{}", fleiss_kappa(&ratings_from_votes(&predictions)?)?.render());
    Ok(())
}

fn run_grid_command(
    config: &Path,
    grid: &str,
    out: Option<&Path>,
    seed_override: Option<u64>,
) -> anyhow::Result<()> {
    let selection = GridSelection::parse(grid)?;
    let outcome = execute_grid(config, selection, out, seed_override)?;
    for report in &outcome.corpus_reports {
        println!("{report}");
    }
    println!(
        "wrote {} result rows to {}",
        outcome.rows.len(),
        outcome.results_csv.display()
    );
    println!("wrote {}", outcome.results_md.display());
    if !outcome.vote_files.is_empty() {
        println!("wrote {} vote logs", outcome.vote_files.len());
    }
    if !outcome.model_files.is_empty() {
        println!("wrote {} model files", outcome.model_files.len());
    }
    Ok(())
}

fn report(input: &Path, format: &str, output: Option<&Path>) -> anyhow::Result<()> {
    let format = ReportFormat::parse(format)?;
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let results = parse_report_csv(&text)?;
    let rendered = emit_report(&results, format)?;
    match output {
        Some(path) => {
            fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => print!("{rendered}"),
    }
    Ok(())
}
