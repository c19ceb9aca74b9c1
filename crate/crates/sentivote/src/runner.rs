//! Executes `run-grid`: loads configuration, grids, and corpora, runs the
//! selected sections, and writes the report files.

use std::fs;
use std::path::{Path, PathBuf};

use sentivote_core::corpus::{validate_reference_distribution, Corpus};
use sentivote_core::experiments::{
    render_csv, render_markdown_section, run_grid, CorpusStore, ExperimentResult, FoldLabel,
    GridSelection, VoteLog,
};

use crate::config::{load_experiment_file, load_grids, resolve_relative, validate};
use crate::corpus_csv::load_corpus;
use crate::model_file::save_model;
use crate::{Error, Result};

/// What `execute_grid` wrote and where.
#[derive(Debug)]
pub struct GridOutcome {
    pub out_dir: PathBuf,
    pub results_csv: PathBuf,
    pub results_md: PathBuf,
    pub vote_files: Vec<PathBuf>,
    pub model_files: Vec<PathBuf>,
    pub rows: Vec<ExperimentResult>,
    /// Distribution report per loaded corpus, for display.
    pub corpus_reports: Vec<String>,
}

/// Runs the selected grid sections of a configuration file and writes
/// `results.csv` and `results.md` (plus vote logs when enabled) into the
/// output directory.
pub fn execute_grid(
    config_path: &Path,
    selection: GridSelection,
    out_override: Option<&Path>,
    seed_override: Option<u64>,
) -> Result<GridOutcome> {
    let config = load_experiment_file(config_path)?;
    let grids = load_grids(&config, config_path)?;

    let problems = validate(&config, config_path, &grids, selection);
    if !problems.is_empty() {
        return Err(Error::Config(problems.join("\n")));
    }

    let mut corpora: CorpusStore = CorpusStore::new();
    let mut corpus_reports = Vec::new();
    for (name, path) in &config.corpora {
        let resolved = resolve_relative(config_path, path);
        let corpus = load_corpus(&resolved, name)?;
        if !config.skip_distribution_check {
            validate_reference_distribution(&corpus)?;
        }
        corpus_reports.push(corpus.distribution_report());
        corpora.insert(name.clone(), corpus);
    }

    let seed = seed_override.unwrap_or(config.seed);
    let output = run_grid(&grids, selection, &corpora, seed, config.k)?;

    let out_dir = out_override
        .map(Path::to_path_buf)
        .unwrap_or_else(|| resolve_relative(config_path, &config.output_dir));
    fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;

    let mut rows = Vec::new();
    rows.extend(output.within.iter().cloned());
    rows.extend(output.rq21.iter().cloned());
    rows.extend(output.rq22.iter().cloned());

    let results_csv = out_dir.join("results.csv");
    fs::write(&results_csv, render_csv(&rows)?).map_err(|e| Error::io(&results_csv, e))?;

    let mut markdown = String::from("# Experiment results\n\n");
    markdown.push_str(&format!("Seed {seed}, {} folds.\n\n", config.k));
    if !output.within.is_empty() {
        markdown.push_str(&render_markdown_section(
            "Within-domain (RQ1)",
            &output.within,
        )?);
    }
    if !output.rq21.is_empty() {
        markdown.push_str(&render_markdown_section(
            "Cross-platform permutations (RQ2.1)",
            &output.rq21,
        )?);
    }
    if !output.rq22.is_empty() {
        markdown.push_str(&render_markdown_section(
            "Cross-platform best members (RQ2.2)",
            &output.rq22,
        )?);
    }
    let results_md = out_dir.join("results.md");
    fs::write(&results_md, markdown).map_err(|e| Error::io(&results_md, e))?;

    let mut model_files = Vec::new();
    if config.write_models && !output.pretrained.is_empty() {
        let models_dir = out_dir.join("models");
        fs::create_dir_all(&models_dir).map_err(|e| Error::io(&models_dir, e))?;
        for (family, corpus, model) in &output.pretrained {
            let path = models_dir.join(format!("{}_on_{corpus}.model", family.as_str()));
            save_model(model, &path)?;
            model_files.push(path);
        }
    }

    let mut vote_files = Vec::new();
    if config.write_vote_logs {
        let votes_dir = out_dir.join("votes");
        fs::create_dir_all(&votes_dir).map_err(|e| Error::io(&votes_dir, e))?;
        for log in &output.votes {
            let path = votes_dir.join(vote_file_name(log));
            fs::write(&path, vote_log_csv(log)).map_err(|e| Error::io(&path, e))?;
            vote_files.push(path);
        }
    }

    Ok(GridOutcome {
        out_dir,
        results_csv,
        results_md,
        vote_files,
        model_files,
        rows,
        corpus_reports,
    })
}

fn vote_file_name(log: &VoteLog) -> String {
    match log.fold {
        FoldLabel::Fold(n) => format!("votes_{}_fold{}.csv", log.run_id, n),
        _ => format!("votes_{}.csv", log.run_id),
    }
}

/// Per-document vote CSV: `doc_id,member1,...,memberN,final,tie`.
pub fn vote_log_csv(log: &VoteLog) -> String {
    let members = log.rows.first().map_or(3, |r| r.member_labels.len());
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let mut header = vec!["doc_id".to_string()];
    for i in 1..=members {
        header.push(format!("member{i}"));
    }
    header.push("final".to_string());
    header.push("tie".to_string());
    writer.write_record(&header).expect("in-memory write");
    for row in &log.rows {
        let mut record = vec![row.doc_id.clone()];
        for label in &row.member_labels {
            record.push(label.as_str().to_string());
        }
        record.push(row.final_label.as_str().to_string());
        record.push(row.tie.to_string());
        writer.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("valid utf-8")
}

/// Loads a labeled corpus for ad-hoc commands, outside of a config file.
pub fn load_named_corpus(path: &Path, name: &str) -> Result<Corpus> {
    load_corpus(path, name)
}
