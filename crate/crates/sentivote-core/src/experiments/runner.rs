//! Executes experiment configurations over in-memory corpora.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::format;

use crate::classifiers::{train, ClassifierModel, ClassifierSpec, Family};
use crate::corpus::{normalize_text, Corpus, Document};
use crate::ensemble::{disagreement_rate, ensemble_predict_batch, EnsemblePrediction};
use crate::evaluation::{
    evaluate, fleiss_kappa, landis_koch_band, ratings_from_votes, stratified_kfold,
};
use crate::experiments::{
    BestOfTemplate, ExperimentConfig, ExperimentMode, ExperimentResult, FoldLabel,
    GridDefinition, GridSelection, MemberOutcome, VoteLog, VoteLogRow,
};
use crate::features::tokenize;
use crate::rng::{derive_seed, fold_tag};
use crate::{Error, Result};

/// Corpora available to the runner, keyed by name.
pub type CorpusStore = BTreeMap<String, Corpus>;

/// Caches models trained on full corpora, keyed by (family, training
/// corpus). Grid runs use one hyperparameter setting per family, which is
/// what makes this key sufficient.
#[derive(Debug, Default)]
pub struct ModelCache {
    models: BTreeMap<(Family, String), ClassifierModel>,
}

impl ModelCache {
    pub fn new() -> ModelCache {
        ModelCache::default()
    }

    /// The cached models in key order.
    pub fn into_models(self) -> Vec<(Family, String, ClassifierModel)> {
        self.models
            .into_iter()
            .map(|((family, corpus), model)| (family, corpus, model))
            .collect()
    }

    /// Returns the model for `spec` trained on 100% of its source corpus,
    /// training it on first use. The training seed depends only on
    /// (seed, family, corpus), so cached and fresh models are identical.
    pub fn get_or_train(
        &mut self,
        spec: &ClassifierSpec,
        corpora: &CorpusStore,
        seed: u64,
    ) -> Result<ClassifierModel> {
        let key = (spec.family(), spec.train_corpus.clone());
        if let Some(model) = self.models.get(&key) {
            return Ok(model.clone());
        }
        let train_seed = derive_seed(
            seed,
            &["train", spec.family().as_str(), &spec.train_corpus, "full"],
        );
        let model = if spec.family() == Family::Lexicon {
            train(spec, &[], train_seed)?
        } else {
            let corpus = corpora
                .get(&spec.train_corpus)
                .ok_or_else(|| Error::MissingCorpus(spec.train_corpus.clone()))?;
            train(spec, corpus.documents(), train_seed)?
        };
        self.models.insert(key, model.clone());
        Ok(model)
    }
}

fn member_outcomes(
    members: &[ClassifierSpec],
    predictions: &[EnsemblePrediction],
    gold: &[crate::corpus::Polarity],
) -> Result<Vec<MemberOutcome>> {
    let mut outcomes = Vec::with_capacity(members.len());
    for (slot, spec) in members.iter().enumerate() {
        let labels: Vec<_> = predictions.iter().map(|p| p.member_labels[slot]).collect();
        let report = evaluate(&labels, gold)?;
        outcomes.push(MemberOutcome {
            family: spec.family(),
            train_corpus: spec.train_corpus.clone(),
            accuracy: report.accuracy,
            macro_f1: report.macro_f1,
        });
    }
    Ok(outcomes)
}

fn vote_log_rows(docs: &[Document], predictions: &[EnsemblePrediction]) -> Vec<VoteLogRow> {
    docs.iter()
        .zip(predictions)
        .map(|(doc, prediction)| VoteLogRow {
            doc_id: doc.id.clone(),
            member_labels: prediction.member_labels.clone(),
            final_label: prediction.final_label,
            tie: prediction.tie_broken_randomly,
        })
        .collect()
}

/// Runs one within-domain configuration: for every fold, trains each member
/// on the other k-1 folds, evaluates the ensemble on the held-out fold, and
/// appends an unweighted mean row.
///
/// Returns one result row per fold plus the mean row, and a vote log per
/// fold. Deterministic given the configuration (including its seed).
pub fn run_within_domain(
    cfg: &ExperimentConfig,
    corpora: &CorpusStore,
) -> Result<(Vec<ExperimentResult>, Vec<VoteLog>)> {
    if cfg.mode != ExperimentMode::WithinDomain {
        return Err(Error::InvalidExperimentConfig(format!(
            "run {} is not a within-domain configuration",
            cfg.run_id()
        )));
    }
    cfg.validate()?;
    let corpus = corpora
        .get(&cfg.test_corpus)
        .ok_or_else(|| Error::MissingCorpus(cfg.test_corpus.clone()))?;

    let fold_seed = derive_seed(cfg.seed, &["folds", corpus.name(), &cfg.k.to_string()]);
    let plan = stratified_kfold(corpus, cfg.k, fold_seed)?;

    let mut results = Vec::with_capacity(cfg.k as usize + 1);
    let mut logs = Vec::with_capacity(cfg.k as usize);
    for fold in 0..cfg.k {
        let tag = fold_tag(fold);
        let train_docs: Vec<Document> = plan
            .complement_positions(fold)
            .into_iter()
            .map(|pos| corpus.documents()[pos].clone())
            .collect();
        let test_docs: Vec<Document> = plan
            .fold_positions(fold)
            .into_iter()
            .map(|pos| corpus.documents()[pos].clone())
            .collect();

        let mut models = Vec::with_capacity(cfg.members.len());
        for spec in &cfg.members {
            let train_seed = derive_seed(
                cfg.seed,
                &["train", spec.family().as_str(), &spec.train_corpus, &tag],
            );
            models.push(train(spec, &train_docs, train_seed)?);
        }

        let tie_seed = derive_seed(cfg.seed, &["tie", &cfg.run_id(), &tag]);
        let predictions = ensemble_predict_batch(&models, &test_docs, tie_seed)?;
        let gold: Vec<_> = test_docs.iter().map(|d| d.label).collect();
        let finals: Vec<_> = predictions.iter().map(|p| p.final_label).collect();
        let vc = evaluate(&finals, &gold)?;
        let members = member_outcomes(&cfg.members, &predictions, &gold)?;
        let agreement = fleiss_kappa(&ratings_from_votes(&predictions)?)?;

        results.push(ExperimentResult {
            run_id: cfg.run_id(),
            mode: cfg.mode,
            fold: FoldLabel::Fold(fold + 1),
            test_corpus: cfg.test_corpus.clone(),
            n_test: test_docs.len(),
            vc_accuracy: vc.accuracy,
            vc_macro_f1: vc.macro_f1,
            members,
            disagreement_rate: disagreement_rate(&predictions)?,
            kappa: agreement.kappa,
            band: agreement.band,
            vocab_overlap: None,
            text_overlap: None,
            seed: cfg.seed,
        });
        logs.push(VoteLog {
            run_id: cfg.run_id(),
            fold: FoldLabel::Fold(fold + 1),
            rows: vote_log_rows(&test_docs, &predictions),
        });
    }

    results.push(mean_row(cfg, &results)?);
    Ok((results, logs))
}

/// Unweighted mean over the fold rows.
fn mean_row(cfg: &ExperimentConfig, folds: &[ExperimentResult]) -> Result<ExperimentResult> {
    let count = folds.len() as f64;
    let mean = |extract: &dyn Fn(&ExperimentResult) -> f64| -> f64 {
        folds.iter().map(extract).sum::<f64>() / count
    };
    let kappa = mean(&|r| r.kappa);
    let mut members = Vec::with_capacity(cfg.members.len());
    for slot in 0..cfg.members.len() {
        members.push(MemberOutcome {
            family: folds[0].members[slot].family,
            train_corpus: folds[0].members[slot].train_corpus.clone(),
            accuracy: mean(&|r| r.members[slot].accuracy),
            macro_f1: mean(&|r| r.members[slot].macro_f1),
        });
    }
    let mean_n = folds.iter().map(|r| r.n_test).sum::<usize>() as f64 / count;
    Ok(ExperimentResult {
        run_id: cfg.run_id(),
        mode: cfg.mode,
        fold: FoldLabel::Mean,
        test_corpus: cfg.test_corpus.clone(),
        n_test: libm::round(mean_n) as usize,
        vc_accuracy: mean(&|r| r.vc_accuracy),
        vc_macro_f1: mean(&|r| r.vc_macro_f1),
        members,
        disagreement_rate: mean(&|r| r.disagreement_rate),
        kappa,
        band: landis_koch_band(kappa)?,
        vocab_overlap: None,
        text_overlap: None,
        seed: cfg.seed,
    })
}

/// Runs one cross-platform configuration: members pre-trained on 100% of
/// their source corpora via the cache, evaluated on 100% of the test corpus.
pub fn run_cross_platform(
    cfg: &ExperimentConfig,
    corpora: &CorpusStore,
    cache: &mut ModelCache,
) -> Result<(ExperimentResult, VoteLog)> {
    if cfg.mode != ExperimentMode::CrossPlatform {
        return Err(Error::InvalidExperimentConfig(format!(
            "run {} is not a cross-platform configuration",
            cfg.run_id()
        )));
    }
    cfg.validate()?;
    let test = corpora
        .get(&cfg.test_corpus)
        .ok_or_else(|| Error::MissingCorpus(cfg.test_corpus.clone()))?;

    let mut models = Vec::with_capacity(cfg.members.len());
    for spec in &cfg.members {
        models.push(cache.get_or_train(spec, corpora, cfg.seed)?);
    }

    let tie_seed = derive_seed(cfg.seed, &["tie", &cfg.run_id(), "full"]);
    let predictions = ensemble_predict_batch(&models, test.documents(), tie_seed)?;
    let gold = test.labels();
    let finals: Vec<_> = predictions.iter().map(|p| p.final_label).collect();
    let vc = evaluate(&finals, &gold)?;
    let members = member_outcomes(&cfg.members, &predictions, &gold)?;
    let agreement = fleiss_kappa(&ratings_from_votes(&predictions)?)?;

    let mut train_names: Vec<&str> = Vec::new();
    for spec in &cfg.members {
        if !train_names.contains(&spec.train_corpus.as_str()) {
            train_names.push(&spec.train_corpus);
        }
    }
    let train_corpora: Vec<&Corpus> = train_names
        .iter()
        .filter_map(|name| corpora.get(*name))
        .collect();

    let result = ExperimentResult {
        run_id: cfg.run_id(),
        mode: cfg.mode,
        fold: FoldLabel::Full,
        test_corpus: cfg.test_corpus.clone(),
        n_test: test.len(),
        vc_accuracy: vc.accuracy,
        vc_macro_f1: vc.macro_f1,
        members,
        disagreement_rate: disagreement_rate(&predictions)?,
        kappa: agreement.kappa,
        band: agreement.band,
        vocab_overlap: Some(vocab_overlap(&train_corpora, test)),
        text_overlap: Some(text_overlap(&train_corpora, test)),
        seed: cfg.seed,
    };
    let log = VoteLog {
        run_id: cfg.run_id(),
        fold: FoldLabel::Full,
        rows: vote_log_rows(test.documents(), &predictions),
    };
    Ok((result, log))
}

/// Fraction of the test corpus's token vocabulary that also occurs in the
/// training corpora.
pub fn vocab_overlap(train: &[&Corpus], test: &Corpus) -> f64 {
    let mut train_tokens: BTreeSet<String> = BTreeSet::new();
    for corpus in train {
        for doc in corpus.documents() {
            train_tokens.extend(tokenize(&doc.text));
        }
    }
    let mut test_tokens: BTreeSet<String> = BTreeSet::new();
    for doc in test.documents() {
        test_tokens.extend(tokenize(&doc.text));
    }
    if test_tokens.is_empty() {
        return 0.0;
    }
    let shared = test_tokens
        .iter()
        .filter(|token| train_tokens.contains(*token))
        .count();
    shared as f64 / test_tokens.len() as f64
}

/// Fraction of test documents whose normalized text also appears as a
/// training document.
pub fn text_overlap(train: &[&Corpus], test: &Corpus) -> f64 {
    if test.is_empty() {
        return 0.0;
    }
    let mut train_texts: BTreeSet<String> = BTreeSet::new();
    for corpus in train {
        for doc in corpus.documents() {
            train_texts.insert(normalize_text(&doc.text));
        }
    }
    let shared = test
        .documents()
        .iter()
        .filter(|doc| train_texts.contains(&normalize_text(&doc.text)))
        .count();
    shared as f64 / test.len() as f64
}

/// Selects, per test corpus of the within-domain mean rows, the member spec
/// with the highest mean accuracy, ties broken by mean macro-F1 and then by
/// the fixed family order.
///
/// Every family that appears anywhere in the results must have a result for
/// every corpus; missing (family, corpus) pairs are reported together.
pub fn best_member_per_corpus(
    within_results: &[ExperimentResult],
) -> Result<BTreeMap<String, ClassifierSpec>> {
    let mut scores: BTreeMap<String, BTreeMap<Family, (f64, f64)>> = BTreeMap::new();
    let mut families_considered: BTreeSet<Family> = BTreeSet::new();
    for row in within_results {
        if row.mode != ExperimentMode::WithinDomain || row.fold != FoldLabel::Mean {
            continue;
        }
        let per_corpus = scores.entry(row.test_corpus.clone()).or_default();
        for member in &row.members {
            families_considered.insert(member.family);
            per_corpus
                .entry(member.family)
                .or_insert((member.accuracy, member.macro_f1));
        }
    }
    if scores.is_empty() {
        return Err(Error::MissingCoverage(
            "no within-domain mean rows provided".to_owned(),
        ));
    }

    let mut missing: Vec<String> = Vec::new();
    for (corpus, per_corpus) in &scores {
        for family in &families_considered {
            if !per_corpus.contains_key(family) {
                missing.push(format!("({family}, {corpus})"));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingCoverage(missing.join(", ")));
    }

    let mut best = BTreeMap::new();
    for (corpus, per_corpus) in scores {
        let mut winner: Option<(Family, f64, f64)> = None;
        for (family, (accuracy, macro_f1)) in per_corpus {
            let replace = match winner {
                None => true,
                Some((_, best_acc, best_f1)) => {
                    accuracy > best_acc || (accuracy == best_acc && macro_f1 > best_f1)
                }
            };
            if replace {
                winner = Some((family, accuracy, macro_f1));
            }
        }
        let (family, _, _) = winner.expect("non-empty per-corpus scores");
        best.insert(corpus.clone(), ClassifierSpec::new(family, corpus));
    }
    Ok(best)
}

/// Everything one `run_grid` invocation produced.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GridRunOutput {
    pub within: Vec<ExperimentResult>,
    pub rq21: Vec<ExperimentResult>,
    pub rq22: Vec<ExperimentResult>,
    pub votes: Vec<VoteLog>,
    /// Members the cross-platform sections trained on full corpora.
    pub pretrained: Vec<(Family, String, ClassifierModel)>,
}

/// Runs the selected grid sections in template order.
///
/// Run ids are `<grid id>.<usage>` where the usage suffix counts reuses of
/// the same grid id within this invocation. The best-member section derives
/// its member families from the within-domain section (computing those runs
/// internally when they were not selected), so a given seed always yields
/// the same rows regardless of the selection.
pub fn run_grid(
    grids: &GridDefinition,
    selection: GridSelection,
    corpora: &CorpusStore,
    seed: u64,
    k: u32,
) -> Result<GridRunOutput> {
    let mut output = GridRunOutput::default();
    let mut usage_counter: BTreeMap<u32, u32> = BTreeMap::new();
    let mut next_usage = |grid_id: u32| -> u32 {
        let counter = usage_counter.entry(grid_id).or_insert(0);
        *counter += 1;
        *counter
    };

    let run_all_within = |output_votes: Option<&mut Vec<VoteLog>>,
                          next_usage: &mut dyn FnMut(u32) -> u32|
     -> Result<Vec<ExperimentResult>> {
        let mut rows = Vec::new();
        let mut votes_sink = output_votes;
        for template in &grids.within {
            let cfg = ExperimentConfig {
                grid_id: template.id,
                usage: next_usage(template.id),
                members: template
                    .families
                    .iter()
                    .map(|family| ClassifierSpec::new(*family, template.corpus.clone()))
                    .collect(),
                test_corpus: template.corpus.clone(),
                mode: ExperimentMode::WithinDomain,
                k,
                seed,
            };
            let (mut results, logs) = run_within_domain(&cfg, corpora)?;
            rows.append(&mut results);
            if let Some(votes) = votes_sink.as_mut() {
                votes.extend(logs);
            }
        }
        Ok(rows)
    };

    let mut within_rows: Option<Vec<ExperimentResult>> = None;
    if selection.includes_within() {
        let rows = run_all_within(Some(&mut output.votes), &mut next_usage)?;
        output.within = rows.clone();
        within_rows = Some(rows);
    }

    let mut cache = ModelCache::new();
    if selection.includes_rq21() {
        for template in &grids.cross {
            for test in &template.tests {
                let cfg = ExperimentConfig {
                    grid_id: template.id,
                    usage: next_usage(template.id),
                    members: template
                        .members
                        .iter()
                        .map(|(family, corpus)| ClassifierSpec::new(*family, corpus.clone()))
                        .collect(),
                    test_corpus: test.clone(),
                    mode: ExperimentMode::CrossPlatform,
                    k,
                    seed,
                };
                let (result, log) = run_cross_platform(&cfg, corpora, &mut cache)?;
                output.rq21.push(result);
                output.votes.push(log);
            }
        }
    }

    if selection.includes_rq22() {
        // Best-member selection needs the within-domain runs; compute them
        // silently when the selection skipped them. Usage suffixes are per
        // grid id, so this cannot perturb the cross-platform ids.
        if within_rows.is_none() {
            let mut silent_usage: BTreeMap<u32, u32> = BTreeMap::new();
            let mut silent_next = |grid_id: u32| -> u32 {
                let counter = silent_usage.entry(grid_id).or_insert(0);
                *counter += 1;
                *counter
            };
            within_rows = Some(run_all_within(None, &mut silent_next)?);
        }
        let best = best_member_per_corpus(within_rows.as_ref().expect("computed above"))?;
        for template in &grids.cross_best {
            let members = resolve_best_members(template, &best)?;
            for test in &template.tests {
                let cfg = ExperimentConfig {
                    grid_id: template.id,
                    usage: next_usage(template.id),
                    members: members.clone(),
                    test_corpus: test.clone(),
                    mode: ExperimentMode::CrossPlatform,
                    k,
                    seed,
                };
                let (result, log) = run_cross_platform(&cfg, corpora, &mut cache)?;
                output.rq22.push(result);
                output.votes.push(log);
            }
        }
    }

    output.pretrained = cache.into_models();
    Ok(output)
}

fn resolve_best_members(
    template: &BestOfTemplate,
    best: &BTreeMap<String, ClassifierSpec>,
) -> Result<Vec<ClassifierSpec>> {
    let mut members = Vec::with_capacity(template.trains.len());
    for corpus in &template.trains {
        let spec = best.get(corpus).ok_or_else(|| {
            Error::MissingCoverage(format!(
                "grid {} needs a best member for corpus {corpus:?}, but the \
                 within-domain grids do not cover it",
                template.id
            ))
        })?;
        members.push(spec.clone());
    }
    Ok(members)
}
