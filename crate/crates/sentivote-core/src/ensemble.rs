//! Majority-voting ensembles with seeded random tie-breaking.
//!
//! An odd number of member classifiers (at least three) vote on each
//! document. A label with strictly more votes than every other wins
//! outright; otherwise the winner is drawn uniformly among the
//! maximally-voted labels from a deterministic per-document random stream.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::classifiers::{ClassifierModel, ClassifierSpec};
use crate::corpus::{Document, Polarity};
use crate::rng::document_stream;
use crate::{Error, Result};

/// An ensemble definition: ordered members plus a `<grid>.<usage>` run id.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    members: Vec<ClassifierSpec>,
    id: String,
}

impl EnsembleSpec {
    /// Validates the member count (odd, at least three) and the id pattern
    /// (`<digits>.<digits>`).
    pub fn new(members: Vec<ClassifierSpec>, id: impl Into<String>) -> Result<EnsembleSpec> {
        if members.len() < 3 || members.len().is_multiple_of(2) {
            return Err(Error::InvalidEnsembleSize(members.len()));
        }
        let id = id.into();
        if !valid_run_id(&id) {
            return Err(Error::InvalidRunId(id));
        }
        Ok(EnsembleSpec { members, id })
    }

    pub fn members(&self) -> &[ClassifierSpec] {
        &self.members
    }

    pub fn id(&self) -> &str {
        &self.id
    }
}

pub(crate) fn valid_run_id(id: &str) -> bool {
    match id.split_once('.') {
        Some((grid, usage)) => {
            !grid.is_empty()
                && !usage.is_empty()
                && grid.bytes().all(|b| b.is_ascii_digit())
                && usage.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}

/// The votes and outcome for one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnsemblePrediction {
    /// Labels in member order.
    pub member_labels: Vec<Polarity>,
    pub final_label: Polarity,
    /// True iff all member labels are pairwise distinct.
    pub all_disagree: bool,
    /// True iff no label achieved a strict plurality.
    pub tie_broken_randomly: bool,
}

/// Plurality vote over an odd, non-empty label list.
///
/// Returns the winning label and whether it came from a random tie-break.
/// Ties draw uniformly among the maximally-voted labels (taken in the fixed
/// polarity order) from `rng`.
pub fn majority_vote<R: Rng>(labels: &[Polarity], rng: &mut R) -> Result<(Polarity, bool)> {
    if labels.is_empty() || labels.len().is_multiple_of(2) {
        return Err(Error::InvalidVoteSize(labels.len()));
    }
    let mut votes = [0usize; 3];
    for label in labels {
        votes[label.index()] += 1;
    }
    let top = *votes.iter().max().expect("three classes");
    let tied: Vec<Polarity> = Polarity::ALL
        .into_iter()
        .filter(|class| votes[class.index()] == top)
        .collect();
    if tied.len() == 1 {
        Ok((tied[0], false))
    } else {
        let pick = rng.gen_range(0..tied.len());
        Ok((tied[pick], true))
    }
}

/// Runs every member on the document and combines their votes.
pub fn ensemble_predict<R: Rng>(
    models: &[ClassifierModel],
    doc: &Document,
    rng: &mut R,
) -> Result<EnsemblePrediction> {
    let member_labels: Vec<Polarity> = models.iter().map(|m| m.predict(doc)).collect();
    let (final_label, tie_broken_randomly) = majority_vote(&member_labels, rng)?;
    let all_disagree = pairwise_distinct(&member_labels);
    Ok(EnsemblePrediction {
        member_labels,
        final_label,
        all_disagree,
        tie_broken_randomly,
    })
}

/// `ensemble_predict` over a document list, with an independent random
/// stream per document (stream index = document index) so results match
/// sequential execution bit-for-bit regardless of evaluation order.
pub fn ensemble_predict_batch(
    models: &[ClassifierModel],
    docs: &[Document],
    tie_seed: u64,
) -> Result<Vec<EnsemblePrediction>> {
    docs.iter()
        .enumerate()
        .map(|(index, doc)| {
            let mut rng = document_stream(tie_seed, index as u64);
            ensemble_predict(models, doc, &mut rng)
        })
        .collect()
}

fn pairwise_distinct(labels: &[Polarity]) -> bool {
    let mut seen = [false; 3];
    for label in labels {
        if seen[label.index()] {
            return false;
        }
        seen[label.index()] = true;
    }
    true
}

/// Fraction of predictions on which all members disagree.
pub fn disagreement_rate(predictions: &[EnsemblePrediction]) -> Result<f64> {
    if predictions.is_empty() {
        return Err(Error::EmptyPredictions);
    }
    let disagreements = predictions.iter().filter(|p| p.all_disagree).count();
    Ok(disagreements as f64 / predictions.len() as f64)
}
