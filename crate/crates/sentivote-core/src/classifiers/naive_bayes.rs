//! Multinomial naive Bayes over bag-of-words counts with Laplace smoothing.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::corpus::{Document, Polarity};
use crate::features::{vectorize_text, Vocabulary};
use crate::{Error, Result};

/// A trained multinomial naive Bayes model.
///
/// Keeps the raw counts alongside the derived log tables so persisted models
/// can be rebuilt exactly: the log-probabilities are always recomputed from
/// counts the same way.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveBayesModel {
    alpha: f64,
    train_corpus: String,
    vocab: Vocabulary,
    class_doc_counts: [usize; 3],
    /// Per-token per-class token counts, indexed by vocabulary index.
    token_counts: Vec<[u64; 3]>,
    class_token_totals: [u64; 3],
    log_priors: [f64; 3],
    /// Per-token per-class smoothed log-likelihoods.
    log_likelihoods: Vec<[f64; 3]>,
}

impl NaiveBayesModel {
    pub fn train(alpha: f64, train_corpus: &str, docs: &[Document]) -> Result<NaiveBayesModel> {
        if docs.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        let vocab = Vocabulary::build(docs, 1)?;
        let mut class_doc_counts = [0usize; 3];
        let mut token_counts = vec![[0u64; 3]; vocab.len()];
        for doc in docs {
            let class = doc.label.index();
            class_doc_counts[class] += 1;
            for (index, count) in vectorize_text(&doc.text, &vocab).iter() {
                token_counts[index as usize][class] += u64::from(count);
            }
        }
        Self::from_counts(alpha, train_corpus, vocab, class_doc_counts, token_counts)
    }

    /// Rebuilds a model from persisted counts, recomputing the log tables.
    pub fn from_counts(
        alpha: f64,
        train_corpus: &str,
        vocab: Vocabulary,
        class_doc_counts: [usize; 3],
        token_counts: Vec<[u64; 3]>,
    ) -> Result<NaiveBayesModel> {
        if token_counts.len() != vocab.len() {
            return Err(Error::ModelParse(alloc::format!(
                "token-count rows ({}) do not match vocabulary size ({})",
                token_counts.len(),
                vocab.len()
            )));
        }
        let total_docs: usize = class_doc_counts.iter().sum();
        if total_docs == 0 {
            return Err(Error::EmptyTrainingSet);
        }
        let mut class_token_totals = [0u64; 3];
        for row in &token_counts {
            for class in 0..3 {
                class_token_totals[class] += row[class];
            }
        }
        let mut log_priors = [f64::NEG_INFINITY; 3];
        for class in 0..3 {
            if class_doc_counts[class] > 0 {
                log_priors[class] =
                    libm::log(class_doc_counts[class] as f64 / total_docs as f64);
            }
        }
        let vocab_size = vocab.len() as f64;
        let mut log_likelihoods = Vec::with_capacity(token_counts.len());
        for row in &token_counts {
            let mut entry = [0.0f64; 3];
            for class in 0..3 {
                entry[class] = libm::log(
                    (row[class] as f64 + alpha)
                        / (class_token_totals[class] as f64 + alpha * vocab_size),
                );
            }
            log_likelihoods.push(entry);
        }
        Ok(NaiveBayesModel {
            alpha,
            train_corpus: String::from(train_corpus),
            vocab,
            class_doc_counts,
            token_counts,
            class_token_totals,
            log_priors,
            log_likelihoods,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn train_corpus(&self) -> &str {
        &self.train_corpus
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn class_doc_counts(&self) -> [usize; 3] {
        self.class_doc_counts
    }

    pub fn token_counts(&self) -> &[[u64; 3]] {
        &self.token_counts
    }

    /// Smoothed `log P(token | class)`.
    pub fn log_likelihood(&self, index: u32, class: Polarity) -> f64 {
        self.log_likelihoods[index as usize][class.index()]
    }

    /// Log-space posterior scores (unnormalized) for each class.
    pub fn log_scores(&self, text: &str) -> [f64; 3] {
        let mut scores = self.log_priors;
        for (index, count) in vectorize_text(text, &self.vocab).iter() {
            let row = &self.log_likelihoods[index as usize];
            for class in 0..3 {
                if scores[class].is_finite() {
                    scores[class] += f64::from(count) * row[class];
                }
            }
        }
        scores
    }

    /// Argmax class in log space; ties resolve to the earlier class in the
    /// fixed polarity order. Documents with no in-vocabulary token fall back
    /// to the prior argmax.
    pub fn classify(&self, text: &str) -> Polarity {
        argmax_polarity(&self.log_scores(text))
    }
}

/// First class (in fixed order) achieving the maximum score.
pub(crate) fn argmax_polarity(scores: &[f64; 3]) -> Polarity {
    let mut best = Polarity::Positive;
    let mut best_score = scores[0];
    for class in [Polarity::Neutral, Polarity::Negative] {
        if scores[class.index()] > best_score {
            best = class;
            best_score = scores[class.index()];
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Document;

    fn doc(id: &str, text: &str, label: Polarity) -> Document {
        Document::new(id, text, label).unwrap()
    }

    fn hand_model() -> NaiveBayesModel {
        let docs = [
            doc("1", "good good", Polarity::Positive),
            doc("2", "bad", Polarity::Negative),
        ];
        NaiveBayesModel::train(1.0, "t", &docs).unwrap()
    }

    /// Independent smoothed-multinomial estimate used as the oracle:
    /// (count + alpha) / (class total + alpha * V).
    fn smoothed(count: u64, class_total: u64, alpha: f64, vocab: usize) -> f64 {
        (count as f64 + alpha) / (class_total as f64 + alpha * vocab as f64)
    }

    #[test]
    fn hand_computed_likelihoods() {
        let model = hand_model();
        let good = model.vocabulary().index("good").unwrap();
        let bad = model.vocabulary().index("bad").unwrap();
        // Positive class saw "good" twice over 2 tokens; vocabulary is
        // {good, bad}, so P(good|Pos) = (2+1)/(2+2) = 3/4.
        let expected = smoothed(2, 2, 1.0, 2);
        assert_eq!(expected, 0.75);
        assert!((libm::exp(model.log_likelihood(good, Polarity::Positive)) - expected).abs() < 1e-12);
        let expected_bad_neg = smoothed(1, 1, 1.0, 2);
        assert!(
            (libm::exp(model.log_likelihood(bad, Polarity::Negative)) - expected_bad_neg).abs()
                < 1e-12
        );
    }

    #[test]
    fn likelihoods_normalize_per_class() {
        let docs = [
            doc("1", "alpha beta beta gamma", Polarity::Positive),
            doc("2", "beta delta", Polarity::Neutral),
            doc("3", "gamma gamma", Polarity::Negative),
        ];
        let model = NaiveBayesModel::train(1.0, "t", &docs).unwrap();
        for class in Polarity::ALL {
            let sum: f64 = (0..model.vocabulary().len() as u32)
                .map(|i| libm::exp(model.log_likelihood(i, class)))
                .sum();
            assert!((sum - 1.0).abs() < 1e-9, "class {class}: {sum}");
        }
    }

    #[test]
    fn predicts_hand_example() {
        let model = hand_model();
        assert_eq!(model.classify("good"), Polarity::Positive);
        assert_eq!(model.classify("bad"), Polarity::Negative);
    }

    #[test]
    fn empty_or_oov_text_falls_back_to_prior_argmax() {
        let docs = [
            doc("1", "x", Polarity::Neutral),
            doc("2", "y", Polarity::Neutral),
            doc("3", "z", Polarity::Positive),
        ];
        let model = NaiveBayesModel::train(1.0, "t", &docs).unwrap();
        assert_eq!(model.classify("unseen words only"), Polarity::Neutral);
        assert_eq!(model.classify(""), Polarity::Neutral);
    }

    #[test]
    fn absent_class_is_never_predicted() {
        let docs = [
            doc("1", "good", Polarity::Positive),
            doc("2", "bad", Polarity::Negative),
        ];
        let model = NaiveBayesModel::train(1.0, "t", &docs).unwrap();
        for text in ["good", "bad", "good bad", ""] {
            assert_ne!(model.classify(text), Polarity::Neutral);
        }
    }

    #[test]
    fn log_scores_stay_finite_for_huge_documents() {
        let model = hand_model();
        let mut text = String::new();
        for _ in 0..100_000 {
            text.push_str("good ");
        }
        let scores = model.log_scores(&text);
        assert!(scores[Polarity::Positive.index()].is_finite());
        assert_eq!(model.classify(&text), Polarity::Positive);
    }

    #[test]
    fn empty_training_set_fails() {
        assert_eq!(
            NaiveBayesModel::train(1.0, "t", &[]),
            Err(Error::EmptyTrainingSet)
        );
    }
}
