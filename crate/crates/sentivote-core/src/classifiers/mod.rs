//! Three base classifier families behind one train/predict contract:
//! a training-free lexicon scorer, multinomial naive Bayes, and softmax
//! logistic regression.
//!
//! Models are immutable after training and prediction is pure, so models
//! can be shared freely across threads.

pub mod lexicon;
pub mod logistic;
pub mod naive_bayes;

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;

use crate::corpus::{Document, Polarity};
use crate::features::Vocabulary;
use crate::{Error, Result};

pub use lexicon::LexiconModel;
pub use logistic::{LogisticModel, LogisticParams};
pub use naive_bayes::NaiveBayesModel;

/// The classifier families available for ensemble slots. The declaration
/// order is the fixed tie-break order for best-member selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Lexicon,
    NaiveBayes,
    Logistic,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Lexicon, Family::NaiveBayes, Family::Logistic];

    /// Stable machine name used in files and CLI flags.
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Lexicon => "lexicon",
            Family::NaiveBayes => "naive-bayes",
            Family::Logistic => "logistic",
        }
    }

    /// Column-header style name.
    pub fn display_name(self) -> &'static str {
        match self {
            Family::Lexicon => "Lexicon",
            Family::NaiveBayes => "NaiveBayes",
            Family::Logistic => "Logistic",
        }
    }

    pub fn parse(name: &str) -> Result<Family> {
        match name {
            "lexicon" => Ok(Family::Lexicon),
            "naive-bayes" => Ok(Family::NaiveBayes),
            "logistic" => Ok(Family::Logistic),
            other => Err(Error::UnknownFamily(other.to_owned())),
        }
    }
}

impl core::fmt::Display for Family {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Family-specific hyperparameters; the variant determines the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Hyperparameters {
    Lexicon,
    NaiveBayes { alpha: f64 },
    Logistic(LogisticParams),
}

impl Hyperparameters {
    pub fn default_for(family: Family) -> Hyperparameters {
        match family {
            Family::Lexicon => Hyperparameters::Lexicon,
            Family::NaiveBayes => Hyperparameters::NaiveBayes { alpha: 1.0 },
            Family::Logistic => Hyperparameters::Logistic(LogisticParams::default()),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Hyperparameters::Lexicon => Family::Lexicon,
            Hyperparameters::NaiveBayes { .. } => Family::NaiveBayes,
            Hyperparameters::Logistic(_) => Family::Logistic,
        }
    }
}

/// What to train: a family with hyperparameters plus the name of the corpus
/// it trains on. The lexicon family is training-free and accepts `"none"`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierSpec {
    pub hyperparameters: Hyperparameters,
    pub train_corpus: String,
}

impl ClassifierSpec {
    /// A spec with the family's default hyperparameters.
    pub fn new(family: Family, train_corpus: impl Into<String>) -> ClassifierSpec {
        ClassifierSpec {
            hyperparameters: Hyperparameters::default_for(family),
            train_corpus: train_corpus.into(),
        }
    }

    pub fn family(&self) -> Family {
        self.hyperparameters.family()
    }

    fn validate(&self) -> Result<()> {
        if self.family() != Family::Lexicon && self.train_corpus.is_empty() {
            return Err(Error::MissingTrainCorpus);
        }
        Ok(())
    }
}

/// A trained classifier of any family.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassifierModel {
    Lexicon(LexiconModel),
    NaiveBayes(NaiveBayesModel),
    Logistic(LogisticModel),
}

impl ClassifierModel {
    pub fn family(&self) -> Family {
        match self {
            ClassifierModel::Lexicon(_) => Family::Lexicon,
            ClassifierModel::NaiveBayes(_) => Family::NaiveBayes,
            ClassifierModel::Logistic(_) => Family::Logistic,
        }
    }

    pub fn train_corpus(&self) -> &str {
        match self {
            ClassifierModel::Lexicon(m) => m.train_corpus(),
            ClassifierModel::NaiveBayes(m) => m.train_corpus(),
            ClassifierModel::Logistic(m) => m.train_corpus(),
        }
    }

    pub fn hyperparameters(&self) -> Hyperparameters {
        match self {
            ClassifierModel::Lexicon(_) => Hyperparameters::Lexicon,
            ClassifierModel::NaiveBayes(m) => Hyperparameters::NaiveBayes { alpha: m.alpha() },
            ClassifierModel::Logistic(m) => Hyperparameters::Logistic(m.params()),
        }
    }

    pub fn spec(&self) -> ClassifierSpec {
        ClassifierSpec {
            hyperparameters: self.hyperparameters(),
            train_corpus: self.train_corpus().to_owned(),
        }
    }

    pub fn vocabulary(&self) -> Option<&Vocabulary> {
        match self {
            ClassifierModel::Lexicon(_) => None,
            ClassifierModel::NaiveBayes(m) => Some(m.vocabulary()),
            ClassifierModel::Logistic(m) => Some(m.vocabulary()),
        }
    }

    /// Deterministic polarity prediction; prediction-time ties resolve to
    /// the earlier class in the fixed `Positive < Neutral < Negative` order.
    pub fn predict(&self, doc: &Document) -> Polarity {
        match self {
            ClassifierModel::Lexicon(m) => m.classify(&doc.text),
            ClassifierModel::NaiveBayes(m) => m.classify(&doc.text),
            ClassifierModel::Logistic(m) => m.classify(&doc.text),
        }
    }

    /// Element-wise `predict` in input order.
    pub fn predict_batch(&self, docs: &[Document]) -> Vec<Polarity> {
        docs.iter().map(|doc| self.predict(doc)).collect()
    }
}

/// Trains a classifier. Deterministic given the spec, the training document
/// order, and the seed; only the logistic family actually consumes the seed
/// and the lexicon family ignores the documents entirely.
pub fn train(spec: &ClassifierSpec, train_docs: &[Document], seed: u64) -> Result<ClassifierModel> {
    spec.validate()?;
    match spec.hyperparameters {
        Hyperparameters::Lexicon => Ok(ClassifierModel::Lexicon(LexiconModel::new(
            spec.train_corpus.clone(),
        ))),
        Hyperparameters::NaiveBayes { alpha } => Ok(ClassifierModel::NaiveBayes(
            NaiveBayesModel::train(alpha, &spec.train_corpus, train_docs)?,
        )),
        Hyperparameters::Logistic(params) => Ok(ClassifierModel::Logistic(
            LogisticModel::train(params, &spec.train_corpus, train_docs, seed)?,
        )),
    }
}
