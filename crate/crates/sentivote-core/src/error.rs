use alloc::string::String;
use core::fmt;

/// Errors reported by the core operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A label string is not one of `positive`, `neutral`, `negative`.
    UnknownLabel(String),
    /// A document's text is empty after whitespace trimming.
    EmptyText(String),
    /// Two documents in one corpus share an id.
    DuplicateId(String),
    /// An emotion label has no entry in the emotion mapping.
    UnmappedEmotion(String),
    /// A corpus does not match the expected reference distribution.
    DistributionMismatch {
        name: String,
        expected: [usize; 3],
        actual: [usize; 3],
    },
    /// A family name string is not one of the known classifier families.
    UnknownFamily(String),
    /// Training was requested with no training documents.
    EmptyTrainingSet,
    /// Logistic training saw fewer than two distinct classes.
    DegenerateTraining { classes_present: usize },
    /// A training-corpus name is required for this classifier family.
    MissingTrainCorpus,
    /// A vote was requested over an empty or even-length label list.
    InvalidVoteSize(usize),
    /// An ensemble needs an odd member count of at least three.
    InvalidEnsembleSize(usize),
    /// A run identifier does not match `<digits>.<digits>`.
    InvalidRunId(String),
    /// Disagreement rate over an empty prediction list.
    EmptyPredictions,
    /// Predicted and gold label lists differ in length.
    LengthMismatch { predicted: usize, gold: usize },
    /// A rating-matrix row does not sum to the rater count.
    RatingRowSum {
        row: usize,
        expected: u32,
        actual: u32,
    },
    /// A rating matrix needs at least two raters and two subjects.
    InvalidRatingMatrix(String),
    /// Ensemble predictions with inconsistent member counts.
    InconsistentMemberCount { expected: usize, actual: usize },
    /// Kappa outside [-1, 1] passed to the band classifier.
    KappaOutOfRange(f64),
    /// Fold count incompatible with the corpus (k < 2 or k > document count).
    InvalidFoldCount { k: u32, documents: usize },
    /// An experiment configuration violates a mode invariant.
    InvalidExperimentConfig(String),
    /// An experiment references a corpus that was not provided.
    MissingCorpus(String),
    /// Best-member selection lacks within-domain coverage for these
    /// (family, corpus) pairs.
    MissingCoverage(String),
    /// Unknown report format name.
    UnknownFormat(String),
    /// A report was requested over an empty result list.
    EmptyResults,
    /// A report CSV line could not be parsed.
    ReportParse { line: usize, message: String },
    /// A serialized vocabulary or model section could not be parsed.
    ModelParse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownLabel(s) => write!(f, "unknown polarity label {s:?}"),
            Error::EmptyText(id) => write!(f, "document {id:?} has empty text"),
            Error::DuplicateId(id) => write!(f, "duplicate document id {id:?}"),
            Error::UnmappedEmotion(e) => write!(f, "emotion {e:?} has no mapping entry"),
            Error::DistributionMismatch {
                name,
                expected,
                actual,
            } => write!(
                f,
                "corpus {name:?} does not match the reference distribution: \
                 expected {}/{}/{} (positive/neutral/negative), got {}/{}/{}",
                expected[0], expected[1], expected[2], actual[0], actual[1], actual[2]
            ),
            Error::UnknownFamily(s) => write!(f, "unknown classifier family {s:?}"),
            Error::EmptyTrainingSet => write!(f, "training set is empty"),
            Error::DegenerateTraining { classes_present } => write!(
                f,
                "logistic training needs at least 2 distinct classes, found {classes_present}"
            ),
            Error::MissingTrainCorpus => {
                write!(f, "this classifier family requires a training-corpus name")
            }
            Error::InvalidVoteSize(n) => {
                write!(f, "majority vote needs an odd, non-empty label list, got {n}")
            }
            Error::InvalidEnsembleSize(n) => {
                write!(f, "ensemble needs an odd member count >= 3, got {n}")
            }
            Error::InvalidRunId(id) => {
                write!(f, "run id {id:?} does not match <digits>.<digits>")
            }
            Error::EmptyPredictions => write!(f, "prediction list is empty"),
            Error::LengthMismatch { predicted, gold } => write!(
                f,
                "predicted and gold lists differ in length: {predicted} vs {gold}"
            ),
            Error::RatingRowSum {
                row,
                expected,
                actual,
            } => write!(
                f,
                "rating-matrix row {row} sums to {actual}, expected {expected}"
            ),
            Error::InvalidRatingMatrix(msg) => write!(f, "invalid rating matrix: {msg}"),
            Error::InconsistentMemberCount { expected, actual } => write!(
                f,
                "ensemble predictions have inconsistent member counts: {expected} vs {actual}"
            ),
            Error::KappaOutOfRange(k) => write!(f, "kappa {k} outside [-1, 1]"),
            Error::InvalidFoldCount { k, documents } => write!(
                f,
                "cannot split {documents} documents into {k} folds"
            ),
            Error::InvalidExperimentConfig(msg) => {
                write!(f, "invalid experiment configuration: {msg}")
            }
            Error::MissingCorpus(name) => write!(f, "corpus {name:?} is not available"),
            Error::MissingCoverage(pairs) => write!(
                f,
                "within-domain results missing for (family, corpus) pairs: {pairs}"
            ),
            Error::UnknownFormat(s) => write!(f, "unknown report format {s:?}"),
            Error::EmptyResults => write!(f, "result list is empty"),
            Error::ReportParse { line, message } => {
                write!(f, "report line {line}: {message}")
            }
            Error::ModelParse(msg) => write!(f, "model parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
