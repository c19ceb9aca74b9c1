//! Labeled polarity corpora: documents, class distributions, emotion-label
//! mapping, and duplicate removal.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use crate::{Error, Result};

/// Three-way sentiment polarity of a statement.
///
/// The order `Positive < Neutral < Negative` is fixed and used everywhere a
/// deterministic iteration or tie-break order is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Neutral,
    Negative,
}

impl Polarity {
    /// All polarities in the fixed order.
    pub const ALL: [Polarity; 3] = [Polarity::Positive, Polarity::Neutral, Polarity::Negative];

    /// Dense index in 0..3 following the fixed order.
    pub fn index(self) -> usize {
        match self {
            Polarity::Positive => 0,
            Polarity::Neutral => 1,
            Polarity::Negative => 2,
        }
    }

    pub fn from_index(index: usize) -> Option<Polarity> {
        Polarity::ALL.get(index).copied()
    }

    /// Parses a label string, case-insensitively.
    pub fn parse(label: &str) -> Result<Polarity> {
        if label.eq_ignore_ascii_case("positive") {
            Ok(Polarity::Positive)
        } else if label.eq_ignore_ascii_case("neutral") {
            Ok(Polarity::Neutral)
        } else if label.eq_ignore_ascii_case("negative") {
            Ok(Polarity::Negative)
        } else {
            Err(Error::UnknownLabel(label.to_owned()))
        }
    }

    /// Canonical lowercase label string.
    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Neutral => "neutral",
            Polarity::Negative => "negative",
        }
    }
}

impl core::fmt::Display for Polarity {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One labeled text statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub label: Polarity,
}

impl Document {
    /// Builds a document, rejecting text that is empty after trimming.
    pub fn new(
        id: impl Into<String>,
        text: impl Into<String>,
        label: Polarity,
    ) -> Result<Document> {
        let id = id.into();
        let text = text.into();
        if text.trim().is_empty() {
            return Err(Error::EmptyText(id));
        }
        Ok(Document { id, text, label })
    }
}

/// Per-class document counts of a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Distribution {
    pub counts: [usize; 3],
}

impl Distribution {
    pub fn count(&self, class: Polarity) -> usize {
        self.counts[class.index()]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Percentage of a class, 0.0 for an empty corpus.
    pub fn percent(&self, class: Polarity) -> f64 {
        let total = self.total();
        if total == 0 {
            0.0
        } else {
            100.0 * self.count(class) as f64 / total as f64
        }
    }

    /// `"890 (19.7%)"` style cell used in distribution tables.
    pub fn cell(&self, class: Polarity) -> String {
        format!("{} ({:.1}%)", self.count(class), self.percent(class))
    }
}

/// A named, ordered collection of labeled documents.
///
/// Corpora are immutable after construction and safe to share across
/// concurrent readers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    name: String,
    documents: Vec<Document>,
    distribution: Distribution,
}

impl Corpus {
    /// Builds a corpus, enforcing unique ids and non-empty texts, and
    /// computing the class distribution. Document order is preserved.
    pub fn new(name: impl Into<String>, documents: Vec<Document>) -> Result<Corpus> {
        let mut seen = BTreeSet::new();
        let mut distribution = Distribution::default();
        for doc in &documents {
            if doc.text.trim().is_empty() {
                return Err(Error::EmptyText(doc.id.clone()));
            }
            if !seen.insert(doc.id.as_str()) {
                return Err(Error::DuplicateId(doc.id.clone()));
            }
            distribution.counts[doc.label.index()] += 1;
        }
        Ok(Corpus {
            name: name.into(),
            documents,
            distribution,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn distribution(&self) -> Distribution {
        self.distribution
    }

    /// Gold labels in document order.
    pub fn labels(&self) -> Vec<Polarity> {
        self.documents.iter().map(|d| d.label).collect()
    }

    /// Removes documents whose normalized text already occurred earlier.
    ///
    /// The first occurrence of each normalized text is kept. When the
    /// duplicates carry conflicting labels the strict majority label wins;
    /// groups with a label tie are dropped entirely. Relative order of kept
    /// documents is preserved.
    pub fn deduplicate(&self) -> Corpus {
        let mut order: Vec<String> = Vec::new();
        let mut groups: BTreeMap<String, (usize, [usize; 3])> = BTreeMap::new();
        for (pos, doc) in self.documents.iter().enumerate() {
            let key = normalize_text(&doc.text);
            match groups.get_mut(&key) {
                Some((_, votes)) => votes[doc.label.index()] += 1,
                None => {
                    let mut votes = [0usize; 3];
                    votes[doc.label.index()] = 1;
                    groups.insert(key.clone(), (pos, votes));
                    order.push(key);
                }
            }
        }

        let mut kept = Vec::new();
        for key in order {
            let (first_pos, votes) = &groups[&key];
            if let Some(label) = strict_majority(votes) {
                let first = &self.documents[*first_pos];
                kept.push(Document {
                    id: first.id.clone(),
                    text: first.text.clone(),
                    label,
                });
            }
        }
        Corpus::new(self.name.clone(), kept).expect("kept documents are valid and unique")
    }

    /// Table-1 style distribution report: one line per class plus a total.
    pub fn distribution_report(&self) -> String {
        let d = self.distribution;
        format!(
            "{}: {} documents\n  positive: {}\n  neutral:  {}\n  negative: {}",
            self.name,
            self.len(),
            d.cell(Polarity::Positive),
            d.cell(Polarity::Neutral),
            d.cell(Polarity::Negative),
        )
    }
}

/// The strictly most frequent class, or `None` on a tie for first place.
fn strict_majority(votes: &[usize; 3]) -> Option<Polarity> {
    let best = *votes.iter().max().expect("non-empty");
    let mut winner = None;
    for class in Polarity::ALL {
        if votes[class.index()] == best {
            if winner.is_some() {
                return None;
            }
            winner = Some(class);
        }
    }
    winner
}

/// Lowercases and collapses all whitespace runs to single spaces.
///
/// This is the normalization used for duplicate detection and for
/// train/test text-overlap reporting.
pub fn normalize_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for ch in text.trim().chars() {
        if ch.is_whitespace() {
            pending_space = true;
        } else {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            for lower in ch.to_lowercase() {
                out.push(lower);
            }
        }
    }
    out
}

/// A statement labeled with a raw emotion name rather than a polarity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmotionDocument {
    pub id: String,
    pub text: String,
    pub emotion: String,
}

/// An ordered collection of emotion-labeled statements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmotionCorpus {
    pub name: String,
    pub documents: Vec<EmotionDocument>,
}

/// Maps emotion names (lowercase) to polarities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmotionMapping {
    entries: BTreeMap<String, Polarity>,
}

impl EmotionMapping {
    pub fn new(entries: BTreeMap<String, Polarity>) -> EmotionMapping {
        let entries = entries
            .into_iter()
            .map(|(k, v)| (k.to_lowercase(), v))
            .collect();
        EmotionMapping { entries }
    }

    /// The default mapping shipped with the framework:
    /// joy/love are positive, anger/sadness/fear/disgust negative,
    /// surprise and neutral map to neutral.
    pub fn builtin_default() -> EmotionMapping {
        let pairs = [
            ("joy", Polarity::Positive),
            ("love", Polarity::Positive),
            ("anger", Polarity::Negative),
            ("sadness", Polarity::Negative),
            ("fear", Polarity::Negative),
            ("disgust", Polarity::Negative),
            ("surprise", Polarity::Neutral),
            ("neutral", Polarity::Neutral),
        ];
        EmotionMapping {
            entries: pairs
                .iter()
                .map(|(k, v)| ((*k).to_owned(), *v))
                .collect(),
        }
    }

    pub fn get(&self, emotion: &str) -> Option<Polarity> {
        self.entries.get(&emotion.to_lowercase()).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, Polarity)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Replaces each document's emotion label with its mapped polarity.
///
/// Document count, ids, and order are preserved. Fails on the first emotion
/// without a mapping entry, naming it.
pub fn map_emotions(raw: &EmotionCorpus, mapping: &EmotionMapping) -> Result<Corpus> {
    let mut documents = Vec::with_capacity(raw.documents.len());
    for doc in &raw.documents {
        let label = mapping
            .get(&doc.emotion)
            .ok_or_else(|| Error::UnmappedEmotion(doc.emotion.clone()))?;
        documents.push(Document {
            id: doc.id.clone(),
            text: doc.text.clone(),
            label,
        });
    }
    Corpus::new(raw.name.clone(), documents)
}

/// Reference per-class counts (positive, neutral, negative) for the five
/// reference data sets, keyed by canonical corpus name.
pub const REFERENCE_DISTRIBUTIONS: [(&str, [usize; 3]); 5] = [
    ("API", [890, 3136, 496]),
    ("APP", [186, 25, 130]),
    ("GitHub", [2013, 3022, 2087]),
    ("JIRA", [290, 3058, 626]),
    ("StackOverflow", [1527, 1694, 1202]),
];

/// Looks up the reference distribution for a canonical corpus name.
pub fn reference_distribution(name: &str) -> Option<Distribution> {
    REFERENCE_DISTRIBUTIONS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, counts)| Distribution { counts: *counts })
}

/// Checks a corpus against the reference distribution for its name, if one
/// exists. Unknown names pass.
pub fn validate_reference_distribution(corpus: &Corpus) -> Result<()> {
    if let Some(expected) = reference_distribution(corpus.name()) {
        let actual = corpus.distribution();
        if actual != expected {
            return Err(Error::DistributionMismatch {
                name: corpus.name().to_owned(),
                expected: expected.counts,
                actual: actual.counts,
            });
        }
    }
    Ok(())
}

/// Short display tag for a corpus name, e.g. `GitHub -> G`.
pub fn corpus_abbreviation(name: &str) -> &str {
    match name {
        "GitHub" => "G",
        "JIRA" => "J",
        "StackOverflow" => "SO",
        other => other,
    }
}
