//! Tokenization and sparse bag-of-words features over a training vocabulary.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use crate::corpus::Document;
use crate::{Error, Result};

/// Splits text into lowercase tokens.
///
/// Tokens are maximal runs of alphanumeric characters; an apostrophe is kept
/// only between two alphanumerics (`don't` stays one token). Everything else
/// separates tokens, so pure punctuation disappears.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for (i, &ch) in chars.iter().enumerate() {
        let keep = ch.is_alphanumeric()
            || (ch == '\''
                && i > 0
                && chars[i - 1].is_alphanumeric()
                && chars.get(i + 1).is_some_and(|c| c.is_alphanumeric()));
        if keep {
            for lower in ch.to_lowercase() {
                current.push(lower);
            }
        } else if !current.is_empty() {
            tokens.push(core::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// Token-to-index map built from training documents only.
///
/// Indices are dense `0..len()` in first-appearance order; each entry also
/// records the token's document frequency. Immutable after build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    index_of: BTreeMap<String, u32>,
    tokens: Vec<String>,
    doc_freq: Vec<u32>,
}

impl Vocabulary {
    /// Builds the vocabulary of tokens whose document frequency is at least
    /// `min_df`, ordered by first appearance in the training scan.
    pub fn build(train_docs: &[Document], min_df: u32) -> Result<Vocabulary> {
        if train_docs.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        let min_df = min_df.max(1);
        let mut order: Vec<String> = Vec::new();
        let mut freq: BTreeMap<String, u32> = BTreeMap::new();
        for doc in train_docs {
            let mut seen_in_doc: alloc::collections::BTreeSet<String> =
                alloc::collections::BTreeSet::new();
            for token in tokenize(&doc.text) {
                if !seen_in_doc.insert(token.clone()) {
                    continue;
                }
                match freq.get_mut(&token) {
                    Some(df) => *df += 1,
                    None => {
                        freq.insert(token.clone(), 1);
                        order.push(token);
                    }
                }
            }
        }

        let mut index_of = BTreeMap::new();
        let mut tokens = Vec::new();
        let mut doc_freq = Vec::new();
        for token in order {
            let df = freq[&token];
            if df >= min_df {
                index_of.insert(token.clone(), tokens.len() as u32);
                tokens.push(token);
                doc_freq.push(df);
            }
        }
        Ok(Vocabulary {
            index_of,
            tokens,
            doc_freq,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn index(&self, token: &str) -> Option<u32> {
        self.index_of.get(token).copied()
    }

    pub fn token(&self, index: u32) -> Option<&str> {
        self.tokens.get(index as usize).map(String::as_str)
    }

    pub fn doc_freq(&self, index: u32) -> Option<u32> {
        self.doc_freq.get(index as usize).copied()
    }

    /// Serializes as one `index<TAB>token<TAB>df` line per entry.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (i, token) in self.tokens.iter().enumerate() {
            out.push_str(&format!("{i}\t{token}\t{}\n", self.doc_freq[i]));
        }
        out
    }

    /// Parses the `to_tsv` format back into a vocabulary.
    pub fn from_tsv(text: &str) -> Result<Vocabulary> {
        let mut index_of = BTreeMap::new();
        let mut tokens = Vec::new();
        let mut doc_freq = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split('\t');
            let (idx, token, df) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some(i), Some(t), Some(d), None) => (i, t, d),
                _ => {
                    return Err(Error::ModelParse(format!(
                        "vocabulary line {}: expected index<TAB>token<TAB>df",
                        lineno + 1
                    )))
                }
            };
            let idx: usize = idx.parse().map_err(|_| {
                Error::ModelParse(format!("vocabulary line {}: bad index", lineno + 1))
            })?;
            if idx != tokens.len() {
                return Err(Error::ModelParse(format!(
                    "vocabulary line {}: index {} out of order",
                    lineno + 1,
                    idx
                )));
            }
            let df: u32 = df.parse().map_err(|_| {
                Error::ModelParse(format!("vocabulary line {}: bad df", lineno + 1))
            })?;
            index_of.insert(token.to_owned(), idx as u32);
            tokens.push(token.to_owned());
            doc_freq.push(df);
        }
        Ok(Vocabulary {
            index_of,
            tokens,
            doc_freq,
        })
    }
}

/// Sparse token-count vector; entries are sorted by index and counts are
/// always at least one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeatureVector {
    entries: Vec<(u32, u32)>,
}

impl FeatureVector {
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.entries.iter().copied()
    }

    pub fn count(&self, index: u32) -> u32 {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .map(|pos| self.entries[pos].1)
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct in-vocabulary tokens.
    pub fn dimensions(&self) -> usize {
        self.entries.len()
    }

    /// Total in-vocabulary token count.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, c)| *c as u64).sum()
    }
}

/// Counts a document's in-vocabulary tokens; out-of-vocabulary tokens are
/// silently ignored.
pub fn vectorize(doc: &Document, vocab: &Vocabulary) -> FeatureVector {
    vectorize_text(&doc.text, vocab)
}

pub fn vectorize_text(text: &str, vocab: &Vocabulary) -> FeatureVector {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for token in tokenize(text) {
        if let Some(index) = vocab.index(&token) {
            *counts.entry(index).or_insert(0) += 1;
        }
    }
    FeatureVector {
        entries: counts.into_iter().collect(),
    }
}
