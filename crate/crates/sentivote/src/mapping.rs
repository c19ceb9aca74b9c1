//! Emotion-mapping files: one `emotion=polarity` pair per line, `#`
//! comments allowed. The shipped default mirrors
//! `EmotionMapping::builtin_default`.

use std::collections::BTreeMap;
use std::path::Path;

use sentivote_core::corpus::{EmotionMapping, Polarity};

use crate::corpus_csv::read_text;
use crate::{Error, Result};

/// The default mapping file shipped with the crate.
pub const DEFAULT_MAPPING_TEXT: &str = include_str!("../data/default_emotions.map");

/// Parses mapping-file text; errors carry 1-based line numbers through
/// `context` (usually the file path).
pub fn parse_mapping(text: &str, context: &Path) -> Result<EmotionMapping> {
    let mut entries = BTreeMap::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = index as u64 + 1;
        let (emotion, polarity) = line.split_once('=').ok_or_else(|| {
            Error::row(context, row, format!("expected emotion=polarity, found {line:?}"))
        })?;
        let emotion = emotion.trim();
        if emotion.is_empty() {
            return Err(Error::row(context, row, "empty emotion name"));
        }
        let polarity = Polarity::parse(polarity.trim())
            .map_err(|e| Error::row(context, row, e.to_string()))?;
        if entries.insert(emotion.to_lowercase(), polarity).is_some() {
            return Err(Error::row(
                context,
                row,
                format!("emotion {emotion:?} mapped twice"),
            ));
        }
    }
    Ok(EmotionMapping::new(entries))
}

pub fn load_mapping(path: &Path) -> Result<EmotionMapping> {
    parse_mapping(&read_text(path)?, path)
}
