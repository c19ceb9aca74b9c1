//! The corpus CSV dialect: `id,text,label` (RFC 4180, UTF-8), plus the
//! `id,text,emotion` variant for emotion-labeled corpora and a loose
//! `id,text[,...]` reader for prediction input.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use sentivote_core::corpus::{Corpus, Document, EmotionCorpus, EmotionDocument, Polarity};

use crate::{Error, Result};

/// What the header of a corpus file announces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    Labeled,
    Emotion,
}

fn reader_for(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(file))
}

fn check_header(path: &Path, reader: &mut csv::Reader<File>, expected: [&str; 3]) -> Result<()> {
    let headers = reader
        .headers()
        .map_err(|e| Error::file(path, e.to_string()))?;
    let fields: Vec<&str> = headers.iter().collect();
    if fields != expected {
        return Err(Error::row(
            path,
            0,
            format!("expected header {:?}, found {:?}", expected.join(","), fields.join(",")),
        ));
    }
    Ok(())
}

/// Reads the header to decide whether a file carries polarity labels or
/// emotion labels.
pub fn sniff_kind(path: &Path) -> Result<CorpusKind> {
    let mut reader = reader_for(path)?;
    let headers = reader
        .headers()
        .map_err(|e| Error::file(path, e.to_string()))?;
    let fields: Vec<&str> = headers.iter().collect();
    match fields.as_slice() {
        ["id", "text", "label"] => Ok(CorpusKind::Labeled),
        ["id", "text", "emotion"] => Ok(CorpusKind::Emotion),
        other => Err(Error::row(
            path,
            0,
            format!(
                "expected header id,text,label or id,text,emotion, found {:?}",
                other.join(",")
            ),
        )),
    }
}

/// Loads a polarity-labeled corpus, reporting the 1-based data row of any
/// malformed record, unknown label, duplicate id, or empty text.
pub fn load_corpus(path: &Path, name: &str) -> Result<Corpus> {
    let mut reader = reader_for(path)?;
    check_header(path, &mut reader, ["id", "text", "label"])?;

    let mut documents = Vec::new();
    let mut seen_ids = std::collections::BTreeSet::new();
    for (index, record) in reader.records().enumerate() {
        let row = index as u64 + 1;
        let record = record.map_err(|e| Error::row(path, row, e.to_string()))?;
        let id = record.get(0).unwrap_or("");
        let text = record.get(1).unwrap_or("");
        let label = record.get(2).unwrap_or("");
        let label = Polarity::parse(label).map_err(|e| Error::row(path, row, e.to_string()))?;
        if text.trim().is_empty() {
            return Err(Error::row(path, row, format!("document {id:?} has empty text")));
        }
        if !seen_ids.insert(id.to_string()) {
            return Err(Error::row(path, row, format!("duplicate document id {id:?}")));
        }
        documents.push(
            Document::new(id, text, label).map_err(|e| Error::row(path, row, e.to_string()))?,
        );
    }
    Corpus::new(name, documents).map_err(Error::from)
}

/// Loads an emotion-labeled corpus (`id,text,emotion`).
pub fn load_emotion_corpus(path: &Path, name: &str) -> Result<EmotionCorpus> {
    let mut reader = reader_for(path)?;
    check_header(path, &mut reader, ["id", "text", "emotion"])?;

    let mut documents = Vec::new();
    let mut seen_ids = std::collections::BTreeSet::new();
    for (index, record) in reader.records().enumerate() {
        let row = index as u64 + 1;
        let record = record.map_err(|e| Error::row(path, row, e.to_string()))?;
        let id = record.get(0).unwrap_or("").to_string();
        let text = record.get(1).unwrap_or("").to_string();
        let emotion = record.get(2).unwrap_or("").to_string();
        if text.trim().is_empty() {
            return Err(Error::row(path, row, format!("document {id:?} has empty text")));
        }
        if emotion.trim().is_empty() {
            return Err(Error::row(path, row, format!("document {id:?} has empty emotion")));
        }
        if !seen_ids.insert(id.clone()) {
            return Err(Error::row(path, row, format!("duplicate document id {id:?}")));
        }
        documents.push(EmotionDocument { id, text, emotion });
    }
    Ok(EmotionCorpus {
        name: name.to_string(),
        documents,
    })
}

/// Serializes a corpus in the canonical dialect: `id,text,label` header,
/// lowercase labels, `\n` record terminator, quotes only where required.
/// Loading and re-writing a canonical file reproduces it byte for byte.
pub fn corpus_to_csv(corpus: &Corpus) -> String {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(["id", "text", "label"]).expect("in-memory write");
    for doc in corpus.documents() {
        writer
            .write_record([doc.id.as_str(), doc.text.as_str(), doc.label.as_str()])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("valid utf-8")
}

/// Writes the canonical CSV form to a file.
pub fn write_corpus(corpus: &Corpus, path: &Path) -> Result<()> {
    let mut file = File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(corpus_to_csv(corpus).as_bytes())
        .map_err(|e| Error::io(path, e))
}

/// A row of prediction input: an id and a text, no label required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionInput {
    pub id: String,
    pub text: String,
}

/// Loads prediction input: a CSV whose header starts with `id,text`; any
/// further columns (such as `label`) are ignored.
pub fn load_prediction_input(path: &Path) -> Result<Vec<PredictionInput>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| Error::file(path, e.to_string()))?;
    let fields: Vec<&str> = headers.iter().collect();
    if fields.len() < 2 || fields[0] != "id" || fields[1] != "text" {
        return Err(Error::row(
            path,
            0,
            format!("expected header starting with id,text, found {:?}", fields.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let row = index as u64 + 1;
        let record = record.map_err(|e| Error::row(path, row, e.to_string()))?;
        let id = record.get(0).unwrap_or("").to_string();
        let text = record.get(1).unwrap_or("").to_string();
        if text.trim().is_empty() {
            return Err(Error::row(path, row, format!("document {id:?} has empty text")));
        }
        rows.push(PredictionInput { id, text });
    }
    Ok(rows)
}

/// Reads a whole file as UTF-8 text with path context on failure.
pub fn read_text(path: &Path) -> Result<String> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Error::io(path, e))?;
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp_csv(content: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(content.as_bytes()).unwrap();
        file
    }

    #[test]
    fn loads_minimal_balanced_corpus() {
        let file = temp_csv("id,text,label\n1,fine,positive\n2,meh,NEUTRAL\n3,bad,Negative\n");
        let corpus = load_corpus(file.path(), "mini").unwrap();
        assert_eq!(corpus.len(), 3);
        assert_eq!(corpus.distribution().counts, [1, 1, 1]);
        assert_eq!(corpus.documents()[0].id, "1");
    }

    #[test]
    fn preserves_document_order_and_quoting() {
        let file = temp_csv("id,text,label\na,\"hello, \"\"world\"\"\",positive\nb,plain,negative\n");
        let corpus = load_corpus(file.path(), "q").unwrap();
        assert_eq!(corpus.documents()[0].text, "hello, \"world\"");
        let written = corpus_to_csv(&corpus);
        assert_eq!(
            written,
            "id,text,label\na,\"hello, \"\"world\"\"\",positive\nb,plain,negative\n"
        );
    }

    #[test]
    fn unknown_label_names_the_row() {
        let file = temp_csv("id,text,label\n1,fine,positive\n2,odd,happy\n");
        match load_corpus(file.path(), "x") {
            Err(Error::Row { row, message, .. }) => {
                assert_eq!(row, 2);
                assert!(message.contains("happy"), "{message}");
            }
            other => panic!("expected row error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_id_and_empty_text_name_rows() {
        let file = temp_csv("id,text,label\n1,fine,positive\n1,again,negative\n");
        match load_corpus(file.path(), "x") {
            Err(Error::Row { row, message, .. }) => {
                assert_eq!(row, 2);
                assert!(message.contains("duplicate"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        let file = temp_csv("id,text,label\n1,   ,positive\n");
        match load_corpus(file.path(), "x") {
            Err(Error::Row { row, message, .. }) => {
                assert_eq!(row, 1);
                assert!(message.contains("empty text"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_column_count_names_the_row() {
        let file = temp_csv("id,text,label\n1,fine,positive\n2,missing\n");
        match load_corpus(file.path(), "x") {
            Err(Error::Row { row, .. }) => assert_eq!(row, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_file_names_the_path() {
        let err = load_corpus(Path::new("/nonexistent/corpus.csv"), "x").unwrap_err();
        assert!(err.to_string().contains("/nonexistent/corpus.csv"));
    }

    #[test]
    fn bad_header_rejected() {
        let file = temp_csv("text,id,label\n");
        assert!(matches!(
            load_corpus(file.path(), "x"),
            Err(Error::Row { row: 0, .. })
        ));
    }

    #[test]
    fn round_trip_reproduces_corpus_and_bytes() {
        let original = "id,text,label\n1,\"multi\nline\",positive\n2,\"comma, inside\",neutral\n3,plain text,negative\n";
        let file = temp_csv(original);
        let corpus = load_corpus(file.path(), "rt").unwrap();
        let written = corpus_to_csv(&corpus);
        assert_eq!(written, original);
        let file2 = temp_csv(&written);
        let reloaded = load_corpus(file2.path(), "rt").unwrap();
        assert_eq!(reloaded, corpus);
    }

    #[test]
    fn sniffs_corpus_kind() {
        let labeled = temp_csv("id,text,label\n");
        assert_eq!(sniff_kind(labeled.path()).unwrap(), CorpusKind::Labeled);
        let emotion = temp_csv("id,text,emotion\n");
        assert_eq!(sniff_kind(emotion.path()).unwrap(), CorpusKind::Emotion);
        let neither = temp_csv("a,b\n");
        assert!(sniff_kind(neither.path()).is_err());
    }

    #[test]
    fn loads_emotion_corpus() {
        let file = temp_csv("id,text,emotion\n1,what a day,joy\n2,sigh,sadness\n");
        let corpus = load_emotion_corpus(file.path(), "emo").unwrap();
        assert_eq!(corpus.documents.len(), 2);
        assert_eq!(corpus.documents[1].emotion, "sadness");
    }

    #[test]
    fn prediction_input_ignores_extra_columns() {
        let file = temp_csv("id,text,label\n1,some text,positive\n2,more text,negative\n");
        let rows = load_prediction_input(file.path()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].text, "some text");
        let bare = temp_csv("id,text\n1,just text\n");
        assert_eq!(load_prediction_input(bare.path()).unwrap().len(), 1);
    }
}
