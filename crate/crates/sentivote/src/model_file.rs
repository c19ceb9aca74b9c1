//! Model persistence: one self-describing, line-oriented text file per
//! model. Loading a saved model reproduces its predictions exactly -- naive
//! Bayes stores raw counts and rebuilds its log tables the same way
//! training does, and logistic weights round-trip through the shortest
//! float representation.

use std::fs;
use std::path::Path;

use sentivote_core::classifiers::{
    ClassifierModel, LexiconModel, LogisticModel, LogisticParams, NaiveBayesModel,
};
use sentivote_core::features::Vocabulary;

use crate::{Error, Result};

const MAGIC: &str = "sentivote-model v1";
const LEXICON_TAG: &str = "builtin-v1";

/// Serializes a model into the text format.
pub fn model_to_string(model: &ClassifierModel) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("family {}\n", model.family().as_str()));
    out.push_str(&format!("trained-on {}\n", model.train_corpus()));
    match model {
        ClassifierModel::Lexicon(_) => {
            out.push_str(&format!("lexicon {LEXICON_TAG}\n"));
        }
        ClassifierModel::NaiveBayes(m) => {
            out.push_str(&format!("alpha {}\n", m.alpha()));
            let docs = m.class_doc_counts();
            out.push_str(&format!("class-docs {} {} {}\n", docs[0], docs[1], docs[2]));
            push_vocabulary(&mut out, m.vocabulary());
            out.push_str("counts\n");
            for row in m.token_counts() {
                out.push_str(&format!("{} {} {}\n", row[0], row[1], row[2]));
            }
        }
        ClassifierModel::Logistic(m) => {
            let params = m.params();
            out.push_str(&format!("epochs {}\n", params.epochs));
            out.push_str(&format!("learning-rate {}\n", params.learning_rate));
            out.push_str(&format!("l2 {}\n", params.l2_strength));
            let bias = m.bias();
            out.push_str(&format!("bias {} {} {}\n", bias[0], bias[1], bias[2]));
            push_vocabulary(&mut out, m.vocabulary());
            out.push_str("weights\n");
            let v = m.vocabulary().len();
            let weights = m.weights();
            for token in 0..v {
                out.push_str(&format!(
                    "{} {} {}\n",
                    weights[token],
                    weights[v + token],
                    weights[2 * v + token]
                ));
            }
        }
    }
    out.push_str("end\n");
    out
}

fn push_vocabulary(out: &mut String, vocab: &Vocabulary) {
    out.push_str(&format!("vocab {}\n", vocab.len()));
    out.push_str(&vocab.to_tsv());
}

pub fn save_model(model: &ClassifierModel, path: &Path) -> Result<()> {
    fs::write(path, model_to_string(model)).map_err(|e| Error::io(path, e))
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
    path: &'a Path,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(u64, &'a str)> {
        match self.iter.next() {
            Some((index, line)) => Ok((index as u64 + 1, line)),
            None => Err(Error::file(self.path, "unexpected end of model file")),
        }
    }

    /// Next line must start with `key `; returns the remainder.
    fn value(&mut self, key: &str) -> Result<(u64, &'a str)> {
        let (row, line) = self.next()?;
        match line.strip_prefix(key).and_then(|rest| rest.strip_prefix(' ')) {
            Some(value) => Ok((row, value)),
            None => Err(Error::row(
                self.path,
                row,
                format!("expected {key:?} line, found {line:?}"),
            )),
        }
    }

    fn literal(&mut self, expected: &str) -> Result<()> {
        let (row, line) = self.next()?;
        if line != expected {
            return Err(Error::row(
                self.path,
                row,
                format!("expected {expected:?}, found {line:?}"),
            ));
        }
        Ok(())
    }
}

fn parse_number<T: std::str::FromStr>(path: &Path, row: u64, field: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::row(path, row, format!("bad number {field:?}")))
}

fn parse_triple<T: std::str::FromStr + Copy + Default>(
    path: &Path,
    row: u64,
    value: &str,
) -> Result<[T; 3]> {
    let mut out = [T::default(); 3];
    let mut parts = value.split(' ');
    for slot in &mut out {
        let field = parts
            .next()
            .ok_or_else(|| Error::row(path, row, "expected three fields"))?;
        *slot = parse_number(path, row, field)?;
    }
    if parts.next().is_some() {
        return Err(Error::row(path, row, "expected exactly three fields"));
    }
    Ok(out)
}

fn parse_vocabulary(lines: &mut Lines<'_>) -> Result<Vocabulary> {
    let (row, size) = lines.value("vocab")?;
    let size: usize = parse_number(lines.path, row, size)?;
    let mut tsv = String::new();
    for _ in 0..size {
        let (_, line) = lines.next()?;
        tsv.push_str(line);
        tsv.push('\n');
    }
    Vocabulary::from_tsv(&tsv).map_err(Error::from)
}

/// Parses the text format back into a model. `path` is used in diagnostics.
pub fn model_from_str(text: &str, path: &Path) -> Result<ClassifierModel> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
        path,
    };
    lines.literal(MAGIC)?;
    let (family_row, family) = lines.value("family")?;
    let (_, trained_on) = lines.value("trained-on")?;

    let model = match family {
        "lexicon" => {
            let (row, tag) = lines.value("lexicon")?;
            if tag != LEXICON_TAG {
                return Err(Error::row(path, row, format!("unknown lexicon {tag:?}")));
            }
            ClassifierModel::Lexicon(LexiconModel::new(trained_on))
        }
        "naive-bayes" => {
            let (row, alpha) = lines.value("alpha")?;
            let alpha: f64 = parse_number(path, row, alpha)?;
            let (row, docs) = lines.value("class-docs")?;
            let class_docs: [usize; 3] = parse_triple(path, row, docs)?;
            let vocab = parse_vocabulary(&mut lines)?;
            lines.literal("counts")?;
            let mut token_counts = Vec::with_capacity(vocab.len());
            for _ in 0..vocab.len() {
                let (row, line) = lines.next()?;
                token_counts.push(parse_triple::<u64>(path, row, line)?);
            }
            ClassifierModel::NaiveBayes(NaiveBayesModel::from_counts(
                alpha,
                trained_on,
                vocab,
                class_docs,
                token_counts,
            )?)
        }
        "logistic" => {
            let (row, epochs) = lines.value("epochs")?;
            let epochs: u32 = parse_number(path, row, epochs)?;
            let (row, lr) = lines.value("learning-rate")?;
            let learning_rate: f64 = parse_number(path, row, lr)?;
            let (row, l2) = lines.value("l2")?;
            let l2_strength: f64 = parse_number(path, row, l2)?;
            let (row, bias) = lines.value("bias")?;
            let bias: [f64; 3] = parse_triple(path, row, bias)?;
            let vocab = parse_vocabulary(&mut lines)?;
            lines.literal("weights")?;
            let v = vocab.len();
            let mut weights = vec![0.0f64; 3 * v];
            for token in 0..v {
                let (row, line) = lines.next()?;
                let per_class: [f64; 3] = parse_triple(path, row, line)?;
                weights[token] = per_class[0];
                weights[v + token] = per_class[1];
                weights[2 * v + token] = per_class[2];
            }
            let params = LogisticParams {
                epochs,
                learning_rate,
                l2_strength,
            };
            ClassifierModel::Logistic(LogisticModel::from_parts(
                params, trained_on, vocab, weights, bias,
            )?)
        }
        other => {
            return Err(Error::row(
                path,
                family_row,
                format!("unknown family {other:?}"),
            ))
        }
    };
    lines.literal("end")?;
    Ok(model)
}

pub fn load_model(path: &Path) -> Result<ClassifierModel> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    model_from_str(&text, path)
}
