//! Accuracy, per-class precision/recall/F1, and macro-F1 from a 3x3
//! confusion matrix.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::corpus::Polarity;
use crate::{Error, Result};

/// Precision, recall, and F1 for one class. A class with no true and no
/// predicted instances gets all three as 0.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Classification metrics over a prediction/gold pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    /// Count matrix indexed `[gold][predicted]`.
    pub confusion: [[usize; 3]; 3],
    pub accuracy: f64,
    pub per_class: [ClassMetrics; 3],
    /// Unweighted mean of the three per-class F1 values.
    pub macro_f1: f64,
}

impl MetricsReport {
    pub fn class(&self, class: Polarity) -> ClassMetrics {
        self.per_class[class.index()]
    }

    pub fn total(&self) -> usize {
        self.confusion.iter().flatten().sum()
    }

    /// Gold instance count per class (confusion row sums).
    pub fn gold_counts(&self) -> [usize; 3] {
        let mut counts = [0usize; 3];
        for (gold, row) in self.confusion.iter().enumerate() {
            counts[gold] = row.iter().sum();
        }
        counts
    }

    /// CSV header matching `csv_row`.
    pub fn csv_header() -> &'static str {
        "accuracy,macro_f1,\
         positive_precision,positive_recall,positive_f1,\
         neutral_precision,neutral_recall,neutral_f1,\
         negative_precision,negative_recall,negative_f1"
    }

    pub fn csv_row(&self) -> String {
        let mut fields = Vec::new();
        fields.push(format!("{}", self.accuracy));
        fields.push(format!("{}", self.macro_f1));
        for class in &self.per_class {
            fields.push(format!("{}", class.precision));
            fields.push(format!("{}", class.recall));
            fields.push(format!("{}", class.f1));
        }
        fields.join(",")
    }

    /// Human-readable block with the confusion matrix as a 3x3 table.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("accuracy:  {:.4}\n", self.accuracy));
        out.push_str(&format!("macro F1:  {:.4}\n", self.macro_f1));
        for class in Polarity::ALL {
            let m = self.class(class);
            out.push_str(&format!(
                "{:<9} precision {:.4}  recall {:.4}  F1 {:.4}\n",
                class.as_str(),
                m.precision,
                m.recall,
                m.f1
            ));
        }
        out.push_str("confusion (rows gold, columns predicted):\n");
        out.push_str("            positive   neutral  negative\n");
        for gold in Polarity::ALL {
            out.push_str(&format!("  {:<9}", gold.as_str()));
            for predicted in Polarity::ALL {
                out.push_str(&format!(
                    " {:>9}",
                    self.confusion[gold.index()][predicted.index()]
                ));
            }
            out.push('\n');
        }
        out
    }
}

/// Builds the confusion matrix and derived metrics for equal-length,
/// non-empty prediction/gold lists.
pub fn evaluate(predicted: &[Polarity], gold: &[Polarity]) -> Result<MetricsReport> {
    if predicted.is_empty() && gold.is_empty() {
        return Err(Error::EmptyPredictions);
    }
    if predicted.len() != gold.len() {
        return Err(Error::LengthMismatch {
            predicted: predicted.len(),
            gold: gold.len(),
        });
    }
    let mut confusion = [[0usize; 3]; 3];
    for (p, g) in predicted.iter().zip(gold) {
        confusion[g.index()][p.index()] += 1;
    }
    Ok(from_confusion(confusion))
}

fn from_confusion(confusion: [[usize; 3]; 3]) -> MetricsReport {
    let total: usize = confusion.iter().flatten().sum();
    let trace: usize = (0..3).map(|i| confusion[i][i]).sum();
    let accuracy = trace as f64 / total as f64;

    let mut per_class = [ClassMetrics::default(); 3];
    let mut f1_sum = 0.0;
    for class in 0..3 {
        let tp = confusion[class][class];
        let r#fn: usize = (0..3).filter(|p| *p != class).map(|p| confusion[class][p]).sum();
        let fp: usize = (0..3).filter(|g| *g != class).map(|g| confusion[g][class]).sum();
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + r#fn);
        let f1 = if 2 * tp + fp + r#fn == 0 {
            0.0
        } else {
            2.0 * tp as f64 / (2 * tp + fp + r#fn) as f64
        };
        per_class[class] = ClassMetrics {
            precision,
            recall,
            f1,
        };
        f1_sum += f1;
    }

    MetricsReport {
        confusion,
        accuracy,
        per_class,
        macro_f1: f1_sum / 3.0,
    }
}

fn ratio(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}
