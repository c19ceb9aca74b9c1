//! Multinomial (softmax) logistic regression trained with SGD over sparse
//! bag-of-words counts.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::classifiers::naive_bayes::argmax_polarity;
use crate::corpus::{Document, Polarity};
use crate::features::{vectorize, vectorize_text, FeatureVector, Vocabulary};
use crate::rng::rng_from_seed;
use crate::{Error, Result};

/// Training hyperparameters for the logistic family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams {
    pub epochs: u32,
    /// Base learning rate; epoch `e` uses `learning_rate / (1 + e)`.
    pub learning_rate: f64,
    pub l2_strength: f64,
}

impl Default for LogisticParams {
    fn default() -> Self {
        LogisticParams {
            epochs: 20,
            learning_rate: 0.1,
            l2_strength: 1e-4,
        }
    }
}

/// A trained softmax regression model: one weight row per class plus bias.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticModel {
    params: LogisticParams,
    train_corpus: String,
    vocab: Vocabulary,
    /// Row-major `[class][token]` weights, 3 * V entries.
    weights: Vec<f64>,
    bias: [f64; 3],
    /// Regularized mean cross-entropy on the training set after each epoch.
    loss_history: Vec<f64>,
}

impl LogisticModel {
    pub fn train(
        params: LogisticParams,
        train_corpus: &str,
        docs: &[Document],
        seed: u64,
    ) -> Result<LogisticModel> {
        if docs.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        let classes: BTreeSet<usize> = docs.iter().map(|d| d.label.index()).collect();
        if classes.len() < 2 {
            return Err(Error::DegenerateTraining {
                classes_present: classes.len(),
            });
        }

        let vocab = Vocabulary::build(docs, 1)?;
        let vectors: Vec<FeatureVector> = docs.iter().map(|d| vectorize(d, &vocab)).collect();
        let labels: Vec<usize> = docs.iter().map(|d| d.label.index()).collect();

        let v = vocab.len();
        let mut weights = vec![0.0f64; 3 * v];
        let mut bias = [0.0f64; 3];
        // Shared scale factor so L2 decay stays O(touched features) per step.
        let mut scale = 1.0f64;
        let mut order: Vec<usize> = (0..docs.len()).collect();
        let mut rng = rng_from_seed(seed);
        let mut loss_history = Vec::with_capacity(params.epochs as usize);

        for epoch in 0..params.epochs {
            let lr = params.learning_rate / (1.0 + f64::from(epoch));
            order.shuffle(&mut rng);
            for &i in &order {
                let probs = softmax(&logits(&weights, scale, &bias, v, &vectors[i]));
                scale *= 1.0 - lr * params.l2_strength;
                if scale < 1e-9 {
                    for w in &mut weights {
                        *w *= scale;
                    }
                    scale = 1.0;
                }
                for class in 0..3 {
                    let grad = probs[class] - if class == labels[i] { 1.0 } else { 0.0 };
                    bias[class] -= lr * grad;
                    for (index, count) in vectors[i].iter() {
                        weights[class * v + index as usize] -=
                            lr * grad * f64::from(count) / scale;
                    }
                }
            }
            loss_history.push(mean_regularized_loss(
                &weights,
                scale,
                &bias,
                v,
                &vectors,
                &labels,
                params.l2_strength,
            ));
        }

        for w in &mut weights {
            *w *= scale;
        }
        Ok(LogisticModel {
            params,
            train_corpus: String::from(train_corpus),
            vocab,
            weights,
            bias,
            loss_history,
        })
    }

    /// Rebuilds a model from persisted parameters.
    pub fn from_parts(
        params: LogisticParams,
        train_corpus: &str,
        vocab: Vocabulary,
        weights: Vec<f64>,
        bias: [f64; 3],
    ) -> Result<LogisticModel> {
        if weights.len() != 3 * vocab.len() {
            return Err(Error::ModelParse(alloc::format!(
                "weight count {} does not match 3 x vocabulary size {}",
                weights.len(),
                vocab.len()
            )));
        }
        Ok(LogisticModel {
            params,
            train_corpus: String::from(train_corpus),
            vocab,
            weights,
            bias,
            loss_history: Vec::new(),
        })
    }

    pub fn params(&self) -> LogisticParams {
        self.params
    }

    pub fn train_corpus(&self) -> &str {
        &self.train_corpus
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> [f64; 3] {
        self.bias
    }

    /// Per-epoch regularized training loss recorded during `train`.
    /// Empty for models rebuilt from persisted parameters.
    pub fn loss_history(&self) -> &[f64] {
        &self.loss_history
    }

    /// Class probabilities for a text; sums to 1 within 1e-9.
    pub fn predict_proba(&self, text: &str) -> [f64; 3] {
        let features = vectorize_text(text, &self.vocab);
        softmax(&logits(
            &self.weights,
            1.0,
            &self.bias,
            self.vocab.len(),
            &features,
        ))
    }

    /// Argmax class; ties resolve to the earlier class in the fixed order.
    /// A document with no in-vocabulary token scores the bias alone.
    pub fn classify(&self, text: &str) -> Polarity {
        let features = vectorize_text(text, &self.vocab);
        let scores = logits(&self.weights, 1.0, &self.bias, self.vocab.len(), &features);
        argmax_polarity(&scores)
    }
}

fn logits(weights: &[f64], scale: f64, bias: &[f64; 3], v: usize, features: &FeatureVector) -> [f64; 3] {
    let mut out = *bias;
    for (index, count) in features.iter() {
        for class in 0..3 {
            out[class] += scale * weights[class * v + index as usize] * f64::from(count);
        }
    }
    out
}

fn softmax(scores: &[f64; 3]) -> [f64; 3] {
    let max = scores
        .iter()
        .fold(f64::NEG_INFINITY, |acc, &s| if s > acc { s } else { acc });
    let mut out = [0.0f64; 3];
    let mut sum = 0.0;
    for class in 0..3 {
        out[class] = libm::exp(scores[class] - max);
        sum += out[class];
    }
    for value in &mut out {
        *value /= sum;
    }
    out
}

fn mean_regularized_loss(
    weights: &[f64],
    scale: f64,
    bias: &[f64; 3],
    v: usize,
    vectors: &[FeatureVector],
    labels: &[usize],
    l2_strength: f64,
) -> f64 {
    let mut loss = 0.0;
    for (features, &label) in vectors.iter().zip(labels) {
        let probs = softmax(&logits(weights, scale, bias, v, features));
        loss -= libm::log(probs[label].max(1e-300));
    }
    loss /= vectors.len() as f64;
    let weight_norm: f64 = weights.iter().map(|w| (scale * w) * (scale * w)).sum();
    loss + 0.5 * l2_strength * weight_norm
}
