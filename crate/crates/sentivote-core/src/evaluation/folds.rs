//! Deterministic stratified k-fold construction.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::corpus::{Corpus, Polarity};
use crate::rng::rng_from_seed;
use crate::{Error, Result};

/// An assignment of every corpus document to one of `k` folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    k: u32,
    seed: u64,
    /// Fold index per document position in the source corpus.
    fold_by_position: Vec<u32>,
    /// Fold index per document id.
    by_id: BTreeMap<String, u32>,
}

impl FoldPlan {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn fold_of_id(&self, id: &str) -> Option<u32> {
        self.by_id.get(id).copied()
    }

    pub fn fold_of_position(&self, position: usize) -> u32 {
        self.fold_by_position[position]
    }

    /// Document positions assigned to `fold`, in corpus order.
    pub fn fold_positions(&self, fold: u32) -> Vec<usize> {
        self.fold_by_position
            .iter()
            .enumerate()
            .filter(|(_, f)| **f == fold)
            .map(|(pos, _)| pos)
            .collect()
    }

    /// Document positions outside `fold`, in corpus order.
    pub fn complement_positions(&self, fold: u32) -> Vec<usize> {
        self.fold_by_position
            .iter()
            .enumerate()
            .filter(|(_, f)| **f != fold)
            .map(|(pos, _)| pos)
            .collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k as usize];
        for &fold in &self.fold_by_position {
            sizes[fold as usize] += 1;
        }
        sizes
    }
}

/// Shuffles each class by the seed and deals documents round-robin to `k`
/// folds, carrying the dealing cursor across classes.
///
/// Every fold's per-class count lands within one of the proportional share,
/// fold sizes differ by at most one overall, and the plan is a function of
/// `(corpus, k, seed)` alone.
pub fn stratified_kfold(corpus: &Corpus, k: u32, seed: u64) -> Result<FoldPlan> {
    if k < 2 || k as usize > corpus.len() {
        return Err(Error::InvalidFoldCount {
            k,
            documents: corpus.len(),
        });
    }

    let mut by_class: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (position, doc) in corpus.documents().iter().enumerate() {
        by_class[doc.label.index()].push(position);
    }

    let mut rng = rng_from_seed(seed);
    let mut fold_by_position = vec![0u32; corpus.len()];
    let mut cursor = 0u32;
    for class in Polarity::ALL {
        let positions = &mut by_class[class.index()];
        positions.shuffle(&mut rng);
        for &position in positions.iter() {
            fold_by_position[position] = cursor;
            cursor = (cursor + 1) % k;
        }
    }

    let by_id = corpus
        .documents()
        .iter()
        .enumerate()
        .map(|(position, doc)| (doc.id.clone(), fold_by_position[position]))
        .collect();

    Ok(FoldPlan {
        k,
        seed,
        fold_by_position,
        by_id,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Document;
    use alloc::format;

    fn corpus(per_class: [usize; 3]) -> Corpus {
        let mut docs = Vec::new();
        for (class_index, count) in per_class.iter().enumerate() {
            let class = Polarity::from_index(class_index).unwrap();
            for i in 0..*count {
                docs.push(
                    Document::new(format!("{class_index}-{i}"), format!("text {i}"), class)
                        .unwrap(),
                );
            }
        }
        Corpus::new("synthetic", docs).unwrap()
    }

    fn per_class_fold_counts(corpus: &Corpus, plan: &FoldPlan) -> Vec<[usize; 3]> {
        let mut counts = vec![[0usize; 3]; plan.k() as usize];
        for (position, doc) in corpus.documents().iter().enumerate() {
            counts[plan.fold_of_position(position) as usize][doc.label.index()] += 1;
        }
        counts
    }

    #[test]
    fn exact_divisibility_gives_equal_folds() {
        let corpus = corpus([5, 0, 5]);
        let plan = stratified_kfold(&corpus, 5, 42).unwrap();
        for counts in per_class_fold_counts(&corpus, &plan) {
            assert_eq!(counts, [1, 0, 1]);
        }
    }

    #[test]
    fn github_sized_corpus_fold_sizes() {
        // 7122 documents with the GitHub reference class counts split 5 ways.
        let corpus = corpus([2013, 3022, 2087]);
        let plan = stratified_kfold(&corpus, 5, 7).unwrap();
        let mut sizes = plan.fold_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes.iter().sum::<usize>(), 7122);
        for size in &sizes {
            assert!(*size == 1424 || *size == 1425, "fold size {size}");
        }
    }

    #[test]
    fn per_class_counts_within_one_of_share() {
        let corpus = corpus([13, 29, 7]);
        let k = 5;
        let plan = stratified_kfold(&corpus, k, 3).unwrap();
        for counts in per_class_fold_counts(&corpus, &plan) {
            for (class_index, count) in counts.iter().enumerate() {
                let share = [13.0, 29.0, 7.0][class_index] / k as f64;
                assert!(
                    (*count as f64 - share).abs() <= 1.0,
                    "class {class_index}: {count} vs share {share}"
                );
            }
        }
    }

    #[test]
    fn same_seed_reproduces_plan() {
        let corpus = corpus([40, 33, 27]);
        let a = stratified_kfold(&corpus, 5, 11).unwrap();
        let b = stratified_kfold(&corpus, 5, 11).unwrap();
        assert_eq!(a, b);
        let c = stratified_kfold(&corpus, 5, 12).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn small_class_distributes_round_robin() {
        // Two positives among five folds: both land in distinct folds.
        let corpus = corpus([2, 20, 0]);
        let plan = stratified_kfold(&corpus, 5, 1).unwrap();
        let counts = per_class_fold_counts(&corpus, &plan);
        let pos_folds: Vec<usize> = counts.iter().map(|c| c[0]).collect();
        assert_eq!(pos_folds.iter().sum::<usize>(), 2);
        assert!(pos_folds.iter().all(|c| *c <= 1));
    }

    #[test]
    fn folds_partition_the_corpus() {
        let corpus = corpus([10, 11, 12]);
        let plan = stratified_kfold(&corpus, 4, 2).unwrap();
        let mut seen = vec![false; corpus.len()];
        for fold in 0..4 {
            for position in plan.fold_positions(fold) {
                assert!(!seen[position]);
                seen[position] = true;
            }
        }
        assert!(seen.iter().all(|s| *s));
        // Complement really is the complement.
        let test = plan.fold_positions(0);
        let train = plan.complement_positions(0);
        assert_eq!(test.len() + train.len(), corpus.len());
        assert!(test.iter().all(|p| !train.contains(p)));
    }

    #[test]
    fn invalid_k_rejected() {
        let corpus = corpus([3, 3, 3]);
        assert_eq!(
            stratified_kfold(&corpus, 1, 0),
            Err(Error::InvalidFoldCount { k: 1, documents: 9 })
        );
        assert_eq!(
            stratified_kfold(&corpus, 10, 0),
            Err(Error::InvalidFoldCount {
                k: 10,
                documents: 9
            })
        );
    }
}
