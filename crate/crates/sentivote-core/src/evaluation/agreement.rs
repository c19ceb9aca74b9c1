//! Fleiss' kappa over the ensemble members treated as raters, with the
//! Landis-Koch interpretation bands.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ensemble::EnsemblePrediction;
use crate::{Error, Result};

/// Subjects-by-categories count matrix: row `i` records how many of the `n`
/// raters assigned each polarity to subject `i`. Every row sums to `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatingMatrix {
    rows: Vec<[u32; 3]>,
    raters: u32,
}

impl RatingMatrix {
    pub fn new(rows: Vec<[u32; 3]>, raters: u32) -> Result<RatingMatrix> {
        if raters < 2 {
            return Err(Error::InvalidRatingMatrix(format!(
                "needs at least 2 raters, got {raters}"
            )));
        }
        for (index, row) in rows.iter().enumerate() {
            let sum: u32 = row.iter().sum();
            if sum != raters {
                return Err(Error::RatingRowSum {
                    row: index,
                    expected: raters,
                    actual: sum,
                });
            }
        }
        Ok(RatingMatrix { rows, raters })
    }

    pub fn rows(&self) -> &[[u32; 3]] {
        &self.rows
    }

    pub fn raters(&self) -> u32 {
        self.raters
    }

    pub fn subjects(&self) -> usize {
        self.rows.len()
    }
}

/// Landis-Koch qualitative bands for kappa. Upper bounds are closed:
/// `(0.60, 0.80]` is Substantial, for example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AgreementBand {
    Poor,
    Slight,
    Fair,
    Moderate,
    Substantial,
    AlmostPerfect,
}

impl AgreementBand {
    pub fn as_str(self) -> &'static str {
        match self {
            AgreementBand::Poor => "poor",
            AgreementBand::Slight => "slight",
            AgreementBand::Fair => "fair",
            AgreementBand::Moderate => "moderate",
            AgreementBand::Substantial => "substantial",
            AgreementBand::AlmostPerfect => "almost-perfect",
        }
    }

    pub fn parse(name: &str) -> Result<AgreementBand> {
        match name {
            "poor" => Ok(AgreementBand::Poor),
            "slight" => Ok(AgreementBand::Slight),
            "fair" => Ok(AgreementBand::Fair),
            "moderate" => Ok(AgreementBand::Moderate),
            "substantial" => Ok(AgreementBand::Substantial),
            "almost-perfect" => Ok(AgreementBand::AlmostPerfect),
            other => Err(Error::ModelParse(format!("unknown agreement band {other:?}"))),
        }
    }
}

impl core::fmt::Display for AgreementBand {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Kappa plus the quantities it derives from.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub kappa: f64,
    pub band: AgreementBand,
    /// Mean per-subject agreement, the P-bar term.
    pub mean_agreement: f64,
    /// Chance agreement from the category marginals, the P-bar-e term.
    pub expected_agreement: f64,
    /// True when every rating fell in one category, where kappa is defined
    /// as 1 by convention rather than by the formula.
    pub degenerate: bool,
}

impl AgreementReport {
    pub fn csv_header() -> &'static str {
        "kappa,band,mean_agreement,expected_agreement,degenerate"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.kappa, self.band, self.mean_agreement, self.expected_agreement, self.degenerate
        )
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "Fleiss' kappa: {:.4} ({})\n  mean agreement:     {:.4}\n  expected agreement: {:.4}\n",
            self.kappa, self.band, self.mean_agreement, self.expected_agreement
        );
        if self.degenerate {
            out.push_str("  note: all ratings in a single category; kappa fixed at 1\n");
        }
        out
    }
}

/// Fleiss' kappa: `(P-bar - P-bar-e) / (1 - P-bar-e)`.
///
/// Per-subject agreement is `(sum_j n_ij^2 - n) / (n (n - 1))` and the
/// chance agreement is the sum of squared category proportions. When every
/// rating falls in one category the denominator vanishes; agreement is then
/// trivially perfect and kappa is reported as 1 with the degenerate flag.
pub fn fleiss_kappa(matrix: &RatingMatrix) -> Result<AgreementReport> {
    let subjects = matrix.subjects();
    if subjects < 2 {
        return Err(Error::InvalidRatingMatrix(format!(
            "needs at least 2 subjects, got {subjects}"
        )));
    }
    let n = f64::from(matrix.raters());
    let total_ratings = n * subjects as f64;

    let mut mean_agreement = 0.0;
    let mut category_totals = [0.0f64; 3];
    for row in matrix.rows() {
        let mut squares = 0.0;
        for (category, count) in row.iter().enumerate() {
            let count = f64::from(*count);
            squares += count * count;
            category_totals[category] += count;
        }
        mean_agreement += (squares - n) / (n * (n - 1.0));
    }
    mean_agreement /= subjects as f64;

    let mut expected_agreement = 0.0;
    for total in category_totals {
        let proportion = total / total_ratings;
        expected_agreement += proportion * proportion;
    }

    let (kappa, degenerate) = if expected_agreement >= 1.0 {
        (1.0, true)
    } else {
        let raw = (mean_agreement - expected_agreement) / (1.0 - expected_agreement);
        // The formula cannot leave [-1, 1]; absorb float dust.
        (raw.clamp(-1.0, 1.0), false)
    };
    let band = landis_koch_band(kappa)?;
    Ok(AgreementReport {
        kappa,
        band,
        mean_agreement,
        expected_agreement,
        degenerate,
    })
}

/// Maps kappa to its Landis-Koch band; kappa must lie in [-1, 1].
pub fn landis_koch_band(kappa: f64) -> Result<AgreementBand> {
    if !(-1.0..=1.0).contains(&kappa) || kappa.is_nan() {
        return Err(Error::KappaOutOfRange(kappa));
    }
    Ok(if kappa < 0.0 {
        AgreementBand::Poor
    } else if kappa <= 0.20 {
        AgreementBand::Slight
    } else if kappa <= 0.40 {
        AgreementBand::Fair
    } else if kappa <= 0.60 {
        AgreementBand::Moderate
    } else if kappa <= 0.80 {
        AgreementBand::Substantial
    } else {
        AgreementBand::AlmostPerfect
    })
}

/// Turns member votes into a rating matrix: row `i` counts how many members
/// assigned each polarity to document `i`.
pub fn ratings_from_votes(predictions: &[EnsemblePrediction]) -> Result<RatingMatrix> {
    if predictions.is_empty() {
        return Err(Error::EmptyPredictions);
    }
    let raters = predictions[0].member_labels.len();
    let mut rows = Vec::with_capacity(predictions.len());
    for prediction in predictions {
        if prediction.member_labels.len() != raters {
            return Err(Error::InconsistentMemberCount {
                expected: raters,
                actual: prediction.member_labels.len(),
            });
        }
        let mut row = [0u32; 3];
        for label in &prediction.member_labels {
            row[label.index()] += 1;
        }
        rows.push(row);
    }
    RatingMatrix::new(rows, raters as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::Rng;

    use crate::corpus::Polarity;
    use crate::rng::rng_from_seed;
    use Polarity::{Negative as Neg, Neutral as Neu, Positive as Pos};

    /// Independent oracle: reconstruct each subject's rater labels and count
    /// agreeing rater pairs explicitly.
    fn pairwise_oracle(matrix: &RatingMatrix) -> f64 {
        let n = matrix.raters() as usize;
        let mut mean = 0.0;
        for row in matrix.rows() {
            let mut labels = Vec::new();
            for (category, count) in row.iter().enumerate() {
                for _ in 0..*count {
                    labels.push(category);
                }
            }
            let mut agreeing = 0usize;
            for a in 0..n {
                for b in (a + 1)..n {
                    if labels[a] == labels[b] {
                        agreeing += 1;
                    }
                }
            }
            mean += agreeing as f64 / (n * (n - 1) / 2) as f64;
        }
        mean /= matrix.subjects() as f64;

        let mut totals = [0.0f64; 3];
        for row in matrix.rows() {
            for (category, count) in row.iter().enumerate() {
                totals[category] += f64::from(*count);
            }
        }
        let grand: f64 = totals.iter().sum();
        let expected: f64 = totals.iter().map(|t| (t / grand) * (t / grand)).sum();
        if expected >= 1.0 {
            1.0
        } else {
            (mean - expected) / (1.0 - expected)
        }
    }

    #[test]
    fn unanimous_raters_give_kappa_one() {
        let matrix = RatingMatrix::new(vec![[3, 0, 0], [0, 0, 3], [0, 3, 0]], 3).unwrap();
        let report = fleiss_kappa(&matrix).unwrap();
        assert_eq!(report.kappa, 1.0);
        assert_eq!(report.band, AgreementBand::AlmostPerfect);
        assert!(!report.degenerate);
    }

    #[test]
    fn two_subject_example() {
        let matrix = RatingMatrix::new(vec![[3, 0, 0], [0, 3, 0]], 3).unwrap();
        let report = fleiss_kappa(&matrix).unwrap();
        assert_eq!(report.mean_agreement, 1.0);
        assert!((report.expected_agreement - 0.5).abs() < 1e-12);
        assert_eq!(report.kappa, 1.0);
    }

    #[test]
    fn single_category_everywhere_is_degenerate() {
        let matrix = RatingMatrix::new(vec![[0, 3, 0]; 4], 3).unwrap();
        let report = fleiss_kappa(&matrix).unwrap();
        assert_eq!(report.kappa, 1.0);
        assert!(report.degenerate);
    }

    #[test]
    fn all_distinct_votes_give_negative_kappa() {
        // Every row [1,1,1]: mean agreement 0, expected 1/3, kappa -1/2.
        let matrix = RatingMatrix::new(vec![[1, 1, 1]; 10], 3).unwrap();
        let report = fleiss_kappa(&matrix).unwrap();
        assert_eq!(report.mean_agreement, 0.0);
        let expected = report.expected_agreement;
        assert!((report.kappa - (-expected / (1.0 - expected))).abs() < 1e-12);
        assert!(report.kappa < 0.0);
        assert_eq!(report.band, AgreementBand::Poor);
    }

    #[test]
    fn matches_pairwise_oracle_on_random_matrices() {
        let mut rng = rng_from_seed(314);
        for _ in 0..100 {
            let subjects = rng.gen_range(2..=20);
            let raters = rng.gen_range(2..=5u32);
            let mut rows = Vec::new();
            for _ in 0..subjects {
                let mut row = [0u32; 3];
                for _ in 0..raters {
                    row[rng.gen_range(0..3)] += 1;
                }
                rows.push(row);
            }
            let matrix = RatingMatrix::new(rows, raters).unwrap();
            let report = fleiss_kappa(&matrix).unwrap();
            let oracle = pairwise_oracle(&matrix);
            assert!(
                (report.kappa - oracle).abs() < 1e-12,
                "{} vs {}",
                report.kappa,
                oracle
            );
        }
    }

    #[test]
    fn random_ratings_have_near_zero_kappa() {
        let mut rng = rng_from_seed(2718);
        let mut rows = Vec::new();
        for _ in 0..10_000 {
            let mut row = [0u32; 3];
            for _ in 0..3 {
                row[rng.gen_range(0..3)] += 1;
            }
            rows.push(row);
        }
        let matrix = RatingMatrix::new(rows, 3).unwrap();
        let report = fleiss_kappa(&matrix).unwrap();
        assert!(report.kappa.abs() < 0.02, "kappa {}", report.kappa);
    }

    #[test]
    fn row_sum_mismatch_rejected() {
        assert_eq!(
            RatingMatrix::new(vec![[1, 1, 0]], 3),
            Err(Error::RatingRowSum {
                row: 0,
                expected: 3,
                actual: 2
            })
        );
        assert!(matches!(
            RatingMatrix::new(vec![[1, 0, 0]], 1),
            Err(Error::InvalidRatingMatrix(_))
        ));
        let single = RatingMatrix::new(vec![[3, 0, 0]], 3).unwrap();
        assert!(matches!(
            fleiss_kappa(&single),
            Err(Error::InvalidRatingMatrix(_))
        ));
    }

    #[test]
    fn report_serialization_shapes() {
        let matrix = RatingMatrix::new(vec![[3, 0, 0], [0, 3, 0]], 3).unwrap();
        let report = fleiss_kappa(&matrix).unwrap();
        let header_fields = AgreementReport::csv_header().split(',').count();
        assert_eq!(report.csv_row().split(',').count(), header_fields);
        assert!(report.csv_row().starts_with("1,almost-perfect,"));
        assert!(report.render().contains("Fleiss' kappa: 1.0000"));
    }

    #[test]
    fn band_boundaries() {
        assert_eq!(landis_koch_band(0.83).unwrap(), AgreementBand::AlmostPerfect);
        assert_eq!(landis_koch_band(0.68).unwrap(), AgreementBand::Substantial);
        assert_eq!(landis_koch_band(0.0).unwrap(), AgreementBand::Slight);
        assert_eq!(landis_koch_band(0.20).unwrap(), AgreementBand::Slight);
        assert_eq!(landis_koch_band(0.40).unwrap(), AgreementBand::Fair);
        assert_eq!(landis_koch_band(0.42).unwrap(), AgreementBand::Moderate);
        assert_eq!(landis_koch_band(0.60).unwrap(), AgreementBand::Moderate);
        assert_eq!(landis_koch_band(0.80).unwrap(), AgreementBand::Substantial);
        assert_eq!(landis_koch_band(1.0).unwrap(), AgreementBand::AlmostPerfect);
        assert_eq!(landis_koch_band(-0.3).unwrap(), AgreementBand::Poor);
        assert_eq!(landis_koch_band(1.5), Err(Error::KappaOutOfRange(1.5)));
        assert_eq!(landis_koch_band(-1.1), Err(Error::KappaOutOfRange(-1.1)));
    }

    #[test]
    fn band_is_monotone_in_kappa() {
        let mut previous = AgreementBand::Poor;
        let mut k = -1.0;
        while k <= 1.0 {
            let band = landis_koch_band(k).unwrap();
            assert!(band >= previous, "band regressed at kappa {k}");
            previous = band;
            k += 0.005;
        }
    }

    #[test]
    fn ratings_from_votes_counts_members() {
        let prediction = EnsemblePrediction {
            member_labels: vec![Pos, Pos, Neg],
            final_label: Pos,
            all_disagree: false,
            tie_broken_randomly: false,
        };
        let other = EnsemblePrediction {
            member_labels: vec![Neu, Neu, Neu],
            final_label: Neu,
            all_disagree: false,
            tie_broken_randomly: false,
        };
        let matrix = ratings_from_votes(&[prediction.clone(), other]).unwrap();
        assert_eq!(matrix.rows()[0], [2, 0, 1]);
        assert_eq!(matrix.rows()[1], [0, 3, 0]);

        let short = EnsemblePrediction {
            member_labels: vec![Pos, Pos, Pos, Pos, Neg],
            final_label: Pos,
            all_disagree: false,
            tie_broken_randomly: false,
        };
        assert_eq!(
            ratings_from_votes(&[prediction, short]),
            Err(Error::InconsistentMemberCount {
                expected: 3,
                actual: 5
            })
        );
    }

    #[test]
    fn unanimous_votes_reach_kappa_one_downstream() {
        let predictions = vec![
            EnsemblePrediction {
                member_labels: vec![Pos, Pos, Pos],
                final_label: Pos,
                all_disagree: false,
                tie_broken_randomly: false,
            },
            EnsemblePrediction {
                member_labels: vec![Neg, Neg, Neg],
                final_label: Neg,
                all_disagree: false,
                tie_broken_randomly: false,
            },
        ];
        let matrix = ratings_from_votes(&predictions).unwrap();
        assert_eq!(fleiss_kappa(&matrix).unwrap().kappa, 1.0);
    }
}
