//! Evaluation machinery: stratified k-fold plans, classification metrics,
//! and Fleiss' kappa agreement with Landis-Koch interpretation.

mod agreement;
mod folds;
mod metrics;

pub use agreement::{
    fleiss_kappa, landis_koch_band, ratings_from_votes, AgreementBand, AgreementReport,
    RatingMatrix,
};
pub use folds::{stratified_kfold, FoldPlan};
pub use metrics::{evaluate, ClassMetrics, MetricsReport};
