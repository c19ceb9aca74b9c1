//! Config-driven experiment grids: within-domain cross-validation runs,
//! cross-platform runs over pre-trained members, best-member selection,
//! and result-table reports.

mod report;
mod runner;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::classifiers::{ClassifierSpec, Family};
use crate::corpus::Polarity;
use crate::ensemble::valid_run_id;
use crate::evaluation::AgreementBand;
use crate::{Error, Result};

pub use report::{
    emit_report, parse_report_csv, render_csv, render_markdown, render_markdown_section,
    ReportFormat,
};
pub use runner::{
    best_member_per_corpus, run_cross_platform, run_grid, run_within_domain, text_overlap,
    vocab_overlap, CorpusStore, GridRunOutput, ModelCache,
};

/// Whether members train on folds of the test corpus or on other corpora.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentMode {
    WithinDomain,
    CrossPlatform,
}

impl ExperimentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentMode::WithinDomain => "within",
            ExperimentMode::CrossPlatform => "cross",
        }
    }

    pub fn parse(name: &str) -> Result<ExperimentMode> {
        match name {
            "within" => Ok(ExperimentMode::WithinDomain),
            "cross" => Ok(ExperimentMode::CrossPlatform),
            other => Err(Error::ReportParse {
                line: 0,
                message: alloc::format!("unknown mode {other:?}"),
            }),
        }
    }
}

/// Which part of a run a result row describes: one fold (1-based), the
/// mean across folds, or the full test corpus of a cross-platform run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldLabel {
    Full,
    Fold(u32),
    Mean,
}

impl FoldLabel {
    pub fn render(self) -> String {
        match self {
            FoldLabel::Full => "-".to_string(),
            FoldLabel::Fold(n) => n.to_string(),
            FoldLabel::Mean => "mean".to_string(),
        }
    }

    pub fn parse(text: &str) -> Result<FoldLabel> {
        match text {
            "-" => Ok(FoldLabel::Full),
            "mean" => Ok(FoldLabel::Mean),
            other => other.parse::<u32>().map(FoldLabel::Fold).map_err(|_| {
                Error::ReportParse {
                    line: 0,
                    message: alloc::format!("bad fold label {other:?}"),
                }
            }),
        }
    }
}

/// One experiment: an ensemble, a test corpus, and how to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub grid_id: u32,
    /// 1-based reuse counter for this grid id; together they form the
    /// run id `<grid_id>.<usage>`.
    pub usage: u32,
    pub members: Vec<ClassifierSpec>,
    pub test_corpus: String,
    pub mode: ExperimentMode,
    /// Fold count; used by within-domain runs only.
    pub k: u32,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn run_id(&self) -> String {
        alloc::format!("{}.{}", self.grid_id, self.usage)
    }

    /// Checks the ensemble size and the mode's training-corpus invariant:
    /// within-domain members all train on the test corpus, cross-platform
    /// members never do.
    pub fn validate(&self) -> Result<()> {
        if self.members.len() < 3 || self.members.len().is_multiple_of(2) {
            return Err(Error::InvalidEnsembleSize(self.members.len()));
        }
        debug_assert!(valid_run_id(&self.run_id()));
        match self.mode {
            ExperimentMode::WithinDomain => {
                for member in &self.members {
                    if member.train_corpus != self.test_corpus {
                        return Err(Error::InvalidExperimentConfig(alloc::format!(
                            "within-domain run {} has member {} trained on {:?}, \
                             expected test corpus {:?}",
                            self.run_id(),
                            member.family(),
                            member.train_corpus,
                            self.test_corpus
                        )));
                    }
                }
            }
            ExperimentMode::CrossPlatform => {
                for member in &self.members {
                    if member.train_corpus == self.test_corpus {
                        return Err(Error::InvalidExperimentConfig(alloc::format!(
                            "cross-platform run {} has member {} trained on the \
                             test corpus {:?}",
                            self.run_id(),
                            member.family(),
                            self.test_corpus
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One member's performance inside a result row.
#[derive(Debug, Clone, PartialEq)]
pub struct MemberOutcome {
    pub family: Family,
    pub train_corpus: String,
    pub accuracy: f64,
    pub macro_f1: f64,
}

/// One row of a results table.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub run_id: String,
    pub mode: ExperimentMode,
    pub fold: FoldLabel,
    pub test_corpus: String,
    pub n_test: usize,
    pub vc_accuracy: f64,
    pub vc_macro_f1: f64,
    pub members: Vec<MemberOutcome>,
    pub disagreement_rate: f64,
    pub kappa: f64,
    pub band: AgreementBand,
    /// Fraction of the test vocabulary also seen in the members' training
    /// corpora; cross-platform rows only.
    pub vocab_overlap: Option<f64>,
    /// Fraction of test documents whose normalized text occurs in the
    /// members' training corpora; cross-platform rows only.
    pub text_overlap: Option<f64>,
    pub seed: u64,
}

/// A within-domain grid entry (one corpus, all listed families trained and
/// tested on it via k-fold cross-validation).
#[derive(Debug, Clone, PartialEq)]
pub struct WithinTemplate {
    pub id: u32,
    pub corpus: String,
    pub families: Vec<Family>,
}

/// A cross-platform grid entry with explicit (family, training corpus)
/// slots, evaluated once per test corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossTemplate {
    pub id: u32,
    pub members: Vec<(Family, String)>,
    pub tests: Vec<String>,
}

/// A cross-platform grid entry whose member families come from best-member
/// selection: slot `i` uses the best within-domain family for `trains[i]`,
/// trained on `trains[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BestOfTemplate {
    pub id: u32,
    pub trains: Vec<String>,
    pub tests: Vec<String>,
}

/// The full experiment grid, usually loaded from a grids file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GridDefinition {
    pub within: Vec<WithinTemplate>,
    pub cross: Vec<CrossTemplate>,
    pub cross_best: Vec<BestOfTemplate>,
}

/// Which grid sections to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSelection {
    Within,
    Rq21,
    Rq22,
    All,
}

impl GridSelection {
    pub fn parse(name: &str) -> Result<GridSelection> {
        match name {
            "within" => Ok(GridSelection::Within),
            "rq21" => Ok(GridSelection::Rq21),
            "rq22" => Ok(GridSelection::Rq22),
            "all" => Ok(GridSelection::All),
            other => Err(Error::InvalidExperimentConfig(alloc::format!(
                "unknown grid selection {other:?} (expected within, rq21, rq22, or all)"
            ))),
        }
    }

    pub fn includes_within(self) -> bool {
        matches!(self, GridSelection::Within | GridSelection::All)
    }

    pub fn includes_rq21(self) -> bool {
        matches!(self, GridSelection::Rq21 | GridSelection::All)
    }

    pub fn includes_rq22(self) -> bool {
        matches!(self, GridSelection::Rq22 | GridSelection::All)
    }
}

/// Per-document votes of one run (and fold, for within-domain runs).
#[derive(Debug, Clone, PartialEq)]
pub struct VoteLog {
    pub run_id: String,
    pub fold: FoldLabel,
    pub rows: Vec<VoteLogRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VoteLogRow {
    pub doc_id: String,
    pub member_labels: Vec<Polarity>,
    pub final_label: Polarity,
    pub tie: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(mode_corpus: &str) -> Vec<ClassifierSpec> {
        Family::ALL
            .iter()
            .map(|f| ClassifierSpec::new(*f, mode_corpus))
            .collect()
    }

    #[test]
    fn run_id_format() {
        let cfg = ExperimentConfig {
            grid_id: 2,
            usage: 1,
            members: members("JIRA"),
            test_corpus: "JIRA".into(),
            mode: ExperimentMode::WithinDomain,
            k: 5,
            seed: 42,
        };
        assert_eq!(cfg.run_id(), "2.1");
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn within_mode_requires_training_on_test_corpus() {
        let mut cfg = ExperimentConfig {
            grid_id: 1,
            usage: 1,
            members: members("GitHub"),
            test_corpus: "GitHub".into(),
            mode: ExperimentMode::WithinDomain,
            k: 5,
            seed: 42,
        };
        assert!(cfg.validate().is_ok());
        cfg.members[1].train_corpus = "JIRA".into();
        assert!(matches!(
            cfg.validate(),
            Err(Error::InvalidExperimentConfig(_))
        ));
    }

    #[test]
    fn cross_mode_rejects_training_on_test_corpus() {
        let mut cfg = ExperimentConfig {
            grid_id: 6,
            usage: 1,
            members: members("GitHub"),
            test_corpus: "API".into(),
            mode: ExperimentMode::CrossPlatform,
            k: 5,
            seed: 42,
        };
        assert!(cfg.validate().is_ok());
        cfg.members[2].train_corpus = "API".into();
        assert!(matches!(
            cfg.validate(),
            Err(Error::InvalidExperimentConfig(_))
        ));
    }

    #[test]
    fn even_or_tiny_ensembles_rejected() {
        let mut cfg = ExperimentConfig {
            grid_id: 1,
            usage: 1,
            members: members("GitHub"),
            test_corpus: "GitHub".into(),
            mode: ExperimentMode::WithinDomain,
            k: 5,
            seed: 42,
        };
        cfg.members.truncate(1);
        assert_eq!(cfg.validate(), Err(Error::InvalidEnsembleSize(1)));
        cfg.members = members("GitHub");
        cfg.members.push(ClassifierSpec::new(Family::Lexicon, "GitHub"));
        assert_eq!(cfg.validate(), Err(Error::InvalidEnsembleSize(4)));
    }

    #[test]
    fn fold_label_round_trip() {
        for label in [FoldLabel::Full, FoldLabel::Fold(3), FoldLabel::Mean] {
            assert_eq!(FoldLabel::parse(&label.render()).unwrap(), label);
        }
        assert!(FoldLabel::parse("x").is_err());
    }

    #[test]
    fn grid_selection_parse() {
        assert_eq!(GridSelection::parse("all").unwrap(), GridSelection::All);
        assert!(GridSelection::parse("rq3").is_err());
        assert!(GridSelection::parse("within").unwrap().includes_within());
        assert!(!GridSelection::parse("rq21").unwrap().includes_within());
        assert!(GridSelection::parse("rq22").unwrap().includes_rq22());
    }
}
