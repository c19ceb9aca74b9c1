//! Experiment configuration (TOML) and grid-definition files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use sentivote_core::classifiers::Family;
use sentivote_core::experiments::{
    BestOfTemplate, CrossTemplate, GridDefinition, GridSelection, WithinTemplate,
};

use crate::corpus_csv::read_text;
use crate::{Error, Result};

/// The grid definitions shipped with the crate.
pub const DEFAULT_GRIDS_TEXT: &str = include_str!("../data/grids.toml");

/// An experiment configuration file.
///
/// ```toml
/// seed = 42
/// k = 5
/// output_dir = "runs/demo"
///
/// [corpora]
/// GitHub = "data/github.csv"
/// ```
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    /// Run seed; recorded in every result row.
    pub seed: u64,
    /// Fold count for within-domain runs.
    #[serde(default = "default_k")]
    pub k: u32,
    pub output_dir: PathBuf,
    /// Alternative grid-definition file; the built-in grids otherwise.
    #[serde(default)]
    pub grids_file: Option<PathBuf>,
    /// Write one per-document vote CSV per run under `<output_dir>/votes`.
    #[serde(default)]
    pub write_vote_logs: bool,
    /// Save the cross-platform members' pre-trained model files under
    /// `<output_dir>/models`.
    #[serde(default)]
    pub write_models: bool,
    /// Skip the reference-distribution check for canonically named corpora.
    #[serde(default)]
    pub skip_distribution_check: bool,
    /// Corpus name to CSV path.
    pub corpora: BTreeMap<String, PathBuf>,
}

fn default_k() -> u32 {
    5
}

pub fn load_experiment_file(path: &Path) -> Result<ExperimentFile> {
    let text = read_text(path)?;
    toml::from_str(&text).map_err(|e| Error::file(path, e.to_string()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridsFile {
    #[serde(default)]
    within: Vec<RawWithin>,
    #[serde(default)]
    cross: Vec<RawCross>,
    #[serde(default)]
    cross_best: Vec<RawCrossBest>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWithin {
    id: u32,
    corpus: String,
    #[serde(default)]
    families: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMember {
    family: String,
    train: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCross {
    id: u32,
    members: Vec<RawMember>,
    tests: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCrossBest {
    id: u32,
    trains: Vec<String>,
    tests: Vec<String>,
}

/// Parses grid definitions from TOML text; `context` names the source in
/// diagnostics.
pub fn parse_grids(text: &str, context: &Path) -> Result<GridDefinition> {
    let raw: GridsFile = toml::from_str(text).map_err(|e| Error::file(context, e.to_string()))?;
    let parse_family = |name: &str| {
        Family::parse(name).map_err(|e| Error::file(context, e.to_string()))
    };
    let mut grids = GridDefinition::default();
    for within in raw.within {
        let families = match within.families {
            None => Family::ALL.to_vec(),
            Some(names) => names
                .iter()
                .map(|n| parse_family(n))
                .collect::<Result<Vec<_>>>()?,
        };
        grids.within.push(WithinTemplate {
            id: within.id,
            corpus: within.corpus,
            families,
        });
    }
    for cross in raw.cross {
        let members = cross
            .members
            .iter()
            .map(|m| Ok((parse_family(&m.family)?, m.train.clone())))
            .collect::<Result<Vec<_>>>()?;
        grids.cross.push(CrossTemplate {
            id: cross.id,
            members,
            tests: cross.tests,
        });
    }
    for best in raw.cross_best {
        grids.cross_best.push(BestOfTemplate {
            id: best.id,
            trains: best.trains,
            tests: best.tests,
        });
    }
    Ok(grids)
}

/// Loads the configured grids file, or the built-in grids when none is set.
pub fn load_grids(config: &ExperimentFile, config_path: &Path) -> Result<GridDefinition> {
    match &config.grids_file {
        Some(path) => {
            let resolved = resolve_relative(config_path, path);
            parse_grids(&read_text(&resolved)?, &resolved)
        }
        None => parse_grids(DEFAULT_GRIDS_TEXT, Path::new("<built-in grids>")),
    }
}

/// Paths inside a config file are taken relative to the config file itself.
pub fn resolve_relative(config_path: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        config_path
            .parent()
            .unwrap_or_else(|| Path::new("."))
            .join(path)
    }
}

/// Checks a configuration and its grids exhaustively, returning every
/// problem found rather than stopping at the first.
pub fn validate(
    config: &ExperimentFile,
    config_path: &Path,
    grids: &GridDefinition,
    selection: GridSelection,
) -> Vec<String> {
    let mut problems = Vec::new();
    if config.k < 2 {
        problems.push(format!("k must be at least 2, found {}", config.k));
    }
    if config.corpora.is_empty() {
        problems.push("no corpora configured".to_string());
    }
    for (name, path) in &config.corpora {
        let resolved = resolve_relative(config_path, path);
        if !resolved.is_file() {
            problems.push(format!(
                "corpus {name:?}: file {} does not exist",
                resolved.display()
            ));
        }
    }

    let known: BTreeSet<&str> = config.corpora.keys().map(String::as_str).collect();
    let check_corpus = |problems: &mut Vec<String>, grid: u32, role: &str, name: &str| {
        if !known.contains(name) {
            problems.push(format!(
                "grid {grid}: {role} corpus {name:?} is not in [corpora]"
            ));
        }
    };

    let mut seen_ids = BTreeSet::new();
    let mut check_id = |problems: &mut Vec<String>, id: u32| {
        if !seen_ids.insert(id) {
            problems.push(format!("grid id {id} defined more than once"));
        }
    };

    if selection.includes_within() || selection.includes_rq22() {
        for within in &grids.within {
            check_id(&mut problems, within.id);
            check_corpus(&mut problems, within.id, "within", &within.corpus);
            let n = within.families.len();
            if n < 3 || n % 2 == 0 {
                problems.push(format!(
                    "grid {}: needs an odd number of families >= 3, found {n}",
                    within.id
                ));
            }
        }
        if grids.within.is_empty() {
            problems.push("no within grids defined".to_string());
        }
    }
    if selection.includes_rq21() {
        for cross in &grids.cross {
            check_id(&mut problems, cross.id);
            let n = cross.members.len();
            if n < 3 || n % 2 == 0 {
                problems.push(format!(
                    "grid {}: needs an odd number of members >= 3, found {n}",
                    cross.id
                ));
            }
            if cross.tests.is_empty() {
                problems.push(format!("grid {}: no test corpora", cross.id));
            }
            for (_, train) in &cross.members {
                check_corpus(&mut problems, cross.id, "training", train);
            }
            for test in &cross.tests {
                check_corpus(&mut problems, cross.id, "test", test);
                if cross.members.iter().any(|(_, train)| train == test) {
                    problems.push(format!(
                        "grid {}: member trained on test corpus {test:?}",
                        cross.id
                    ));
                }
            }
        }
    }
    if selection.includes_rq22() {
        for best in &grids.cross_best {
            check_id(&mut problems, best.id);
            let n = best.trains.len();
            if n < 3 || n % 2 == 0 {
                problems.push(format!(
                    "grid {}: needs an odd number of training corpora >= 3, found {n}",
                    best.id
                ));
            }
            if best.tests.is_empty() {
                problems.push(format!("grid {}: no test corpora", best.id));
            }
            for train in &best.trains {
                check_corpus(&mut problems, best.id, "training", train);
                if !grids.within.iter().any(|w| w.corpus == *train) {
                    problems.push(format!(
                        "grid {}: no within grid covers training corpus {train:?} \
                         for best-member selection",
                        best.id
                    ));
                }
            }
            for test in &best.tests {
                check_corpus(&mut problems, best.id, "test", test);
                if best.trains.iter().any(|train| train == test) {
                    problems.push(format!(
                        "grid {}: member trained on test corpus {test:?}",
                        best.id
                    ));
                }
            }
        }
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtin() -> GridDefinition {
        parse_grids(DEFAULT_GRIDS_TEXT, Path::new("builtin")).unwrap()
    }

    #[test]
    fn builtin_grids_match_reference_tables() {
        let grids = builtin();

        let within: Vec<(u32, &str)> = grids
            .within
            .iter()
            .map(|w| (w.id, w.corpus.as_str()))
            .collect();
        assert_eq!(
            within,
            vec![
                (1, "GitHub"),
                (2, "JIRA"),
                (3, "StackOverflow"),
                (4, "API"),
                (5, "APP")
            ]
        );
        for w in &grids.within {
            assert_eq!(w.families, Family::ALL.to_vec());
        }

        let cross_trains: Vec<(u32, Vec<&str>)> = grids
            .cross
            .iter()
            .map(|c| (c.id, c.members.iter().map(|(_, t)| t.as_str()).collect()))
            .collect();
        assert_eq!(
            cross_trains,
            vec![
                (6, vec!["GitHub", "StackOverflow", "JIRA"]),
                (7, vec!["GitHub", "JIRA", "StackOverflow"]),
                (8, vec!["StackOverflow", "GitHub", "JIRA"]),
                (9, vec!["StackOverflow", "JIRA", "GitHub"]),
                (10, vec!["JIRA", "GitHub", "StackOverflow"]),
                (11, vec!["JIRA", "StackOverflow", "GitHub"]),
            ]
        );
        for c in &grids.cross {
            assert_eq!(c.tests, vec!["API", "APP"]);
            let families: Vec<Family> = c.members.iter().map(|(f, _)| *f).collect();
            assert_eq!(families, Family::ALL.to_vec());
        }

        let best: Vec<(u32, Vec<&str>, Vec<&str>)> = grids
            .cross_best
            .iter()
            .map(|b| {
                (
                    b.id,
                    b.trains.iter().map(String::as_str).collect(),
                    b.tests.iter().map(String::as_str).collect(),
                )
            })
            .collect();
        assert_eq!(
            best,
            vec![
                (12, vec!["GitHub", "JIRA", "StackOverflow"], vec!["API", "APP"]),
                (13, vec!["GitHub", "API", "JIRA"], vec!["StackOverflow", "APP"]),
                (14, vec!["GitHub", "StackOverflow", "API"], vec!["JIRA", "APP"]),
                (15, vec!["StackOverflow", "JIRA", "API"], vec!["GitHub", "APP"]),
            ]
        );
    }

    #[test]
    fn config_parses_with_defaults() {
        let cfg: ExperimentFile = toml::from_str(
            "seed = 42\noutput_dir = \"out\"\n[corpora]\nGitHub = \"g.csv\"\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.k, 5);
        assert!(!cfg.write_vote_logs);
        assert!(!cfg.skip_distribution_check);
        assert_eq!(cfg.corpora["GitHub"], PathBuf::from("g.csv"));
    }

    #[test]
    fn seed_is_required() {
        let result: std::result::Result<ExperimentFile, _> =
            toml::from_str("output_dir = \"out\"\n[corpora]\nG = \"g.csv\"\n");
        assert!(result.is_err());
    }

    #[test]
    fn validation_collects_every_problem() {
        let cfg: ExperimentFile = toml::from_str(
            "seed = 1\nk = 1\noutput_dir = \"out\"\n[corpora]\nGitHub = \"/nope/missing.csv\"\n",
        )
        .unwrap();
        let grids = builtin();
        let problems = validate(&cfg, Path::new("cfg.toml"), &grids, GridSelection::All);
        assert!(problems.iter().any(|p| p.contains("k must be")), "{problems:?}");
        assert!(
            problems.iter().any(|p| p.contains("missing.csv")),
            "{problems:?}"
        );
        // All grid corpora except GitHub are unknown.
        assert!(
            problems.iter().any(|p| p.contains("\"JIRA\" is not in [corpora]")),
            "{problems:?}"
        );
        assert!(problems.len() > 5, "{problems:?}");
    }

    #[test]
    fn validation_flags_member_trained_on_test_corpus() {
        let grids_text = r#"
[[cross]]
id = 6
members = [
    { family = "lexicon", train = "A" },
    { family = "naive-bayes", train = "B" },
    { family = "logistic", train = "B" },
]
tests = ["A"]
"#;
        let grids = parse_grids(grids_text, Path::new("g.toml")).unwrap();
        let cfg: ExperimentFile = toml::from_str(
            "seed = 1\noutput_dir = \"out\"\n[corpora]\nA = \"a.csv\"\nB = \"b.csv\"\n",
        )
        .unwrap();
        let problems = validate(&cfg, Path::new("cfg.toml"), &grids, GridSelection::Rq21);
        assert!(
            problems
                .iter()
                .any(|p| p.contains("trained on test corpus \"A\"")),
            "{problems:?}"
        );
    }

    #[test]
    fn unknown_family_in_grids_is_an_error() {
        let text = r#"
[[cross]]
id = 6
members = [
    { family = "svm", train = "A" },
    { family = "naive-bayes", train = "B" },
    { family = "logistic", train = "B" },
]
tests = ["C"]
"#;
        assert!(parse_grids(text, Path::new("g.toml")).is_err());
    }
}
