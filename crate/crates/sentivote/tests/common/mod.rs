//! Synthetic corpora and config scaffolding shared by the integration and
//! acceptance suites.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use sentivote::core::classifiers::lexicon::{LexiconModel, NEGATIVE_TERMS, POSITIVE_TERMS};
use sentivote::core::corpus::{Corpus, Document, Polarity};
use sentivote::core::rng::rng_from_seed;
use sentivote::corpus_csv::write_corpus;

/// Valence-free filler shared by every synthetic class and corpus.
pub const FILLER: &[&str] = &[
    "the", "build", "branch", "commit", "server", "thread", "module", "config", "release",
    "update", "merge", "deploy", "script", "version", "runtime", "parser", "buffer", "socket",
    "index", "cache", "schema", "query", "driver", "kernel", "packet", "header", "payload",
    "daemon", "worker", "queue", "mutex", "handle", "stream", "batch", "shard", "replica",
    "cursor", "token", "frame", "layout",
];

/// Valence-free class vocabulary for the neutral class.
pub const NEUTRAL_JARGON: &[&str] = &[
    "compiles", "linked", "installed", "restarted", "configured", "documented", "versioned",
    "deployed", "merged", "branched", "tagged", "indexed", "cached", "queued", "scheduled",
    "parsed", "serialized", "encoded", "mapped", "routed",
];

/// Made-up class words for the second corpus of the degradation pair; none
/// of them appear in the built-in lexicon or the other vocabularies.
pub const FOREIGN_POSITIVE: &[&str] = &[
    "zorply", "frimbly", "quorvish", "blenty", "snarfil", "dravex", "plomzy", "krentho",
    "vilmax", "troquil", "zandrel", "morvick", "glenthy", "bryxel", "quampol", "dorlith",
    "fenwick", "harvex", "jolmuth", "kelpraz",
];
pub const FOREIGN_NEGATIVE: &[&str] = &[
    "grumvotz", "slorpix", "drabnel", "vexmurk", "plodgrim", "znarvel", "crumplot", "morgrev",
    "bleakzor", "quargish", "fripnel", "doomvex", "sagmorth", "wrenvil", "glumtrox", "harpnez",
    "joltgrim", "krovnal", "lurgwim", "mizzrot",
];
pub const FOREIGN_NEUTRAL: &[&str] = &[
    "terbline", "quonvex", "drillmap", "sorbital", "plinthor", "vandrex", "crostel", "murbixen",
    "taldrine", "workleth", "brenquil", "fostrand", "gilmorva", "hunterazz", "ostrivel",
    "pandrive", "renquist", "stolvane", "trivexol", "umbrakel",
];

fn assert_valence_free(words: &[&str]) {
    let lexicon = LexiconModel::new("none");
    for word in words {
        assert_eq!(lexicon.valence(word), 0, "{word:?} carries lexicon valence");
    }
}

/// Three-class corpus whose positive/negative classes use built-in lexicon
/// words and whose neutral class uses valence-free jargon, with a fraction
/// of labels flipped to a different class. Deterministic in its arguments.
pub fn lexicon_aligned_corpus(
    name: &str,
    per_class: usize,
    noise: f64,
    seed: u64,
) -> Corpus {
    assert_valence_free(FILLER);
    assert_valence_free(NEUTRAL_JARGON);
    let class_words: [&[&str]; 3] = [
        &POSITIVE_TERMS[..40],
        NEUTRAL_JARGON,
        &NEGATIVE_TERMS[..40],
    ];
    let mut rng = rng_from_seed(seed);
    let mut docs = Vec::with_capacity(3 * per_class);
    for i in 0..(3 * per_class) {
        let class = i % 3;
        let words = class_words[class];
        let mut tokens = Vec::with_capacity(8);
        // One round-robin pick guarantees full vocabulary coverage.
        tokens.push(words[i / 3 % words.len()]);
        for _ in 0..4 {
            tokens.push(words[rng.gen_range(0..words.len())]);
        }
        for _ in 0..3 {
            tokens.push(FILLER[rng.gen_range(0..FILLER.len())]);
        }
        let label = if rng.gen_range(0.0..1.0) < noise {
            // Flip to one of the two other classes.
            let offset = 1 + rng.gen_range(0..2usize);
            (class + offset) % 3
        } else {
            class
        };
        docs.push(
            Document::new(
                format!("{name}-{i}"),
                tokens.join(" "),
                Polarity::from_index(label).unwrap(),
            )
            .unwrap(),
        );
    }
    Corpus::new(name, docs).unwrap()
}

/// Deterministic corpus over explicit class vocabularies: every document
/// holds three class words and two filler words, cycling through both sets
/// so the realized vocabulary is exactly `classes ∪ FILLER`.
pub fn cycling_corpus(
    name: &str,
    per_class: usize,
    classes: [&[&str]; 3],
    seed: u64,
) -> Corpus {
    assert_valence_free(FILLER);
    let mut rng = rng_from_seed(seed);
    let mut docs = Vec::with_capacity(3 * per_class);
    let mut filler_cursor = 0usize;
    for i in 0..(3 * per_class) {
        let class = i % 3;
        let words = classes[class];
        let step = i / 3;
        let mut tokens = vec![
            words[step % words.len()],
            words[(step + 1) % words.len()],
            words[rng.gen_range(0..words.len())],
        ];
        for _ in 0..2 {
            tokens.push(FILLER[filler_cursor % FILLER.len()]);
            filler_cursor += 1;
        }
        docs.push(
            Document::new(
                format!("{name}-{i}"),
                tokens.join(" "),
                Polarity::from_index(class).unwrap(),
            )
            .unwrap(),
        );
    }
    Corpus::new(name, docs).unwrap()
}

/// The two-corpus pair for cross-platform degradation: the corpora share
/// only the filler vocabulary (40 of 100 test-corpus tokens).
pub fn degradation_pair(per_class: usize) -> (Corpus, Corpus) {
    assert_valence_free(FOREIGN_POSITIVE);
    assert_valence_free(FOREIGN_NEGATIVE);
    assert_valence_free(FOREIGN_NEUTRAL);
    let home = cycling_corpus(
        "Home",
        per_class,
        [&POSITIVE_TERMS[..20], NEUTRAL_JARGON, &NEGATIVE_TERMS[..20]],
        101,
    );
    let away = cycling_corpus(
        "Away",
        per_class,
        [FOREIGN_POSITIVE, FOREIGN_NEUTRAL, FOREIGN_NEGATIVE],
        202,
    );
    (home, away)
}

/// A synthetic corpus with exactly the reference API distribution
/// (890 positive, 3136 neutral, 496 negative).
pub fn reference_api_corpus() -> Corpus {
    let counts = [890usize, 3136, 496];
    let class_words: [&[&str]; 3] = [
        &POSITIVE_TERMS[..40],
        NEUTRAL_JARGON,
        &NEGATIVE_TERMS[..40],
    ];
    let mut rng = rng_from_seed(4522);
    let mut docs = Vec::new();
    for (class, count) in counts.iter().enumerate() {
        let words = class_words[class];
        for i in 0..*count {
            let text = format!(
                "{} {} {}",
                words[i % words.len()],
                words[rng.gen_range(0..words.len())],
                FILLER[rng.gen_range(0..FILLER.len())]
            );
            docs.push(
                Document::new(
                    format!("api-{class}-{i}"),
                    text,
                    Polarity::from_index(class).unwrap(),
                )
                .unwrap(),
            );
        }
    }
    Corpus::new("API", docs).unwrap()
}

/// Writes corpora as CSV files plus an experiment config pointing at them;
/// returns the config path.
pub fn write_experiment_setup(
    dir: &Path,
    corpora: &[&Corpus],
    seed: u64,
    k: u32,
    extra: &str,
) -> PathBuf {
    let mut corpora_section = String::new();
    for corpus in corpora {
        let file = dir.join(format!("{}.csv", corpus.name()));
        write_corpus(corpus, &file).unwrap();
        corpora_section.push_str(&format!("{} = \"{}.csv\"\n", corpus.name(), corpus.name()));
    }
    let config = format!(
        "seed = {seed}\nk = {k}\noutput_dir = \"out\"\n{extra}\n[corpora]\n{corpora_section}"
    );
    let config_path = dir.join("experiment.toml");
    fs::write(&config_path, config).unwrap();
    config_path
}

/// Five canonical-name corpora small enough for fast grid runs.
pub fn reference_named_corpora() -> Vec<Corpus> {
    vec![
        lexicon_aligned_corpus("GitHub", 40, 0.1, 31),
        lexicon_aligned_corpus("JIRA", 35, 0.1, 32),
        lexicon_aligned_corpus("StackOverflow", 38, 0.1, 33),
        lexicon_aligned_corpus("API", 30, 0.1, 34),
        lexicon_aligned_corpus("APP", 20, 0.1, 35),
    ]
}
