//! Dictionary-based polarity scorer with a built-in word list and negation
//! handling. Training-free: the model is the lexicon.

use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::corpus::Polarity;
use crate::features::tokenize;

/// Positive terms of the built-in lexicon, tuned towards the vocabulary of
/// developer communication (commit messages, reviews, Q&A threads).
pub const POSITIVE_TERMS: &[&str] = &[
    "good", "great", "nice", "awesome", "excellent", "perfect", "perfectly", "amazing",
    "wonderful", "fantastic", "brilliant", "superb", "outstanding", "impressive", "beautiful",
    "elegant", "neat", "neatly", "clean", "cleaner", "cleanest", "cleanly", "clear", "clearer",
    "clearly", "simple", "simpler", "simplest", "easy", "easier", "easiest", "easily", "fast",
    "faster", "fastest", "quick", "quicker", "quickly", "snappy", "speedy", "efficient",
    "efficiently", "effective", "effectively", "robust", "stable", "reliable", "reliably",
    "solid", "smooth", "smoothly", "seamless", "seamlessly", "painless", "effortless",
    "effortlessly", "powerful", "flexible", "versatile", "handy", "convenient", "conveniently",
    "intuitive", "readable", "maintainable", "consistent", "accurate", "accurately", "precise",
    "precisely", "improved", "improves", "improve", "improvement", "improvements", "better",
    "best", "like", "likes", "liked", "love", "loves", "loved", "lovely", "enjoy", "enjoys",
    "enjoyed", "enjoyable", "glad", "happy", "happily", "pleased", "pleasant", "delighted",
    "delightful", "delight", "thanks", "thank", "thankful", "thx", "appreciate", "appreciated",
    "appreciates", "appreciation", "grateful", "gratitude", "helpful", "helped", "helps",
    "useful", "works", "worked", "fixed", "fixes", "solved", "solves", "resolved", "resolves",
    "correct", "correctly", "succeed", "succeeds", "succeeded", "success", "successful",
    "successfully", "win", "wins", "won", "winner", "bonus", "benefit", "benefits",
    "beneficial", "valuable", "worthwhile", "worthy", "recommend", "recommended", "recommends",
    "approve", "approved", "approves", "agree", "agreed", "agrees", "yay", "hooray", "bravo",
    "kudos", "congrats", "congratulations", "welcome", "cheers", "favorite", "favourite",
    "gem", "lifesaver", "slick", "tidy", "graceful", "gracefully", "sensible",
    "straightforward", "smart", "clever", "cleverly", "genius", "ideal", "fine", "satisfied",
    "satisfying", "satisfies", "satisfaction", "thrilled", "excited", "exciting", "promising",
    "hopeful", "optimistic", "encouraging", "encouraged", "supportive", "polished", "mature",
    "flawless", "flawlessly", "stellar", "superior", "super", "terrific", "marvelous",
    "splendid", "phenomenal", "exceptional", "remarkable", "admirable", "commendable",
    "praise", "praised", "rocks", "shines", "cool", "sweet", "fun", "charming", "magical",
    "masterpiece", "quality", "premium", "refined", "streamlined", "optimized", "performant",
    "lightweight", "portable", "modular", "reusable", "extensible", "scalable", "ergonomic",
    "friendly", "accessible", "insightful", "informative", "instructive", "thorough",
    "comprehensive", "concise", "succinct", "coherent", "lucid", "productive", "constructive",
    "meaningful", "fruitful", "dependable", "trustworthy", "trusted", "durable", "resilient",
    "secure", "safe", "safely", "relieved", "reassuring", "comfortable", "joy", "joyful",
    "bliss",
];

/// Negative terms of the built-in lexicon.
pub const NEGATIVE_TERMS: &[&str] = &[
    "bad", "worse", "worst", "awful", "terrible", "terribly", "horrible", "horribly", "horrid",
    "poor", "poorly", "wrong", "wrongly", "broken", "breaks", "broke", "bug", "bugs", "buggy",
    "crash", "crashes", "crashed", "crashing", "error", "errors", "fail", "fails", "failed",
    "failing", "failure", "failures", "fault", "faulty", "flaw", "flaws", "flawed", "defect",
    "defects", "defective", "problem", "problems", "problematic", "trouble", "troubles",
    "troublesome", "annoy", "annoys", "annoyed", "annoying", "annoyance", "irritate",
    "irritates", "irritated", "irritating", "frustrate", "frustrates", "frustrated",
    "frustrating", "frustration", "anger", "angry", "mad", "furious", "rage", "hate", "hates",
    "hated", "hating", "dislike", "dislikes", "disliked", "disappoint", "disappoints",
    "disappointed", "disappointing", "disappointment", "regret", "regrets", "sorry",
    "unfortunately", "sadly", "sad", "unhappy", "miserable", "pain", "painful", "painfully",
    "hurt", "hurts", "ugly", "messy", "mess", "cluttered", "bloated", "slow", "slower",
    "slowest", "sluggish", "laggy", "lag", "lags", "unresponsive", "hang", "hangs", "hung",
    "freeze", "freezes", "froze", "frozen", "stuck", "stalled", "dead", "deadlock",
    "deadlocks", "leak", "leaks", "leaking", "corrupt", "corrupted", "corruption", "garbage",
    "junk", "trash", "rubbish", "nonsense", "stupid", "dumb", "idiotic", "ridiculous",
    "absurd", "insane", "useless", "pointless", "worthless", "hopeless", "impossible",
    "unusable", "unreliable", "unstable", "insecure", "unsafe", "vulnerable", "vulnerability",
    "dangerous", "dangerously", "risky", "harmful", "harm", "nasty", "vile", "evil",
    "dreadful", "atrocious", "abysmal", "appalling", "disgusting", "disgust", "disgusted",
    "gross", "hideous", "lousy", "pathetic", "shame", "shameful", "embarrassing",
    "embarrassed", "embarrassment", "awkward", "clumsy", "cumbersome", "tedious", "boring",
    "bored", "dull", "confusing", "confused", "confuses", "confusion", "unclear", "vague",
    "ambiguous", "cryptic", "convoluted", "complicated", "overcomplicated", "tangled",
    "spaghetti", "hacky", "kludge", "kludgy", "brittle", "fragile", "flaky", "inconsistent",
    "incorrect", "incorrectly", "invalid", "malformed", "mismatch", "mismatched", "waste",
    "wasted", "wasteful", "costly", "redundant", "obsolete", "deprecated", "outdated", "stale",
    "abandoned", "neglected", "complain", "complains", "complained", "complaint", "complaints",
    "rant", "damn", "damned", "crap", "crappy", "sucks", "suck", "sucked", "screwed", "doom",
    "doomed", "disaster", "disastrous", "catastrophe", "catastrophic", "nightmare", "chaos",
    "chaotic", "panic", "panics", "panicked", "fear", "feared", "fears", "afraid", "scared",
    "scary", "worry", "worries", "worried", "worrying", "worrisome", "anxious", "anxiety",
    "stress", "stressed", "stressful", "tired", "exhausted", "exhausting", "sick", "offensive",
    "insult", "insulting", "rude", "hostile", "toxic", "spam", "bogus", "fake", "misleading",
    "deceptive", "lie", "lies", "lying", "cheat", "cheated", "betrayed", "unacceptable",
    "intolerable", "inferior", "mediocre", "subpar", "substandard", "shoddy", "sloppy",
    "careless", "reckless", "negligent", "inadequate", "insufficient", "incomplete",
    "unfinished", "untested", "undocumented", "unsupported", "unmaintained", "weak", "weaker",
    "weakest", "feeble", "lame", "clunky", "regression", "regressions", "regressed",
    "degrade", "degrades", "degraded", "degradation", "deteriorated",
];

/// Tokens that flip the valence of a lexicon hit up to two positions later.
pub const NEGATORS: &[&str] = &["not", "no", "never", "n't"];

fn is_negator(token: &str) -> bool {
    NEGATORS.contains(&token) || token.ends_with("n't")
}

/// The lexicon scorer. `train` is a no-op for this family, so every
/// instance carries the same table.
#[derive(Debug, Clone, PartialEq)]
pub struct LexiconModel {
    table: BTreeMap<&'static str, i32>,
    train_corpus: String,
}

impl LexiconModel {
    pub fn new(train_corpus: impl Into<String>) -> LexiconModel {
        let mut table = BTreeMap::new();
        for term in POSITIVE_TERMS {
            table.insert(*term, 1);
        }
        for term in NEGATIVE_TERMS {
            table.insert(*term, -1);
        }
        LexiconModel {
            table,
            train_corpus: train_corpus.into(),
        }
    }

    pub fn train_corpus(&self) -> &str {
        &self.train_corpus
    }

    pub fn valence(&self, token: &str) -> i32 {
        self.table.get(token).copied().unwrap_or(0)
    }

    /// Sum of token valences; a negator within the two preceding tokens
    /// flips the sign of a hit.
    pub fn score_tokens(&self, tokens: &[String]) -> i64 {
        let mut score = 0i64;
        for (i, token) in tokens.iter().enumerate() {
            let valence = self.valence(token);
            if valence == 0 {
                continue;
            }
            let negated = tokens[i.saturating_sub(2)..i]
                .iter()
                .any(|t| is_negator(t));
            score += if negated { -valence } else { valence } as i64;
        }
        score
    }

    pub fn score(&self, text: &str) -> i64 {
        self.score_tokens(&tokenize(text))
    }

    /// Positive score maps to `Positive`, negative to `Negative`, zero
    /// (including no lexicon hits at all) to `Neutral`.
    pub fn classify(&self, text: &str) -> Polarity {
        let score = self.score(text);
        if score > 0 {
            Polarity::Positive
        } else if score < 0 {
            Polarity::Negative
        } else {
            Polarity::Neutral
        }
    }
}
