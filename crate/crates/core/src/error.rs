use thiserror::Error;

use crate::words::BinaryWord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not an antichain: {prefix} is a prefix of {word}")]
    NotAntichain {
        prefix: BinaryWord,
        word: BinaryWord,
    },

    #[error("{which} code is not complete (Kraft sum != 1)")]
    IncompleteCode { which: &'static str },

    #[error("code cardinality mismatch: {domain} domain words, {range} range words")]
    CardinalityMismatch { domain: usize, range: usize },

    #[error("not a bijection: {0}")]
    NotBijection(String),

    #[error("cannot subdivide a code of {have} words down to {want}")]
    SubdivideTooSmall { have: usize, want: usize },

    #[error("point period must be nonempty")]
    EmptyPeriod,

    #[error("invalid bit string {0:?}")]
    InvalidBits(String),

    #[error("invalid point notation {0:?}")]
    InvalidPoint(String),

    #[error("element is the identity; no displaced cylinder exists")]
    IdentityElement,

    #[error("invalid generator token {0:?}")]
    InvalidToken(String),

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("letter {letter} does not belong to alphabet {alphabet}")]
    LetterOutsideAlphabet { letter: String, alphabet: String },

    #[error("homomorphism does not cover generator {0}")]
    UncoveredGenerator(String),

    #[error("duplicate entry: {0}")]
    Duplicate(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("window not closed under the shift: site {0} has no preimage")]
    WindowNotClosed(String),

    #[error("sites {i} and {j} do not form a collision: {reason}")]
    NoCollision { i: usize, j: usize, reason: String },

    #[error("retry budget of {budget} exhausted: {diagnostics}")]
    BudgetExhausted { budget: usize, diagnostics: String },

    #[error("witness failed verification: {0}")]
    WitnessFailed(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
