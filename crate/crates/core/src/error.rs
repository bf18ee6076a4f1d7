use thiserror::Error;

use crate::parser::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,

    #[error("letter {letter} is out of range for an alphabet of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },

    #[error("letter {letter} appears more than once in a permutation")]
    RepeatedLetter { letter: usize },

    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("state `{state}` has {found} sections, expected {expected}")]
    SectionArity {
        state: String,
        expected: usize,
        found: usize,
    },

    #[error("state index {index} is out of range for an automaton with {len} states")]
    StateOutOfRange { index: usize, len: usize },

    #[error("duplicate state name `{0}`")]
    DuplicateState(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("product power must be at least 1")]
    ZeroPower,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("level {level} has {vertices} vertices, above the cap of {cap}")]
    ResourceCap {
        level: usize,
        vertices: u128,
        cap: usize,
    },

    #[error("{what} is limited to {limit}, got {requested}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("nucleus unavailable: {0}")]
    NucleusUnavailable(String),

    #[error("invalid boundary point `{input}`: {reason}")]
    InvalidBoundaryPoint { input: String, reason: String },

    #[error("equivalence class is infinite; the supplied set is not a nucleus")]
    InfiniteClass,

    #[error("unknown catalog key `{0}`")]
    UnknownCatalogKey(String),

    #[error("unsupported export format `{0}`")]
    UnsupportedFormat(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("walk operator is not symmetric (deviation {0})")]
    NotSymmetric(String),
}
