use thiserror::Error;

use crate::semiring::SemiringTag;
use crate::word::Word;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("semiring mismatch: expected {expected}, found {found}")]
    TagMismatch {
        expected: String,
        found: SemiringTag,
    },

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("alphabets differ: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("state {state} out of range (automaton has {states} states)")]
    StateOutOfRange { state: usize, states: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("matrix has a circuit of positive weight; its star diverges")]
    PositiveCycle,

    #[error("series takes a positive value on {witness}")]
    NotNonpositive { witness: Word },

    #[error("series differ on {witness}")]
    NotEqual { witness: Word },

    #[error("{what} exceeded the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("enumeration bound exceeded: {words} words (limit {limit})")]
    BoundExceeded { words: u128, limit: u128 },
}
