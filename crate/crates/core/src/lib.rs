//! Weighted automata over the max-plus and min-plus semirings with exact
//! rational weights.
//!
//! The crate decides nonpositivity, equality with a constant and equality of
//! a max-plus series with a min-plus one, and turns an equivalent max-plus /
//! min-plus pair into a 1-valued and then an unambiguous automaton.

pub mod automaton;
pub mod cli;
pub mod corpus;
pub mod decisions;
pub mod disambiguation;
pub mod error;
pub mod format;
pub mod matrix;
pub mod oracle;
pub mod semiring;
pub mod spectral;
pub mod word;

pub use automaton::{Alphabet, BooleanAutomaton, WeightedAutomaton};
pub use decisions::{Limits, Verdict};
pub use disambiguation::{Covering, PairAutomaton};
pub use error::{Error, Result};
pub use matrix::TropicalMatrix;
pub use semiring::{PairWeight, Rational, SemiringTag, Weight};
pub use word::Word;
