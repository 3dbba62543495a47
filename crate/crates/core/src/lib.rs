//! Arnoux-Rauzy words from S-adic directive sequences: prefix generation,
//! balance profiles and C-balance verdicts with witnesses, desubstitution,
//! directive-sequence condition checkers, factor-complexity reports, and
//! constructive imbalance witness chains.
//!
//! The library works over the alphabet `{1, ..., d}`; the balance theorems
//! and witness constructions are specific to `d = 3`, while words,
//! substitutions, generation, balance profiles, and factor complexity work
//! for any `d >= 2`.

pub mod analysis;
pub mod balance;
pub mod complexity;
pub mod desub;
pub mod directive;
mod error;
pub mod generate;
pub mod substitution;
pub mod witness;
pub mod word;

pub use directive::DirectiveSequence;
pub use error::{Error, Result};
pub use generate::generate_prefix;
pub use substitution::SubstitutionKind;
pub use word::{Alphabet, FiniteWord, Letter, ParikhDiff, ParikhVector};
