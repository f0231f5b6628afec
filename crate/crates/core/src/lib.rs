//! Bilingual transition-based dependency parser with configurable parameter
//! sharing.
//!
//! The parser encodes words with a character BiLSTM, sentences with a word
//! BiLSTM, and scores arc-hybrid (+Swap) transitions with an interpolated
//! pair of MLPs. The three parameter sets can each be kept separate, hard
//! shared, or soft shared (shared plus a language embedding) across a pair
//! of languages, giving 27 strategies. Training uses a static-dynamic
//! oracle with optional error exploration; evaluation covers LAS/UAS,
//! paired randomization testing, grid reports and dev-based strategy
//! selection.

pub mod autodiff;
pub mod conllu;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod lexicon;
pub mod model;
pub mod strategy;
pub mod synth;
pub mod train;
pub mod transition;

pub use error::{Error, Result};
