//! Tools for preparing, querying and evaluating Penn-style historical
//! treebanks such as the PPCEME, and for turning EEBO-style XML into
//! tokenized, sentence-segmented text.
//!
//! The pieces fit together as a pipeline:
//!
//! * [`treebank`] reads and writes bracketed trees.
//! * [`transform`] normalizes PPCEME annotation and splits the corpus.
//! * [`tokenizer`] and [`eebo`] produce parser input from raw text.
//! * [`query`] runs clause-classification cascades over trees.
//! * [`eval`] scores parser output by brackets, function tags and query hits.
//! * [`impossible`] flags parser structures that gold trees never contain.

pub mod cli;
pub mod eebo;
pub mod eval;
pub mod impossible;
pub mod query;
pub mod tokenizer;
pub mod transform;
pub mod treebank;

pub use treebank::{NodeLabel, Sentence, Span, Tree};
