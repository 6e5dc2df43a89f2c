//! Text extraction from EEBO-style XML, corpus character statistics and
//! sentence segmentation.
//!
//! Filtering is two-pass: a [`CharFrequencyTable`] is built over the whole
//! corpus first, then each document is segmented against it.

mod chars;
mod extract;
mod segment;

use std::collections::BTreeSet;

use thiserror::Error;

pub use chars::{build_char_table, CharFrequencyTable};
pub use extract::{extract_document, Document};
pub use segment::{segment_sentences, ExcludedSentence, ExclusionReason, Segmentation, SegmentedSentence};

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("malformed XML at {line}:{column}: {message}")]
    Xml {
        line: u32,
        column: u32,
        message: String,
    },
    #[error("invalid character table line {line}: {message}")]
    CharTable { line: usize, message: String },
    #[error("invalid extraction config: {0}")]
    Config(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionConfig {
    /// Elements whose text becomes a paragraph. Names compare case-insensitively.
    pub keep_elements: BTreeSet<String>,
    /// Elements whose content is discarded.
    pub drop_elements: BTreeSet<String>,
    pub gap_element: String,
    /// Used for a gap when the element has no `DISP` attribute.
    pub gap_placeholder: char,
    pub rare_char_threshold: u64,
    pub max_sentence_tokens: usize,
    pub terminal_punct: BTreeSet<String>,
    pub title_element: String,
    pub author_element: String,
    pub date_element: String,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        ExtractionConfig {
            keep_elements: set(&["P"]),
            drop_elements: set(&["NOTE", "SPEAKER", "L"]),
            gap_element: "GAP".into(),
            gap_placeholder: '\u{2022}',
            rare_char_threshold: 200,
            max_sentence_tokens: 800,
            terminal_punct: set(&[".", "!", "?"]),
            title_element: "TITLE".into(),
            author_element: "AUTHOR".into(),
            date_element: "DATE".into(),
        }
    }
}

impl ExtractionConfig {
    pub fn validate(&self) -> Result<(), ExtractError> {
        if self.rare_char_threshold == 0 || self.max_sentence_tokens == 0 {
            return Err(ExtractError::Config("thresholds must be positive".into()));
        }
        if self.keep_elements.is_empty() {
            return Err(ExtractError::Config("no paragraph elements configured".into()));
        }
        Ok(())
    }
}
