use std::fmt;

use super::{CharFrequencyTable, Document, ExtractionConfig};
use crate::tokenizer::{tokenize, TokenizerConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExclusionReason {
    RareChar,
    TooLong,
}

impl fmt::Display for ExclusionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExclusionReason::RareChar => "rare_char",
            ExclusionReason::TooLong => "too_long",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentedSentence {
    /// `doc.paragraph.sentence`, 1-based ordinals.
    pub id: String,
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcludedSentence {
    pub doc_id: String,
    pub sentence: SegmentedSentence,
    pub reason: ExclusionReason,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Segmentation {
    pub kept: Vec<SegmentedSentence>,
    pub excluded: Vec<ExcludedSentence>,
}

impl Segmentation {
    pub fn total(&self) -> usize {
        self.kept.len() + self.excluded.len()
    }

    pub fn excluded_for(&self, reason: ExclusionReason) -> usize {
        self.excluded.iter().filter(|e| e.reason == reason).count()
    }
}

fn split_paragraph(tokens: Vec<String>, cfg: &ExtractionConfig) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for t in tokens {
        let ends = cfg.terminal_punct.contains(&t);
        cur.push(t);
        if ends {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Tokenizes and sentence-splits a document.
///
/// Paragraph ends always close a sentence, as does any token exactly equal
/// to a terminal punctuation mark. Sentences over the length limit are
/// excluded as `too_long`; otherwise sentences holding a character seen
/// fewer than `rare_char_threshold` times in `table` are excluded as
/// `rare_char`.
pub fn segment_sentences(
    doc: &Document,
    cfg: &ExtractionConfig,
    table: &CharFrequencyTable,
    tokenizer: &TokenizerConfig,
) -> Segmentation {
    let mut seg = Segmentation::default();
    for (pi, para) in doc.paragraphs.iter().enumerate() {
        let tokens = tokenize(para, tokenizer).tokens;
        for (si, toks) in split_paragraph(tokens, cfg).into_iter().enumerate() {
            let sentence = SegmentedSentence {
                id: format!("{}.{}.{}", doc.id, pi + 1, si + 1),
                tokens: toks,
            };
            let reason = if sentence.tokens.len() > cfg.max_sentence_tokens {
                Some(ExclusionReason::TooLong)
            } else if sentence
                .tokens
                .iter()
                .flat_map(|t| t.chars())
                .any(|c| table.count(c) < cfg.rare_char_threshold)
            {
                Some(ExclusionReason::RareChar)
            } else {
                None
            };
            match reason {
                None => seg.kept.push(sentence),
                Some(reason) => seg.excluded.push(ExcludedSentence {
                    doc_id: doc.id.clone(),
                    sentence,
                    reason,
                }),
            }
        }
    }
    seg
}
