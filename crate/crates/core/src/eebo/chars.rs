use std::collections::BTreeMap;

use super::{Document, ExtractError};

/// Per-character totals over all paragraph text of a corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CharFrequencyTable {
    pub counts: BTreeMap<char, u64>,
}

impl CharFrequencyTable {
    pub fn add_text(&mut self, text: &str) {
        for c in text.chars() {
            *self.counts.entry(c).or_insert(0) += 1;
        }
    }

    pub fn add_document(&mut self, doc: &Document) {
        for p in &doc.paragraphs {
            self.add_text(p);
        }
    }

    /// Associative, commutative merge of two partial tables.
    pub fn merge(mut self, other: CharFrequencyTable) -> CharFrequencyTable {
        for (c, n) in other.counts {
            *self.counts.entry(c).or_insert(0) += n;
        }
        self
    }

    pub fn count(&self, c: char) -> u64 {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn rare_chars(&self, threshold: u64) -> usize {
        self.counts.values().filter(|&&n| n < threshold).count()
    }

    /// TSV with columns `codepoint`, `char`, `count`. Whitespace and control
    /// characters are shown by codepoint only.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("codepoint\tchar\tcount\n");
        for (c, n) in &self.counts {
            let shown = if c.is_whitespace() || c.is_control() {
                String::new()
            } else {
                c.to_string()
            };
            out.push_str(&format!("U+{:04X}\t{}\t{}\n", *c as u32, shown, n));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self, ExtractError> {
        let mut table = CharFrequencyTable::default();
        for (i, line) in text.lines().enumerate() {
            if i == 0 && line.starts_with("codepoint") || line.is_empty() {
                continue;
            }
            let err = |message: &str| ExtractError::CharTable {
                line: i + 1,
                message: message.to_string(),
            };
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 {
                return Err(err("expected 3 columns"));
            }
            let hex = cols[0].strip_prefix("U+").ok_or_else(|| err("codepoint must start with U+"))?;
            let cp = u32::from_str_radix(hex, 16).map_err(|_| err("bad codepoint"))?;
            let c = char::from_u32(cp).ok_or_else(|| err("invalid codepoint"))?;
            let n: u64 = cols[2].parse().map_err(|_| err("bad count"))?;
            *table.counts.entry(c).or_insert(0) += n;
        }
        Ok(table)
    }
}

/// First pass over the corpus: exact per-character totals.
pub fn build_char_table<'a, I>(docs: I) -> CharFrequencyTable
where
    I: IntoIterator<Item = &'a Document>,
{
    let mut table = CharFrequencyTable::default();
    for d in docs {
        table.add_document(d);
    }
    table
}
