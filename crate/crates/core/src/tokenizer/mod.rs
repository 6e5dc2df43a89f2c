//! Deterministic tokenizer following PPCEME conventions for Early Modern
//! English text.
//!
//! Possessives stay attached, punctuation is split off except inside
//! abbreviations, hyphenated words and dotted Roman numerals, and a `th'`
//! prefix becomes its own token.

mod roman;

use std::collections::BTreeSet;

pub use roman::is_roman_numeral;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizerConfig {
    pub abbreviations: BTreeSet<String>,
    pub split_th_apostrophe: bool,
    pub its_one_token: bool,
    pub roman_numeral_j_variant: bool,
}

pub const SEED_ABBREVIATIONS: [&str; 3] = ["Mr.", "Mrs.", "&c"];

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            abbreviations: SEED_ABBREVIATIONS.iter().map(|s| s.to_string()).collect(),
            split_th_apostrophe: true,
            its_one_token: true,
            roman_numeral_j_variant: true,
        }
    }
}

impl TokenizerConfig {
    /// Adds entries from an abbreviation list: one per line, `#` starts a
    /// comment line.
    pub fn add_abbreviations(&mut self, list: &str) -> Result<(), String> {
        for (n, line) in list.lines().enumerate() {
            let entry = line.trim();
            if entry.is_empty() || entry.starts_with('#') {
                continue;
            }
            if entry.chars().any(char::is_whitespace) {
                return Err(format!("line {}: abbreviation {:?} contains whitespace", n + 1, entry));
            }
            self.abbreviations.insert(entry.to_string());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenizedText {
    pub tokens: Vec<String>,
    /// Byte ranges `[start, end)` of each token in the input.
    pub source_offsets: Vec<(usize, usize)>,
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn is_punct(c: char) -> bool {
    matches!(
        c,
        '.' | ','
            | ';'
            | ':'
            | '!'
            | '?'
            | '('
            | ')'
            | '['
            | ']'
            | '{'
            | '}'
            | '"'
            | '&'
            | '\u{201C}'
            | '\u{201D}'
            | '\u{2018}'
            | '\u{00AB}'
            | '\u{00BB}'
            | '\u{00B6}'
            | '\u{00BF}'
            | '\u{00A1}'
            | '\u{2013}'
            | '\u{2014}'
    )
}

/// Punctuation that is split off even in the middle of a word.
fn is_internal_break(c: char) -> bool {
    is_punct(c) && c != '.' && c != '&'
}

struct Chunk<'t, 'c> {
    text: &'t str,
    base: usize,
    cfg: &'c TokenizerConfig,
    out: &'c mut Vec<(usize, usize)>,
}

impl<'t, 'c> Chunk<'t, 'c> {
    fn is_abbrev(&self, s: &str) -> bool {
        self.cfg.abbreviations.contains(s)
    }

    /// `s` is an abbreviation followed only by punctuation.
    fn starts_with_abbrev(&self, s: &str) -> bool {
        self.cfg
            .abbreviations
            .iter()
            .any(|a| s.starts_with(a.as_str()) && s[a.len()..].chars().all(is_punct))
    }

    fn roman(&self, s: &str) -> bool {
        is_roman_numeral(s, self.cfg)
    }

    fn emit(&mut self, lo: usize, hi: usize) {
        if lo < hi {
            self.out.push((self.base + lo, self.base + hi));
        }
    }

    fn run(&mut self) {
        let text = self.text;
        let mut lo = 0;
        let mut hi = text.len();
        let mut trailing = Vec::new();

        // Leading punctuation other than periods.
        while lo < hi {
            let s = &text[lo..hi];
            if self.starts_with_abbrev(s) {
                break;
            }
            let c = s.chars().next().unwrap();
            if !is_punct(c) || c == '.' {
                break;
            }
            let run = run_len_front(s, c);
            self.emit(lo, lo + run);
            lo += run;
        }

        // Trailing punctuation, stopping at abbreviations and at numerals
        // that both begin and end with a period.
        while lo < hi {
            let s = &text[lo..hi];
            if self.is_abbrev(s) || (s.starts_with('.') && s.ends_with('.') && self.roman(s)) {
                break;
            }
            let c = s.chars().next_back().unwrap();
            if !is_punct(c) {
                break;
            }
            let run = run_len_back(s, c);
            trailing.push((hi - run, hi));
            hi -= run;
        }

        // Leading periods not belonging to a numeral.
        while lo < hi {
            let s = &text[lo..hi];
            if !s.starts_with('.') || self.roman(s) || self.is_abbrev(s) {
                break;
            }
            let run = run_len_front(s, '.');
            self.emit(lo, lo + run);
            lo += run;
        }

        self.core(lo, hi);

        for (a, b) in trailing.into_iter().rev() {
            self.emit(a, b);
        }
    }

    fn core(&mut self, mut lo: usize, hi: usize) {
        if lo >= hi {
            return;
        }
        let s = &self.text[lo..hi];
        if self.is_abbrev(s) || self.roman(s) {
            self.emit(lo, hi);
            return;
        }

        if self.cfg.split_th_apostrophe {
            let mut it = s.char_indices();
            if let (Some((_, t)), Some((_, h)), Some((ai, a))) = (it.next(), it.next(), it.next()) {
                let prefix_end = ai + a.len_utf8();
                if t.eq_ignore_ascii_case(&'t')
                    && h.eq_ignore_ascii_case(&'h')
                    && is_apostrophe(a)
                    && prefix_end < s.len()
                {
                    self.emit(lo, lo + prefix_end);
                    lo += prefix_end;
                }
            }
        }

        let s = &self.text[lo..hi];
        if !self.cfg.its_one_token && s.eq_ignore_ascii_case("its") {
            self.emit(lo, lo + 2);
            self.emit(lo + 2, hi);
            return;
        }

        // Remaining internal punctuation (commas, colons, brackets) splits.
        let mut word_start = lo;
        let mut i = lo;
        while i < hi {
            let c = self.text[i..].chars().next().unwrap();
            if is_internal_break(c) {
                self.emit(word_start, i);
                let run = run_len_front(&self.text[i..hi], c);
                self.emit(i, i + run);
                i += run;
                word_start = i;
            } else {
                i += c.len_utf8();
            }
        }
        self.emit(word_start, hi);
    }
}

fn run_len_front(s: &str, c: char) -> usize {
    s.chars().take_while(|&x| x == c).count() * c.len_utf8()
}

fn run_len_back(s: &str, c: char) -> usize {
    s.chars().rev().take_while(|&x| x == c).count() * c.len_utf8()
}

/// Tokenizes `text`. Total and deterministic: every non-whitespace
/// character ends up in exactly one token, in source order.
pub fn tokenize(text: &str, cfg: &TokenizerConfig) -> TokenizedText {
    let mut offsets = Vec::new();
    let mut start: Option<usize> = None;
    let flush = |from: usize, to: usize, offsets: &mut Vec<(usize, usize)>| {
        Chunk {
            text: &text[from..to],
            base: from,
            cfg,
            out: offsets,
        }
        .run();
    };
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                flush(s, i, &mut offsets);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        flush(s, text.len(), &mut offsets);
    }
    TokenizedText {
        tokens: offsets.iter().map(|&(a, b)| text[a..b].to_string()).collect(),
        source_offsets: offsets,
    }
}
