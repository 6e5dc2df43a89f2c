use std::io::{self, Write};

use super::QueryError;
use crate::Span;

pub const HITS_TSV_HEADER: &str = "query\tsentence_id\tanchor_index\tspan_start\tspan_end\tclause_label";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HitRecord {
    pub sentence_id: String,
    pub query: String,
    /// Terminal index of the anchor leaf.
    pub anchor_index: usize,
    pub clause_span: Span,
    pub clause_label: String,
}

impl HitRecord {
    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.query,
            self.sentence_id,
            self.anchor_index,
            self.clause_span.start,
            self.clause_span.end,
            self.clause_label
        )
    }
}

pub fn write_hits_tsv<W: Write>(mut out: W, hits: &[HitRecord]) -> io::Result<()> {
    writeln!(out, "{}", HITS_TSV_HEADER)?;
    for h in hits {
        writeln!(out, "{}", h.to_tsv_row())?;
    }
    Ok(())
}

pub fn parse_hits_tsv(text: &str) -> Result<Vec<HitRecord>, QueryError> {
    let mut hits = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let err = |message: String| QueryError::Hits { line: i + 1, message };
        if i == 0 {
            if line != HITS_TSV_HEADER {
                return Err(err(format!("expected header {:?}", HITS_TSV_HEADER)));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 6 {
            return Err(err(format!("expected 6 columns, found {}", cols.len())));
        }
        let num = |s: &str, what: &str| s.parse::<usize>().map_err(|_| err(format!("bad {} {:?}", what, s)));
        let anchor_index = num(cols[2], "anchor_index")?;
        let start = num(cols[3], "span_start")?;
        let end = num(cols[4], "span_end")?;
        if start > end || !(start..=end).contains(&anchor_index) {
            return Err(err("anchor must lie within the clause span".into()));
        }
        hits.push(HitRecord {
            query: cols[0].to_string(),
            sentence_id: cols[1].to_string(),
            anchor_index,
            clause_span: Span::new(start, end),
            clause_label: cols[5].to_string(),
        });
    }
    Ok(hits)
}
