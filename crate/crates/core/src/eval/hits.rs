use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use super::{prf, EvalError};
use crate::query::{canonical_query_name, HitRecord};

/// Row order for the built-in query names; other names follow alphabetically.
const KNOWN_ORDER: [&str; 6] = ["inverted", "do-not", "verb-not", "non-inverted", "do-subj", "verb-subj"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryRow {
    pub query: String,
    pub gold_hits: u64,
    pub pred_hits: u64,
    pub matched: u64,
    pub miss: u64,
    pub false_alarm: u64,
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct QueryDiff {
    pub rows: Vec<QueryRow>,
    /// Duplicate hits that were dropped before counting.
    pub warnings: Vec<String>,
}

type Key = (String, String, usize);

fn keys(hits: &[HitRecord], side: &str, warnings: &mut Vec<String>) -> Vec<Key> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for h in hits {
        let k = (
            h.sentence_id.clone(),
            canonical_query_name(&h.query).to_string(),
            h.anchor_index,
        );
        if seen.insert(k.clone()) {
            out.push(k);
        } else {
            warnings.push(format!(
                "{}: duplicate hit {} {} {} dropped",
                side, k.1, k.0, k.2
            ));
        }
    }
    out
}

fn row_rank(name: &str) -> (usize, &str) {
    (KNOWN_ORDER.iter().position(|k| *k == name).unwrap_or(KNOWN_ORDER.len()), name)
}

/// Compares hits keyed on (sentence id, query, anchor index).
pub fn diff_query_hits(gold: &[HitRecord], pred: &[HitRecord]) -> Result<QueryDiff, EvalError> {
    let mut warnings = Vec::new();
    let g = keys(gold, "gold", &mut warnings);
    let p = keys(pred, "predicted", &mut warnings);
    let pset: HashSet<&Key> = p.iter().collect();

    let mut counts: BTreeMap<&str, (u64, u64, u64)> = BTreeMap::new();
    for k in &g {
        let c = counts.entry(&k.1).or_default();
        c.0 += 1;
        if pset.contains(k) {
            c.2 += 1;
        }
    }
    for k in &p {
        counts.entry(&k.1).or_default().1 += 1;
    }

    let mut names: Vec<&str> = counts.keys().copied().collect();
    names.sort_by_key(|n| row_rank(n));
    let mut rows = Vec::new();
    for n in names {
        let (gh, ph, m) = counts[n];
        let s = prf(m, gh, ph)?;
        rows.push(QueryRow {
            query: n.to_string(),
            gold_hits: gh,
            pred_hits: ph,
            matched: m,
            miss: gh - m,
            false_alarm: ph - m,
            recall: s.recall,
            precision: s.precision,
            f1: s.f1,
        });
    }
    Ok(QueryDiff { rows, warnings })
}

impl QueryDiff {
    pub fn row(&self, query: &str) -> Option<&QueryRow> {
        let q = canonical_query_name(query);
        self.rows.iter().find(|r| r.query == q)
    }

    /// Fixed-width table with the gold/non-gold hit columns first.
    pub fn to_table(&self) -> String {
        let width = self.rows.iter().map(|r| r.query.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<w$}  {:>9}  {:>13}  {:>5}  {:>4}  {:>4}  {:>6}  {:>6}  {:>6}",
            "query",
            "gold Hits",
            "non-gold Hits",
            "Match",
            "Miss",
            "FA",
            "Recall",
            "Prec",
            "F1",
            w = width
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<w$}  {:>9}  {:>13}  {:>5}  {:>4}  {:>4}  {:>6.2}  {:>6.2}  {:>6.2}",
                r.query,
                r.gold_hits,
                r.pred_hits,
                r.matched,
                r.miss,
                r.false_alarm,
                r.recall,
                r.precision,
                r.f1,
                w = width
            );
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("query\tgold_hits\tpred_hits\tmatch\tmiss\tfalse_alarm\trecall\tprecision\tf1\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{:.2}\t{:.2}\t{:.2}",
                r.query, r.gold_hits, r.pred_hits, r.matched, r.miss, r.false_alarm, r.recall, r.precision, r.f1
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Span;

    fn h(sid: &str, q: &str, a: usize) -> HitRecord {
        HitRecord {
            sentence_id: sid.into(),
            query: q.into(),
            anchor_index: a,
            clause_span: Span::new(0, a + 1),
            clause_label: "IP-MAT".into(),
        }
    }

    #[test]
    fn identical() {
        let hits = vec![h("a", "inverted", 1), h("b", "do-not", 2)];
        let d = diff_query_hits(&hits, &hits).unwrap();
        assert!(d.rows.iter().all(|r| r.f1 == 100.0 && r.miss == 0 && r.false_alarm == 0));
    }

    #[test]
    fn key_includes_anchor_and_query() {
        let gold = vec![h("a", "verb-subj", 4), h("b", "do-subj", 1)];
        let pred = vec![h("a", "non-inverted", 4), h("b", "do-subj", 2)];
        let d = diff_query_hits(&gold, &pred).unwrap();
        let vs = d.row("verb-subj").unwrap();
        assert_eq!((vs.gold_hits, vs.matched, vs.miss), (1, 0, 1));
        let ni = d.row("non-inverted").unwrap();
        assert_eq!((ni.pred_hits, ni.false_alarm), (1, 1));
        assert_eq!(d.row("do-subj").unwrap().miss, 1);
        let order: Vec<&str> = d.rows.iter().map(|r| r.query.as_str()).collect();
        assert_eq!(order, ["non-inverted", "do-subj", "verb-subj"]);
    }

    #[test]
    fn aliases_and_duplicates() {
        let gold = vec![h("a", "ignore-inverted", 0), h("a", "inverted", 0)];
        let pred = vec![h("a", "inverted", 0)];
        let d = diff_query_hits(&gold, &pred).unwrap();
        assert_eq!(d.warnings.len(), 1);
        let r = d.row("ignore-inverted").unwrap();
        assert_eq!((r.gold_hits, r.matched), (1, 1));
    }

    #[test]
    fn table_layout() {
        let gold: Vec<HitRecord> = (0..86).map(|i| h(&i.to_string(), "do-not", 0)).collect();
        let mut pred: Vec<HitRecord> = (0..83).map(|i| h(&i.to_string(), "do-not", 0)).collect();
        pred.push(h("x", "do-not", 0));
        let d = diff_query_hits(&gold, &pred).unwrap();
        let t = d.to_table();
        assert!(t.lines().next().unwrap().contains("gold Hits  non-gold Hits  Match  Miss    FA"));
        assert!(t.contains("86             84     83     3     1   96.51   98.81   97.65"), "{}", t);
        assert!(d.to_tsv().ends_with("do-not\t86\t84\t83\t3\t1\t96.51\t98.81\t97.65\n"));
    }
}
