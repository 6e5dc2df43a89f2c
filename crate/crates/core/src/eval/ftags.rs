use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::brackets::{prepared_pair, Bracket};
use super::{pair_sentences, prf, EvalError, EvalParams};
use crate::treebank::Sentence;
use crate::Span;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TagCounts {
    pub matched: u64,
    pub gold: u64,
    pub pred: u64,
}

impl TagCounts {
    pub fn f1(&self) -> f64 {
        prf(self.matched, self.gold, self.pred).map(|p| p.f1).unwrap_or(0.0)
    }

    pub fn add(&mut self, other: &TagCounts) {
        self.matched += other.matched;
        self.gold += other.gold;
        self.pred += other.pred;
    }
}

/// Per-tag counts over bracket pairs whose bare labels and spans match.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FtagScore {
    pub tags: BTreeMap<String, TagCounts>,
    /// Number of bracket pairs the counts were taken from.
    pub matched_brackets: u64,
}

impl FtagScore {
    pub fn merge(&mut self, other: &FtagScore) {
        for (t, c) in &other.tags {
            self.tags.entry(t.clone()).or_default().add(c);
        }
        self.matched_brackets += other.matched_brackets;
    }

    pub fn total(&self) -> TagCounts {
        let mut t = TagCounts::default();
        for c in self.tags.values() {
            t.add(c);
        }
        t
    }
}

fn matched_pairs<'a>(gold: &'a [Bracket], pred: &'a [Bracket]) -> Vec<(&'a Bracket, &'a Bracket)> {
    let mut pool: HashMap<(&str, Span), Vec<&Bracket>> = HashMap::new();
    for b in pred.iter().rev() {
        pool.entry((b.label.category(), b.span)).or_default().push(b);
    }
    let mut out = Vec::new();
    for g in gold {
        if let Some(p) = pool.get_mut(&(g.label.category(), g.span)).and_then(|v| v.pop()) {
            out.push((g, p));
        }
    }
    out
}

/// Function-tag agreement for one sentence pair. Bracket pairs are matched
/// on bare category and span, taking same-key brackets in tree order.
pub fn score_function_tags(gold: &Sentence, pred: &Sentence, params: &EvalParams) -> Result<FtagScore, EvalError> {
    let (g, p) = prepared_pair(gold, pred, params)?;
    let mut score = FtagScore::default();
    for t in &params.scored_function_tags {
        score.tags.insert(t.clone(), TagCounts::default());
    }
    for (gb, pb) in matched_pairs(&g, &p) {
        score.matched_brackets += 1;
        for (tag, c) in score.tags.iter_mut() {
            let in_gold = gb.label.has_tag(tag);
            let in_pred = pb.label.has_tag(tag);
            c.gold += in_gold as u64;
            c.pred += in_pred as u64;
            c.matched += (in_gold && in_pred) as u64;
        }
    }
    Ok(score)
}

/// Corpus totals; sentence pairs whose yields differ are skipped and
/// returned alongside.
pub fn score_function_tags_corpus(
    gold: &[Sentence],
    pred: &[Sentence],
    params: &EvalParams,
) -> Result<(FtagScore, Vec<(String, String)>), EvalError> {
    let mut total = FtagScore::default();
    for t in &params.scored_function_tags {
        total.tags.insert(t.clone(), TagCounts::default());
    }
    let mut skipped = Vec::new();
    for (g, p) in pair_sentences(gold, pred)? {
        match score_function_tags(g, p, params) {
            Ok(s) => total.merge(&s),
            Err(e @ EvalError::YieldMismatch { .. }) => skipped.push((g.id.clone(), e.to_string())),
            Err(e) => return Err(e),
        }
    }
    Ok((total, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::read_trees;

    fn s(text: &str) -> Sentence {
        read_trees(text, "t").unwrap().remove(0)
    }

    #[test]
    fn subject_tag_recall_error() {
        let g = s("(IP-MAT (NP-SBJ (PRO he)) (VBD came))");
        let p = s("(IP-MAT (NP (PRO he)) (VBD came))");
        let r = score_function_tags(&g, &p, &EvalParams::default()).unwrap();
        assert_eq!(
            r.tags["SBJ"],
            TagCounts {
                matched: 0,
                gold: 1,
                pred: 0
            }
        );
        assert_eq!(
            r.tags["MAT"],
            TagCounts {
                matched: 1,
                gold: 1,
                pred: 1
            }
        );
    }

    #[test]
    fn question_matrix() {
        let g = s("(CP-QUE-MAT (IP-SUB (VBD came) (NP-SBJ (PRO he))))");
        let p = s("(CP-QUE (IP-SUB (VBD came) (NP-SBJ (PRO he))))");
        let r = score_function_tags(&g, &p, &EvalParams::default()).unwrap();
        assert_eq!((r.tags["MAT"].matched, r.tags["MAT"].gold, r.tags["MAT"].pred), (0, 1, 0));
        assert_eq!((r.tags["QUE"].matched, r.tags["QUE"].gold, r.tags["QUE"].pred), (1, 1, 1));
        assert_eq!(r.tags["QUE"].f1(), 100.0);
    }

    #[test]
    fn different_bare_label_not_compared() {
        let g = s("(IP-MAT (NP-SBJ (PRO he)) (VBD came))");
        let p = s("(IP-MAT (ADVP-SBJ (PRO he)) (VBD came))");
        let r = score_function_tags(&g, &p, &EvalParams::default()).unwrap();
        assert_eq!(r.tags["SBJ"], TagCounts::default());
        assert_eq!(r.matched_brackets, 1);
    }

    #[test]
    fn identical_trees() {
        let g = s("(CP-QUE-MAT (WNP-1 (WD What)) (IP-SUB (DOD did) (NP-SBJ (PRO he)) (VB say) (NP-ACC *T*-1)))");
        let r = score_function_tags(&g, &g, &EvalParams::default()).unwrap();
        for (t, c) in &r.tags {
            if c.gold > 0 {
                assert_eq!(c.f1(), 100.0, "{}", t);
            }
        }
        assert_eq!(r.tags["SBJ"].gold, 1);
        // the trace NP-ACC is pruned before scoring
        assert_eq!(r.tags["ACC"].gold, 0);
    }
}
