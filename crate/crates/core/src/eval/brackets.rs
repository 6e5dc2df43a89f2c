use std::collections::HashMap;

use serde::Serialize;

use super::{pair_sentences, prf, EvalError, EvalParams, Prf};
use crate::treebank::{NodeLabel, Sentence, Tree};
use crate::Span;

/// Removes empty categories and deleted punctuation, then any node left
/// without children. Returns `None` if nothing survives.
pub fn preprocess(tree: &Tree, params: &EvalParams) -> Option<Tree> {
    match tree {
        Tree::Leaf {
            pos, empty_category, ..
        } => {
            if *empty_category || params.delete_pos_labels.contains(pos.category()) {
                None
            } else {
                Some(tree.clone())
            }
        }
        Tree::Internal { label, children } => {
            let kept: Vec<Tree> = children.iter().filter_map(|c| preprocess(c, params)).collect();
            (!kept.is_empty()).then(|| Tree::internal(label.clone(), kept))
        }
    }
}

/// A labelled constituent over non-empty terminals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bracket {
    pub label: NodeLabel,
    pub span: Span,
}

fn collect(tree: &Tree, next: &mut usize, out: &mut Vec<Bracket>) -> Span {
    match tree {
        Tree::Leaf { .. } => {
            let i = *next;
            *next += 1;
            Span::new(i, i)
        }
        Tree::Internal { label, children } => {
            let slot = out.len();
            out.push(Bracket {
                label: label.clone(),
                span: Span::new(0, 0),
            });
            let mut span: Option<Span> = None;
            for c in children {
                let cs = collect(c, next, out);
                span = Some(match span {
                    None => cs,
                    Some(s) => Span::new(s.start, cs.end),
                });
            }
            out[slot].span = span.expect("internal nodes have children");
            span.unwrap()
        }
    }
}

/// Internal-node brackets of an already preprocessed tree, in preorder.
/// Preterminals are not brackets.
pub fn brackets(tree: &Tree) -> Vec<Bracket> {
    let mut out = Vec::new();
    collect(tree, &mut 0, &mut out);
    out
}

fn words(tree: &Option<Tree>) -> Vec<String> {
    tree.as_ref().map(|t| t.tokens()).unwrap_or_default()
}

/// Preprocesses both trees and checks that their yields agree.
pub(super) fn prepared_pair(
    gold: &Sentence,
    pred: &Sentence,
    params: &EvalParams,
) -> Result<(Vec<Bracket>, Vec<Bracket>), EvalError> {
    let g = preprocess(&gold.tree, params);
    let p = preprocess(&pred.tree, params);
    let (gw, pw) = (words(&g), words(&p));
    if gw != pw {
        let position = gw.iter().zip(pw.iter()).take_while(|(a, b)| a == b).count();
        return Err(EvalError::YieldMismatch {
            id: gold.id.clone(),
            gold_len: gw.len(),
            pred_len: pw.len(),
            position,
        });
    }
    let b = |t: Option<Tree>| t.map(|t| brackets(&t)).unwrap_or_default();
    Ok((b(g), b(p)))
}

fn scoring_key(label: &NodeLabel, params: &EvalParams) -> String {
    let mut key = label.category().to_string();
    if !params.strip_function_tags {
        for t in label.function_tags() {
            key.push('-');
            key.push_str(t);
        }
    }
    if !params.strip_coindices {
        if let Some(i) = label.coindex() {
            key.push_str(&format!("-{}", i));
        }
    }
    key
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BracketScore {
    pub matched: u64,
    pub gold_count: u64,
    pub pred_count: u64,
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
}

impl BracketScore {
    pub fn from_counts(matched: u64, gold_count: u64, pred_count: u64) -> Result<Self, EvalError> {
        let Prf { recall, precision, f1 } = prf(matched, gold_count, pred_count)?;
        Ok(BracketScore {
            matched,
            gold_count,
            pred_count,
            recall,
            precision,
            f1,
        })
    }
}

/// Labelled-bracket score for one sentence pair. Brackets are compared as
/// a multiset of (label, span); the root counts.
pub fn score_brackets(gold: &Sentence, pred: &Sentence, params: &EvalParams) -> Result<BracketScore, EvalError> {
    let (g, p) = prepared_pair(gold, pred, params)?;
    let mut counts: HashMap<(String, Span), i64> = HashMap::new();
    for b in &g {
        *counts.entry((scoring_key(&b.label, params), b.span)).or_insert(0) += 1;
    }
    let mut matched = 0u64;
    for b in &p {
        if let Some(n) = counts.get_mut(&(scoring_key(&b.label, params), b.span)) {
            if *n > 0 {
                *n -= 1;
                matched += 1;
            }
        }
    }
    BracketScore::from_counts(matched, g.len() as u64, p.len() as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusBracketScore {
    pub total: BracketScore,
    pub sentences: usize,
    /// Sentences left out of the totals, with the reason.
    pub skipped: Vec<(String, String)>,
}

/// Sums counts over all sentence pairs. Pairs whose yields differ are
/// skipped and listed; a sentence-set mismatch is an error.
pub fn score_brackets_corpus(
    gold: &[Sentence],
    pred: &[Sentence],
    params: &EvalParams,
) -> Result<CorpusBracketScore, EvalError> {
    let (mut m, mut g, mut p) = (0, 0, 0);
    let mut skipped = Vec::new();
    let pairs = pair_sentences(gold, pred)?;
    for (gs, ps) in &pairs {
        match score_brackets(gs, ps, params) {
            Ok(s) => {
                m += s.matched;
                g += s.gold_count;
                p += s.pred_count;
            }
            Err(e @ EvalError::YieldMismatch { .. }) => skipped.push((gs.id.clone(), e.to_string())),
            Err(e) => return Err(e),
        }
    }
    Ok(CorpusBracketScore {
        total: BracketScore::from_counts(m, g, p)?,
        sentences: pairs.len() - skipped.len(),
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::read_trees;

    fn s(text: &str) -> Sentence {
        read_trees(text, "t").unwrap().remove(0)
    }

    const TOP_GOLD: &str = "(CP-QUE-MAT (INTJ NO) (, ,) (CONJ nor) (IP-SUB (DOD did) (NP-SBJ (Q no) (N body)) \
        (VB ask) (NP-DTV (PRO you)) (IP-INF (TO to) (VB eat))) (. ?))";

    #[test]
    fn self_comparison() {
        let g = s(TOP_GOLD);
        let r = score_brackets(&g, &g, &EvalParams::default()).unwrap();
        assert_eq!((r.recall, r.precision, r.f1), (100.0, 100.0, 100.0));
        // CP, IP-SUB, NP-SBJ, NP-DTV, IP-INF
        assert_eq!(r.gold_count, 5);
    }

    #[test]
    fn root_label_differs() {
        let g = s(TOP_GOLD);
        let p = s(&TOP_GOLD.replacen("CP-QUE-MAT", "IP-MAT", 1));
        let r = score_brackets(&g, &p, &EvalParams::default()).unwrap();
        assert_eq!((r.matched, r.gold_count, r.pred_count), (4, 5, 5));
    }

    #[test]
    fn traces_and_punctuation_removed() {
        let g = s("(CP-THT (C 0) (IP-SUB (NP-ACC *T*-1) (NP-SBJ (PRO he)) (HVD had)) (. .))");
        let b = brackets(&preprocess(&g.tree, &EvalParams::default()).unwrap());
        let labels: Vec<(&str, Span)> = b.iter().map(|x| (x.label.raw(), x.span)).collect();
        assert_eq!(
            labels,
            [("CP-THT", Span::new(0, 1)), ("IP-SUB", Span::new(0, 1)), ("NP-SBJ", Span::new(0, 0))]
        );
    }

    #[test]
    fn function_tags_and_coindices() {
        let g = s("(IP-MAT (NP-SBJ-1 (PRO he)) (VBD came))");
        let p = s("(IP-SUB (NP (PRO he)) (VBD came))");
        let r = score_brackets(&g, &p, &EvalParams::default()).unwrap();
        assert_eq!(r.matched, 2);
        let keep = EvalParams {
            strip_function_tags: false,
            ..EvalParams::default()
        };
        assert_eq!(score_brackets(&g, &p, &keep).unwrap().matched, 0);
        let keep_index = EvalParams {
            strip_coindices: false,
            ..EvalParams::default()
        };
        assert_eq!(score_brackets(&g, &p, &keep_index).unwrap().matched, 1);
    }

    #[test]
    fn yield_mismatch() {
        let g = s("(IP (NP (N a)) (VB b))");
        let p = s("(IP (NP (N a)) (VB c))");
        match score_brackets(&g, &p, &EvalParams::default()) {
            Err(EvalError::YieldMismatch { position, .. }) => assert_eq!(position, 1),
            other => panic!("{:?}", other),
        }
        let c = score_brackets_corpus(&[g.clone(), g.clone()], &[g.clone(), p], &EvalParams::default()).unwrap();
        assert_eq!(c.sentences, 1);
        assert_eq!(c.skipped.len(), 1);
        assert_eq!(c.total.f1, 100.0);
    }

    #[test]
    fn duplicate_brackets_are_a_multiset() {
        let g = s("(NP (NP (NP (N a))))");
        let p = s("(NP (NP (N a)))");
        let r = score_brackets(&g, &p, &EvalParams::default()).unwrap();
        assert_eq!((r.matched, r.gold_count, r.pred_count), (2, 3, 2));
    }

    #[test]
    fn all_punctuation() {
        let g = s("(IP (. .))");
        let r = score_brackets(&g, &g, &EvalParams::default()).unwrap();
        assert_eq!((r.gold_count, r.f1), (0, 100.0));
    }
}
