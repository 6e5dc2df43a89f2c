//! Random tree generation and brute-force oracles shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use eme_treebank::treebank::read_trees;
use eme_treebank::{NodeLabel, Sentence, Span, Tree};
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{RngExt, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn sentence(text: &str) -> Sentence {
    read_trees(text, "t").unwrap().remove(0)
}

fn label(s: &str) -> NodeLabel {
    NodeLabel::parse(s).unwrap()
}

const POS: &[&str] = &[
    "N", "NS", "NPR", "PRO", "PRO$", "D", "P", "ADJ", "ADV", "Q", "C", "CONJ", "NEG", "VB", "VBD", "VBP", "VBN",
    "DOD", "DOP", "HVD", "BEP", "MD", "TO", "WADV", "PRO+N", "ADJ+NS", "WPRO+ADV+ADV", "MD0",
];

const WORDS: &[&str] = &[
    "they", "did", "not", "ask", "you", "Carpenter", "þe", "ſo", "Queen's", "th'", "exchaung", "kynge", "muche",
    "thynke", "&c", "Mr.", "v.C.xlviij", "Fitz-Morris", "a", "lone", "hym", "self",
];

const PHRASES: &[&str] = &[
    "IP-MAT", "IP-SUB", "IP-INF", "IP-SUB-PRN", "CP-QUE-MAT", "CP-QUE-MAT-PRN", "CP-THT", "CP-REL", "NP", "NP-SBJ",
    "NP-SBJ-1", "NP-ACC", "NP-DTV", "NP-1", "PP", "ADJP", "ADVP", "ADVP-LOC", "WNP-1", "WADVP", "QP", "FRAG",
];

const EMPTY: &[(&str, &str)] = &[("NP-ACC", "*T*-1"), ("C", "0"), ("NP-SBJ", "*con*"), ("ADVP-LOC", "*T*-2")];

/// One unit of a generated yield: a leaf, an empty category, punctuation or
/// a segmented word such as `(ADJ (ADJ21 a) (ADJ22 lone))`.
pub fn random_unit(r: &mut StdRng) -> Tree {
    let roll = r.random_range(0..100);
    if roll < 8 {
        let &(pos, w) = EMPTY.choose(r).unwrap();
        Tree::leaf(label(pos), w)
    } else if roll < 14 {
        let (pos, w) = if r.random_bool(0.5) { (".", ".") } else { (",", ",") };
        Tree::leaf(label(pos), w)
    } else if roll < 18 {
        let base = *["ADJ", "ADV", "N", "PRO+N"].choose(r).unwrap();
        let n = r.random_range(2..=3);
        let parts = (1..=n)
            .map(|i| Tree::leaf(label(&format!("{}{}{}", base, n, i)), *WORDS.choose(r).unwrap()))
            .collect();
        Tree::internal(label(base), parts)
    } else {
        Tree::leaf(label(POS.choose(r).unwrap()), *WORDS.choose(r).unwrap())
    }
}

pub fn random_units(r: &mut StdRng, max_units: usize) -> Vec<Tree> {
    let n = r.random_range(1..=max_units);
    (0..n).map(|_| random_unit(r)).collect()
}

fn build(r: &mut StdRng, units: &[Tree]) -> Tree {
    if units.len() == 1 && r.random_bool(0.6) {
        return units[0].clone();
    }
    let mut children = Vec::new();
    if units.len() == 1 {
        children.push(build(r, units));
    } else {
        let k = r.random_range(2..=units.len().min(4));
        let mut cuts: Vec<usize> = (1..units.len()).collect();
        // pick k-1 distinct cut points
        for i in 0..k - 1 {
            let j = r.random_range(i..cuts.len());
            cuts.swap(i, j);
        }
        let mut cuts: Vec<usize> = cuts[..k - 1].to_vec();
        cuts.sort();
        let mut start = 0;
        for c in cuts.into_iter().chain(std::iter::once(units.len())) {
            children.push(build(r, &units[start..c]));
            start = c;
        }
    }
    Tree::internal(label(PHRASES.choose(r).unwrap()), children)
}

/// A random bracketing over `units`; the root is always internal.
pub fn random_structure(r: &mut StdRng, units: &[Tree]) -> Tree {
    let t = build(r, units);
    if t.is_leaf() || r.random_bool(0.2) {
        Tree::internal(label(PHRASES.choose(r).unwrap()), vec![t])
    } else {
        t
    }
}

pub fn random_tree(r: &mut StdRng, max_units: usize) -> Tree {
    let units = random_units(r, max_units);
    random_structure(r, &units)
}

/// Two trees over the same yield, so that they can be scored against each
/// other.
pub fn random_pair(r: &mut StdRng, max_units: usize) -> (Tree, Tree) {
    let units = random_units(r, max_units);
    let a = random_structure(r, &units);
    let b = if r.random_bool(0.2) {
        relabel(r, &a)
    } else {
        random_structure(r, &units)
    };
    (a, b)
}

/// Same shape, some phrase labels replaced.
pub fn relabel(r: &mut StdRng, t: &Tree) -> Tree {
    match t {
        Tree::Leaf { .. } => t.clone(),
        Tree::Internal { label: l, children } => {
            let l = if r.random_bool(0.3) {
                label(PHRASES.choose(r).unwrap())
            } else {
                l.clone()
            };
            Tree::internal(l, children.iter().map(|c| relabel(r, c)).collect())
        }
    }
}

pub fn wrap(id: &str, t: Tree) -> Sentence {
    Sentence::new(id, t, true)
}

/// Spans of every node in preorder, computed directly from the leaves.
pub fn oracle_spans(t: &Tree) -> Vec<Option<Span>> {
    fn go(t: &Tree, next: &mut usize, out: &mut Vec<Option<Span>>) -> Option<Span> {
        let slot = out.len();
        out.push(None);
        let s = match t {
            Tree::Leaf { empty_category, .. } => {
                if *empty_category {
                    None
                } else {
                    *next += 1;
                    Some(Span::new(*next - 1, *next - 1))
                }
            }
            Tree::Internal { children, .. } => {
                let spans: Vec<Span> = children.iter().filter_map(|c| go(c, next, out)).collect();
                match (spans.first(), spans.last()) {
                    (Some(a), Some(b)) => Some(Span::new(a.start, b.end)),
                    _ => None,
                }
            }
        };
        out[slot] = s;
        s
    }
    let mut out = Vec::new();
    go(t, &mut 0, &mut out);
    out
}

/// Labelled brackets as evalb sees them, in preorder: spans over leaves
/// that are neither empty nor `.`/`,`; nodes covering no such leaf vanish.
pub fn oracle_labelled(t: &Tree) -> Vec<(NodeLabel, usize, usize)> {
    fn go(t: &Tree, next: &mut usize, out: &mut Vec<Option<(NodeLabel, usize, usize)>>) -> Option<(usize, usize)> {
        match t {
            Tree::Leaf {
                pos, empty_category, ..
            } => {
                let cat = pos.category();
                if *empty_category || cat == "." || cat == "," {
                    None
                } else {
                    *next += 1;
                    Some((*next - 1, *next - 1))
                }
            }
            Tree::Internal { label, children } => {
                let slot = out.len();
                out.push(None);
                let mut lo = usize::MAX;
                let mut hi = 0;
                for c in children {
                    if let Some((a, b)) = go(c, next, out) {
                        lo = lo.min(a);
                        hi = hi.max(b);
                    }
                }
                if lo == usize::MAX {
                    return None;
                }
                out[slot] = Some((label.clone(), lo, hi));
                Some((lo, hi))
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut 0, &mut out);
    out.into_iter().flatten().collect()
}

/// Category-only brackets.
pub fn oracle_brackets(t: &Tree) -> Vec<(String, usize, usize)> {
    oracle_labelled(t)
        .into_iter()
        .map(|(l, a, b)| (l.category().to_string(), a, b))
        .collect()
}

/// Multiset intersection size by exhaustive pairing.
pub fn oracle_matched<T: PartialEq>(gold: &[T], pred: &[T]) -> u64 {
    let mut used = vec![false; pred.len()];
    let mut m = 0;
    for g in gold {
        if let Some(i) = (0..pred.len()).find(|&i| !used[i] && pred[i] == *g) {
            used[i] = true;
            m += 1;
        }
    }
    m
}

/// Counts of each function tag among brackets paired on (category, span),
/// pairing the k-th occurrence on each side.
pub fn oracle_ftags(gold: &Tree, pred: &Tree, tags: &[&str]) -> HashMap<String, (u64, u64, u64)> {
    let g = oracle_labelled(gold);
    let p = oracle_labelled(pred);
    let mut out: HashMap<String, (u64, u64, u64)> = tags.iter().map(|t| (t.to_string(), (0, 0, 0))).collect();
    let mut used = vec![false; p.len()];
    for (gl, a, b) in &g {
        let hit = (0..p.len()).find(|&i| !used[i] && p[i].0.category() == gl.category() && p[i].1 == *a && p[i].2 == *b);
        if let Some(i) = hit {
            used[i] = true;
            for t in tags {
                let (x, y) = (gl.has_tag(t), p[i].0.has_tag(t));
                let e = out.get_mut(*t).unwrap();
                e.0 += (x && y) as u64;
                e.1 += x as u64;
                e.2 += y as u64;
            }
        }
    }
    out
}

// Example trees as printed with the query definitions and error analysis.

pub const DECL_INVERTED: &str = "(CP-QUE-MAT
   (IP-SUB (DOD did)
           (NEG not)
           (NP-SBJ (NPR Carpenter))
           (VB ask)
           (NP-DTV you)))";

pub const DECL_DO_NOT: &str = "(IP-SUB (NP-SBJ (PRO they))
        (DOP do)
        (NEG not)
        (VB perish))";

pub const DECL_VERB_NOT_1: &str = "(IP-MAT (NP-SBJ (PRO you))
        (DOP do)
        (NEG not)
        (NP-ACC (PRO$ your)
                (N dutie)))";

pub const DECL_VERB_NOT_2: &str = "(IP-MAT (NP-SBJ (PRO they))
        (VBP consider)
        (NEG not)
        (IP-INF (TO to)
                (VB cut)
                (NP-ACC 
                   (PRO it))))";

pub const QUE_DO_SUBJ: &str = "(CP-QUE-MAT
    (WNP-1 (WD What) (N Name))
    (IP-SUB 
        (DOD did)
        (NP-SBJ 
            (D the)
            (N Fellow)
            (PP (P with)
                (NP (D the)
                    (N Beard))))
        (VB tell)
        (NP-DTV (PRO thee))
        (CP-THT (C 0)
            (IP-SUB (NP-ACC *T*-1)
                    (NP-SBJ (PRO he))
                    (HVD had))))
    (. ?))";

pub const QUE_VERB_SUBJ: &str = "(CP-QUE-MAT
    (WADVP (WADV where))
    (IP-SUB (VBD came)
            (NP-SBJ (NPR Carpenter))
            (PP (P unto)
                (NP (PRO you))))
    (. ?))";

pub const DS_TOP_GOLD: &str = "(CP-QUE-MAT
   (INTJ NO)
   (, ,)
   (CONJ nor)
   (IP-SUB
      (DOD did)
      (NP-SBJ (Q no) (N body))
      (VB ask)
      (NP-DTV (PRO you))
      (IP-INF (TO to)
              (VB eat)))
   (. ?))";

/// "rest is same": only the root label differs.
pub const DS_TOP_PARSED: &str = "(IP-MAT
   (INTJ NO)
   (, ,)
   (CONJ nor)
   (IP-SUB
      (DOD did)
      (NP-SBJ (Q no) (N body))
      (VB ask)
      (NP-DTV (PRO you))
      (IP-INF (TO to)
              (VB eat)))
   (. ?))";

pub const DS_BOTTOM_GOLD: &str = "(CP-QUE-MAT
   (WADVP-1
      (WADV Where))
   (IP-SUB
      (ADVP-LOC *T*-1)
      (DOP do)
      (NP-SBJ (PRO you))
      (VB live))
    (. ?))";

pub const DS_BOTTOM_PARSED: &str = "(CP-QUE-MAT
   (ADVP
      (WADV Where))
   (DOP do)
   (NP-SBJ (PRO you))
   (VB live)
   (. ?))";

pub const VS_GOLD: &str = "(CP-QUE-MAT
   (IP-SUB
      (BEP Is)
      (NP-SBJ-1
         (EX ther))
      (NP-1
         (QP
            (ADVR to)
            (Q muche))
         (CP-QUE-MAT-PRN
            (IP-SUB-PRN
               (VBP thynke)
               (NP-SBJ
                  (PRO you))))
         (PP (P for)
            (NP
               (D a)
               (N kynge))))))";

pub const VS_PARSED: &str = "(CP-QUE-MAT
   (IP-SUB
      (BEP Is)
      (NP-SBJ
         (EX ther))
      (NP
         (QP
            (ADVR to)
            (Q muche)))
      (VBP thynke)
      (NP-SBJ
         (PRO you))
      (PP (P for)
         (NP
            (D a)
            (N kynge)))))";

/// Gold and parsed corpora for the error-analysis pairs, with ids.
pub fn error_pairs() -> (String, String) {
    let wrap = |id: &str, t: &str| format!("( {}\n  (ID {}))\n\n", t, id);
    let gold = [("ds,1", DS_TOP_GOLD), ("ds,2", DS_BOTTOM_GOLD), ("vs,1", VS_GOLD)];
    let pred = [("ds,1", DS_TOP_PARSED), ("ds,2", DS_BOTTOM_PARSED), ("vs,1", VS_PARSED)];
    (
        gold.iter().map(|(i, t)| wrap(i, t)).collect(),
        pred.iter().map(|(i, t)| wrap(i, t)).collect(),
    )
}
