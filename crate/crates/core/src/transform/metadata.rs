use std::fmt;

use super::TransformConfig;
use crate::treebank::{NodeLabel, Sentence, Tree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DropReason {
    /// The whole tree is a metadata element (`META`, `CODE`, `REF`).
    Rooted(String),
    ContainsBreak,
    /// Removing a metadata subtree would leave a node without children.
    IllFormedAfterRemoval(String),
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DropReason::Rooted(label) => write!(f, "{}-rooted", label),
            DropReason::ContainsBreak => f.write_str("contains-BREAK"),
            DropReason::IllFormedAfterRemoval(label) => {
                write!(f, "ill-formed-after-{}-removal", label)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DroppedSentence {
    pub sentence: Sentence,
    pub reason: DropReason,
}

#[derive(Debug, Clone, Default)]
pub struct MetadataOutcome {
    pub kept: Vec<Sentence>,
    pub dropped: Vec<DroppedSentence>,
}

const BREAK: &str = "BREAK";

/// `(CODE <paren>)` and `(CODE <$$paren>)` mark real parentheses; they are
/// turned into bracket tokens before any metadata is removed.
fn rewrite_parens(t: &Tree) -> Tree {
    t.map_nodes(&mut |node| match &node {
        Tree::Leaf { pos, word, .. } if pos.category() == "CODE" => match word.as_str() {
            "<paren>" => Tree::leaf(NodeLabel::from_parts("OPAREN", &[], None), "-LRB-"),
            "<$$paren>" => Tree::leaf(NodeLabel::from_parts("CPAREN", &[], None), "-RRB-"),
            _ => node,
        },
        _ => node,
    })
}

fn contains_category(t: &Tree, category: &str) -> bool {
    let mut found = false;
    t.walk(&mut |n| found |= n.label().category() == category);
    found
}

/// Removes metadata subtrees. `Err` carries the label whose removal left a
/// parent without children.
fn remove_metadata(t: &Tree, labels: &[&str]) -> Result<Tree, String> {
    match t {
        Tree::Leaf { .. } => Ok(t.clone()),
        Tree::Internal { label, children } => {
            let mut kept = Vec::with_capacity(children.len());
            let mut removed = None;
            for c in children {
                let cat = c.label().category();
                if labels.contains(&cat) {
                    removed = Some(cat.to_string());
                    continue;
                }
                kept.push(remove_metadata(c, labels)?);
            }
            if kept.is_empty() {
                return Err(removed.unwrap_or_else(|| label.category().to_string()));
            }
            Ok(Tree::Internal {
                label: label.clone(),
                children: kept,
            })
        }
    }
}

/// Drops or cleans trees carrying corpus metadata.
///
/// Trees rooted in a metadata element, trees containing `BREAK`, and trees
/// that would become ill-formed are dropped with a reason; other metadata
/// subtrees are removed in place.
pub fn strip_metadata(sentences: Vec<Sentence>, cfg: &TransformConfig) -> MetadataOutcome {
    let removable: Vec<&str> = cfg
        .metadata_labels
        .iter()
        .map(String::as_str)
        .filter(|l| *l != BREAK)
        .collect();
    let break_label = cfg.metadata_labels.contains(BREAK);

    let mut out = MetadataOutcome::default();
    for s in sentences {
        let tree = rewrite_parens(&s.tree);
        let root_cat = tree.label().category().to_string();
        let reason = if removable.contains(&root_cat.as_str()) {
            Some(DropReason::Rooted(root_cat))
        } else if break_label && contains_category(&tree, BREAK) {
            Some(DropReason::ContainsBreak)
        } else {
            None
        };
        if let Some(reason) = reason {
            out.dropped.push(DroppedSentence { sentence: s, reason });
            continue;
        }
        match remove_metadata(&tree, &removable) {
            Ok(t) => out.kept.push(s.with_tree(t)),
            Err(label) => out.dropped.push(DroppedSentence {
                sentence: s,
                reason: DropReason::IllFormedAfterRemoval(label),
            }),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::read_trees;

    fn run(src: &str) -> MetadataOutcome {
        strip_metadata(read_trees(src, "t").unwrap(), &TransformConfig::default())
    }

    #[test]
    fn meta_rooted_dropped() {
        let out = run("(META (NP (N stage)))");
        assert!(out.kept.is_empty());
        assert_eq!(out.dropped[0].reason, DropReason::Rooted("META".into()));
        assert_eq!(out.dropped[0].reason.to_string(), "META-rooted");
    }

    #[test]
    fn parens_rewritten() {
        let out = run("(IP-MAT (CODE <paren>) (FW x) (CODE <$$paren>))");
        assert_eq!(
            out.kept[0].tree.render(),
            "(IP-MAT (OPAREN -LRB-) (FW x) (CPAREN -RRB-))"
        );
        assert_eq!(out.kept[0].tokens, ["-LRB-", "x", "-RRB-"]);
    }

    #[test]
    fn clean_tree_unchanged() {
        let src = "(IP-MAT (NP-SBJ (PRO they)) (VBD came))";
        let out = run(src);
        assert_eq!(out.kept[0].tree.render(), src);
        assert!(out.dropped.is_empty());
    }

    #[test]
    fn code_subtree_removed() {
        let out = run("( (IP-MAT (CODE <P_12>) (NP-SBJ (PRO they)) (VBD came)) (ID a,1))");
        assert_eq!(out.kept[0].tree.render(), "(IP-MAT (NP-SBJ (PRO they)) (VBD came))");
        assert_eq!(out.kept[0].id, "a,1");
        assert_eq!(out.kept[0].tokens, ["they", "came"]);
    }

    #[test]
    fn code_leaf_leaves_empty_parent() {
        let out = run("(IP-MAT (NP-SBJ (CODE {x})) (VBD came))");
        assert!(out.kept.is_empty());
        assert_eq!(
            out.dropped[0].reason,
            DropReason::IllFormedAfterRemoval("CODE".into())
        );
    }

    #[test]
    fn break_and_code_root() {
        let out = run("(IP-MAT (BREAK x) (VBD came))\n(CODE <P_45>)\n(REF (FW x))");
        assert!(out.kept.is_empty());
        let reasons: Vec<String> = out.dropped.iter().map(|d| d.reason.to_string()).collect();
        assert_eq!(reasons, ["contains-BREAK", "CODE-rooted", "REF-rooted"]);
    }
}
