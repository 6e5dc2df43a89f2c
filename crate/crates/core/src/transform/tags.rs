use crate::treebank::{NodeLabel, Tree};

/// Replaces a complex tag (`WPRO+ADV+ADV`) with its rightmost component.
pub fn simplify_complex_tag(tag: &str) -> &str {
    match tag.rfind('+') {
        Some(i) => &tag[i + 1..],
        None => tag,
    }
}

/// Splits a segmented-word tag such as `ADJ21` into its base (`ADJ`).
/// Exactly two trailing digits: part count, then position.
fn segmented_base(category: &str) -> Option<&str> {
    let bytes = category.as_bytes();
    let n = bytes.len();
    if n < 3 {
        return None;
    }
    let (base, digits) = category.split_at(n - 2);
    if digits.bytes().all(|b| b.is_ascii_digit())
        && !base.as_bytes()[base.len() - 1].is_ascii_digit()
    {
        Some(base)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentWarning {
    pub parent: String,
    pub bases: Vec<String>,
}

impl std::fmt::Display for SegmentWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "segmented parts under {} have inconsistent bases: {}",
            self.parent,
            self.bases.join(",")
        )
    }
}

/// Strips the position digits from segmented-word tags and marks their
/// parent as a nonterminal: `(ADJ (ADJ21 a) (ADJ22 lone))` becomes
/// `(ADJ_NT (ADJ a) (ADJ lone))`.
pub fn rewrite_segmented(t: &Tree) -> (Tree, Vec<SegmentWarning>) {
    let mut warnings = Vec::new();
    let out = rewrite_node(t, &mut warnings);
    (out, warnings)
}

fn rewrite_node(t: &Tree, warnings: &mut Vec<SegmentWarning>) -> Tree {
    match t {
        Tree::Leaf { pos, word, .. } => match segmented_base(pos.category()) {
            Some(base) => Tree::leaf(pos.with_category(base), word.clone()),
            None => t.clone(),
        },
        Tree::Internal { label, children } => {
            let bases: Vec<&str> = children
                .iter()
                .filter(|c| c.is_leaf())
                .filter_map(|c| segmented_base(c.label().category()))
                .collect();
            let new_children = children.iter().map(|c| rewrite_node(c, warnings)).collect();
            let label = if bases.is_empty() {
                label.clone()
            } else {
                let mut distinct: Vec<String> = bases.iter().map(|b| b.to_string()).collect();
                distinct.sort();
                distinct.dedup();
                if distinct.len() > 1 {
                    warnings.push(SegmentWarning {
                        parent: label.raw().to_string(),
                        bases: distinct,
                    });
                }
                // The parent of segmented parts is itself a POS-level node.
                let category = match simplify_complex_tag(label.category()) {
                    "" => label.category(),
                    c => c,
                };
                if category.ends_with("_NT") {
                    label.with_category(category)
                } else {
                    label.with_category(&format!("{}_NT", category))
                }
            };
            Tree::Internal {
                label,
                children: new_children,
            }
        }
    }
}

fn normalize_pos(pos: &NodeLabel) -> NodeLabel {
    let simplified = simplify_complex_tag(pos.category());
    let category = match simplified {
        "MD0" => "MD",
        "" => pos.category(),
        other => other,
    };
    if category == pos.category() {
        pos.clone()
    } else {
        pos.with_category(category)
    }
}

/// Full POS normalization: complex-tag simplification and `MD0` to `MD` on
/// every leaf, followed by the segmented-word rewrite. Idempotent.
pub fn normalize_tags(t: &Tree) -> (Tree, Vec<SegmentWarning>) {
    let simplified = t.map_nodes(&mut |node| match node {
        Tree::Leaf { pos, word, .. } => Tree::leaf(normalize_pos(&pos), word),
        other => other,
    });
    rewrite_segmented(&simplified)
}
