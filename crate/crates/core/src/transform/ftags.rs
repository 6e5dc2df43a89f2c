use super::TransformConfig;
use crate::treebank::Tree;

/// Keeps only the configured function tags on nonterminal labels.
/// Leaf labels, categories and coindices are left alone.
pub fn filter_function_tags(t: &Tree, cfg: &TransformConfig) -> Tree {
    t.map_nodes(&mut |node| match node {
        Tree::Internal { label, children } => {
            let tags: Vec<String> = label
                .function_tags()
                .iter()
                .filter(|tag| {
                    cfg.retained_function_tags.contains(*tag) && !cfg.excluded_rare_tags.contains(*tag)
                })
                .cloned()
                .collect();
            let label = if tags.len() == label.function_tags().len() {
                label
            } else {
                label.with_function_tags(tags)
            };
            Tree::Internal { label, children }
        }
        leaf => leaf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::parse_tree;

    fn filt(s: &str) -> String {
        filter_function_tags(&parse_tree(s).unwrap(), &TransformConfig::default()).render()
    }

    #[test]
    fn drops_unretained_tags() {
        assert_eq!(
            filt("(IP-SUB-SPE-PRN (NP-SBJ (PRO he)) (VBD came))"),
            "(IP-SUB-PRN (NP-SBJ (PRO he)) (VBD came))"
        );
        assert_eq!(filt("(CP-QUE-MAT (C 0))"), "(CP-QUE-MAT (C 0))");
        assert_eq!(filt("(NP (N x))"), "(NP (N x))");
    }

    #[test]
    fn coindex_kept_rare_tags_dropped() {
        assert_eq!(filt("(NP-TPC-1 (N x))"), "(NP-1 (N x))");
        assert_eq!(filt("(ADVP-LOC-2 (ADV there))"), "(ADVP-2 (ADV there))");
    }

    #[test]
    fn leaf_labels_untouched() {
        assert_eq!(filt("(IP-MAT (NP-LOC *T*-1) (VBD came))"), "(IP-MAT (NP-LOC *T*-1) (VBD came))");
    }
}
