use super::NodeLabel;

/// A constituent tree. Leaves pair a part-of-speech label with a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tree {
    Internal {
        label: NodeLabel,
        children: Vec<Tree>,
    },
    Leaf {
        pos: NodeLabel,
        word: String,
        empty_category: bool,
    },
}

/// Empty categories are recognised by their surface form: traces and other
/// starred material (`*T*-1`, `*con*`) and the null complementizer `0`.
pub fn is_empty_category(word: &str) -> bool {
    word.starts_with('*') || word == "0"
}

impl Tree {
    pub fn leaf(pos: NodeLabel, word: impl Into<String>) -> Tree {
        let word = word.into();
        let empty_category = is_empty_category(&word);
        Tree::Leaf {
            pos,
            word,
            empty_category,
        }
    }

    /// Panics if `children` is empty.
    pub fn internal(label: NodeLabel, children: Vec<Tree>) -> Tree {
        assert!(!children.is_empty(), "internal node {} without children", label);
        Tree::Internal { label, children }
    }

    /// The node label, or the POS label for leaves.
    pub fn label(&self) -> &NodeLabel {
        match self {
            Tree::Internal { label, .. } => label,
            Tree::Leaf { pos, .. } => pos,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf { .. })
    }

    pub fn children(&self) -> &[Tree] {
        match self {
            Tree::Internal { children, .. } => children,
            Tree::Leaf { .. } => &[],
        }
    }

    /// All leaves, left to right, empty categories included.
    pub fn leaves(&self) -> Vec<&Tree> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Tree>) {
        match self {
            Tree::Leaf { .. } => out.push(self),
            Tree::Internal { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    /// Words of the non-empty leaves, in order.
    pub fn tokens(&self) -> Vec<String> {
        self.leaves()
            .into_iter()
            .filter_map(|l| match l {
                Tree::Leaf {
                    word,
                    empty_category: false,
                    ..
                } => Some(word.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(Tree::node_count).sum::<usize>()
    }

    /// Canonical bracketed form: single spaces, no indentation.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        match self {
            Tree::Leaf { pos, word, .. } => {
                out.push('(');
                out.push_str(pos.raw());
                out.push(' ');
                out.push_str(word);
                out.push(')');
            }
            Tree::Internal { label, children } => {
                out.push('(');
                out.push_str(label.raw());
                for c in children {
                    out.push(' ');
                    c.render_into(out);
                }
                out.push(')');
            }
        }
    }

    /// Rebuilds the tree bottom-up, applying `f` to every node after its
    /// children have been rewritten.
    pub fn map_nodes<F>(&self, f: &mut F) -> Tree
    where
        F: FnMut(Tree) -> Tree,
    {
        let rebuilt = match self {
            Tree::Leaf { .. } => self.clone(),
            Tree::Internal { label, children } => Tree::Internal {
                label: label.clone(),
                children: children.iter().map(|c| c.map_nodes(f)).collect(),
            },
        };
        f(rebuilt)
    }

    /// Preorder visit of every node.
    pub fn walk<'a, F: FnMut(&'a Tree)>(&'a self, f: &mut F) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }
}

pub fn render_tree(t: &Tree) -> String {
    t.render()
}

/// One corpus tree together with its identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub id: String,
    pub tree: Tree,
    pub tokens: Vec<String>,
    /// Whether the id came from an `(ID ...)` node rather than being synthesized.
    pub has_id_node: bool,
}

impl Sentence {
    pub fn new(id: impl Into<String>, tree: Tree, has_id_node: bool) -> Self {
        let tokens = tree.tokens();
        Sentence {
            id: id.into(),
            tree,
            tokens,
            has_id_node,
        }
    }

    /// Replaces the tree, keeping the id, and recomputes the tokens.
    pub fn with_tree(&self, tree: Tree) -> Self {
        Sentence::new(self.id.clone(), tree, self.has_id_node)
    }

    /// PPCEME-style wrapper form: `( TREE (ID id))` when the id came from the
    /// source, the bare tree otherwise.
    pub fn render(&self) -> String {
        if self.has_id_node {
            format!("( {} (ID {}))", self.tree.render(), self.id)
        } else {
            self.tree.render()
        }
    }
}
