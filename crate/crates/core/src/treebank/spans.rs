use super::{NodeLabel, Tree};

/// Inclusive range of non-empty terminal indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.start <= idx && idx <= self.end
    }
}

/// Node identifier within an [`IndexedTree`]; nodes are numbered in preorder.
pub type NodeId = usize;

#[derive(Debug, Clone)]
pub struct IndexedNode<'a> {
    pub tree: &'a Tree,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub depth: usize,
    /// `None` when the node dominates only empty categories.
    pub span: Option<Span>,
    /// Terminal index for non-empty leaves.
    pub terminal: Option<usize>,
}

impl<'a> IndexedNode<'a> {
    pub fn label(&self) -> &'a NodeLabel {
        self.tree.label()
    }

    pub fn is_leaf(&self) -> bool {
        self.tree.is_leaf()
    }
}

/// Flattened, span-annotated view of a tree used by queries and scorers.
#[derive(Debug, Clone)]
pub struct IndexedTree<'a> {
    nodes: Vec<IndexedNode<'a>>,
    terminal_count: usize,
}

impl<'a> IndexedTree<'a> {
    pub fn new(tree: &'a Tree) -> Self {
        let mut it = IndexedTree {
            nodes: Vec::with_capacity(tree.node_count()),
            terminal_count: 0,
        };
        it.add(tree, None, 0);
        it
    }

    fn add(&mut self, tree: &'a Tree, parent: Option<NodeId>, depth: usize) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(IndexedNode {
            tree,
            parent,
            children: Vec::new(),
            depth,
            span: None,
            terminal: None,
        });
        match tree {
            Tree::Leaf { empty_category, .. } => {
                if !empty_category {
                    let idx = self.terminal_count;
                    self.terminal_count += 1;
                    self.nodes[id].terminal = Some(idx);
                    self.nodes[id].span = Some(Span::new(idx, idx));
                }
            }
            Tree::Internal { children, .. } => {
                let mut span: Option<Span> = None;
                let mut ids = Vec::with_capacity(children.len());
                for c in children {
                    let cid = self.add(c, Some(id), depth + 1);
                    ids.push(cid);
                    if let Some(cs) = self.nodes[cid].span {
                        span = Some(match span {
                            None => cs,
                            Some(s) => Span::new(s.start, cs.end),
                        });
                    }
                }
                self.nodes[id].children = ids;
                self.nodes[id].span = span;
            }
        }
        id
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &IndexedNode<'a> {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[IndexedNode<'a>] {
        &self.nodes
    }

    pub fn terminal_count(&self) -> usize {
        self.terminal_count
    }

    pub fn span(&self, id: NodeId) -> Option<Span> {
        self.nodes[id].span
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    /// Strict ancestors of `id`, nearest first.
    pub fn ancestors(&self, id: NodeId) -> Ancestors<'_, 'a> {
        Ancestors {
            tree: self,
            next: self.nodes[id].parent,
        }
    }

    /// True iff `a` is a proper ancestor of `b`.
    pub fn dominates(&self, a: NodeId, b: NodeId) -> bool {
        // Preorder numbering: descendants of `a` occupy a contiguous id range.
        a < b && self.ancestors(b).any(|x| x == a)
    }
}

pub struct Ancestors<'t, 'a> {
    tree: &'t IndexedTree<'a>,
    next: Option<NodeId>,
}

impl<'t, 'a> Iterator for Ancestors<'t, 'a> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let cur = self.next?;
        self.next = self.tree.nodes[cur].parent;
        Some(cur)
    }
}

/// Spans of every node in preorder.
pub fn terminal_spans(t: &Tree) -> Vec<Option<Span>> {
    IndexedTree::new(t).nodes().iter().map(|n| n.span).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::parse_tree;

    #[test]
    fn small_clause() {
        let t = parse_tree("(IP-MAT (NP-SBJ (PRO they)) (DOP do))").unwrap();
        let spans = terminal_spans(&t);
        assert_eq!(spans[0], Some(Span::new(0, 1)));
        assert_eq!(spans[1], Some(Span::new(0, 0)));
        assert_eq!(spans[2], Some(Span::new(0, 0)));
        assert_eq!(spans[3], Some(Span::new(1, 1)));
    }

    #[test]
    fn trace_has_no_span() {
        let t = parse_tree(
            "(CP-THT (C 0) (IP-SUB (NP-ACC *T*-1) (NP-SBJ (PRO he)) (HVD had)))",
        )
        .unwrap();
        let it = IndexedTree::new(&t);
        let trace = it
            .nodes()
            .iter()
            .position(|n| n.label().raw() == "NP-ACC")
            .unwrap();
        assert_eq!(it.span(trace), None);
        let c = it.nodes().iter().position(|n| n.label().raw() == "C").unwrap();
        assert_eq!(it.span(c), None);
        assert_eq!(it.span(0), Some(Span::new(0, 1)));
    }

    #[test]
    fn only_empty_material() {
        let t = parse_tree("(NP (NP-ACC *T*-1) (C 0))").unwrap();
        assert!(terminal_spans(&t).iter().all(Option::is_none));
    }

    #[test]
    fn dominance_and_ancestors() {
        let t = parse_tree("(A (B (C x)) (D y))").unwrap();
        let it = IndexedTree::new(&t);
        assert!(it.dominates(0, 2));
        assert!(!it.dominates(1, 3));
        assert!(!it.dominates(1, 1));
        assert_eq!(it.ancestors(2).collect::<Vec<_>>(), [1, 0]);
    }
}
