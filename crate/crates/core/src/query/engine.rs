use crate::treebank::{IndexedTree, NodeId};

use super::expr::{Atom, QueryExpr, Relation, ROOT_VAR};
use super::{Pattern, Query};

fn is_clause_boundary(category: &str) -> bool {
    category == "IP" || category == "CP"
}

type Env<'q> = Vec<(&'q str, NodeId)>;

/// Evaluates query expressions over one indexed tree.
pub struct Matcher<'t, 'a> {
    tree: &'t IndexedTree<'a>,
    /// One past the last preorder id in each node's subtree.
    subtree_end: Vec<NodeId>,
}

impl<'t, 'a> Matcher<'t, 'a> {
    pub fn new(tree: &'t IndexedTree<'a>) -> Self {
        let n = tree.len();
        let mut subtree_end: Vec<NodeId> = (1..=n).collect();
        for id in (0..n).rev() {
            if let Some(&last) = tree.node(id).children.last() {
                subtree_end[id] = subtree_end[last];
            }
        }
        Matcher { tree, subtree_end }
    }

    pub fn tree(&self) -> &IndexedTree<'a> {
        self.tree
    }

    pub fn relation(&self, r: Relation, a: NodeId, b: NodeId) -> bool {
        let t = self.tree;
        match r {
            Relation::IDominates => t.parent(b) == Some(a),
            Relation::Dominates => a < b && b < self.subtree_end[a],
            Relation::DominatesWithinClause => {
                if !(a < b && b < self.subtree_end[a]) {
                    return false;
                }
                t.ancestors(b)
                    .take_while(|&x| x != a)
                    .all(|x| !is_clause_boundary(t.node(x).label().category()))
            }
            Relation::Precedes => match (t.span(a), t.span(b)) {
                (Some(x), Some(y)) => x.end < y.start,
                _ => false,
            },
            Relation::IPrecedes => match (t.span(a), t.span(b)) {
                (Some(x), Some(y)) => y.start == x.end + 1,
                _ => false,
            },
        }
    }

    fn fits(&self, id: NodeId, pattern: &Pattern, leaf: bool) -> bool {
        let node = self.tree.node(id);
        (!leaf || node.is_leaf()) && pattern.matches(node.label())
    }

    fn lookup(env: &Env, var: &str) -> Option<NodeId> {
        env.iter().rev().find(|(v, _)| *v == var).map(|&(_, id)| id)
    }

    /// Candidate nodes for `var`, narrowed by a dominance conjunct on an
    /// already-bound variable when the body has one.
    fn candidates(&self, var: &str, body: &QueryExpr, env: &Env) -> std::ops::Range<NodeId> {
        let conjuncts: &[QueryExpr] = match body {
            QueryExpr::And(xs) => xs,
            other => std::slice::from_ref(other),
        };
        for c in conjuncts {
            if let QueryExpr::Atom(Atom::Rel(r, a, b)) = c {
                if b != var {
                    continue;
                }
                if let Some(x) = Self::lookup(env, a) {
                    match r {
                        Relation::IDominates | Relation::Dominates | Relation::DominatesWithinClause => {
                            return x + 1..self.subtree_end[x];
                        }
                        _ => {}
                    }
                }
            }
        }
        0..self.tree.len()
    }

    fn holds<'q>(&self, e: &'q QueryExpr, env: &mut Env<'q>) -> bool {
        match e {
            QueryExpr::True => true,
            QueryExpr::Atom(a) => self.atom(a, env),
            QueryExpr::And(xs) => xs.iter().all(|x| self.holds(x, env)),
            QueryExpr::Or(xs) => xs.iter().any(|x| self.holds(x, env)),
            QueryExpr::Not(x) => !self.holds(x, env),
            QueryExpr::Exists {
                var,
                pattern,
                leaf,
                body,
            } => {
                // A variable already in scope here was pre-bound by the caller.
                if let Some(id) = Self::lookup(env, var) {
                    return self.fits(id, pattern, *leaf) && self.holds(body, env);
                }
                for id in self.candidates(var, body, env) {
                    if !self.fits(id, pattern, *leaf) {
                        continue;
                    }
                    env.push((var, id));
                    let ok = self.holds(body, env);
                    env.pop();
                    if ok {
                        return true;
                    }
                }
                false
            }
        }
    }

    fn atom(&self, a: &Atom, env: &Env) -> bool {
        let get = |v: &str| Self::lookup(env, v).expect("validated query has no free variables");
        match a {
            Atom::Rel(r, x, y) => self.relation(*r, get(x), get(y)),
            Atom::LabelIs(x, p) => p.matches(self.tree.node(get(x)).label()),
            Atom::IsLeaf(x) => self.tree.node(get(x)).is_leaf(),
        }
    }

    /// Whether `expr` holds with the root variable bound to `node`.
    pub fn holds_at(&self, expr: &QueryExpr, node: NodeId) -> bool {
        let mut env = vec![(ROOT_VAR, node)];
        self.holds(expr, &mut env)
    }

    /// Tries `query` at `node`. Returns `None` if it fails, otherwise the
    /// leftmost terminal the anchor can be bound to (or `Some(None)` for a
    /// query without an anchor).
    pub fn match_query(&self, query: &Query, node: NodeId) -> Option<Option<NodeId>> {
        if !query.root.matches(self.tree.node(node).label()) {
            return None;
        }
        let anchor = match &query.anchor {
            None => return self.holds_at(&query.body, node).then_some(None),
            Some(a) => a.as_str(),
        };
        let (pattern, leaf) = query
            .body
            .positive_binder(anchor)
            .expect("validated query binds its anchor");
        for (id, n) in self.tree.nodes().iter().enumerate() {
            if n.terminal.is_none() || !self.fits(id, pattern, leaf) {
                continue;
            }
            let mut env = vec![(ROOT_VAR, node), (anchor, id)];
            if self.holds(&query.body, &mut env) {
                return Some(Some(id));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::parse_tree;

    fn find(it: &IndexedTree, raw: &str) -> NodeId {
        it.nodes().iter().position(|n| n.label().raw() == raw).unwrap()
    }

    #[test]
    fn within_clause_blocked_by_infinitive() {
        let t = parse_tree(
            "(IP-MAT (NP-SBJ (PRO they)) (VBP consider) (NEG not) (IP-INF (TO to) (VB cut) (NP-ACC (PRO it))))",
        )
        .unwrap();
        let it = IndexedTree::new(&t);
        let m = Matcher::new(&it);
        let vb = find(&it, "VB");
        assert!(m.relation(Relation::Dominates, 0, vb));
        assert!(!m.relation(Relation::DominatesWithinClause, 0, vb));
        let ipinf = find(&it, "IP-INF");
        assert!(m.relation(Relation::DominatesWithinClause, ipinf, vb));
        assert!(m.relation(Relation::DominatesWithinClause, 0, ipinf));
        assert!(!m.relation(Relation::DominatesWithinClause, 0, 0));
    }

    #[test]
    fn child_within_clause() {
        let t = parse_tree("(IP-SUB (NP-SBJ (PRO they)) (DOP do) (NEG not) (VB perish))").unwrap();
        let it = IndexedTree::new(&t);
        let m = Matcher::new(&it);
        assert!(m.relation(Relation::DominatesWithinClause, 0, find(&it, "VB")));
    }

    #[test]
    fn empty_nodes_never_precede() {
        let t = parse_tree("(CP-THT (C 0) (IP-SUB (NP-ACC *T*-1) (NP-SBJ (PRO he)) (HVD had)))").unwrap();
        let it = IndexedTree::new(&t);
        let m = Matcher::new(&it);
        let c = find(&it, "C");
        let acc = find(&it, "NP-ACC");
        let sbj = find(&it, "NP-SBJ");
        let hvd = find(&it, "HVD");
        for r in [Relation::Precedes, Relation::IPrecedes] {
            assert!(!m.relation(r, c, sbj));
            assert!(!m.relation(r, acc, hvd));
            assert!(!m.relation(r, sbj, acc));
        }
        assert!(m.relation(Relation::IPrecedes, sbj, hvd));
    }
}
