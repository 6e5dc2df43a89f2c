//! CorpusSearch-style queries over bracketed trees.
//!
//! A [`QuerySuite`] is a list of tag-class definitions plus an ordered
//! cascade of queries. Each node whose label matches a query's root pattern
//! is claimed by the first query in the cascade that holds there, which
//! yields one [`HitRecord`].

mod builtin;
mod engine;
pub mod expr;
mod hits;
mod pattern;
mod suite;

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::treebank::{IndexedTree, Sentence};

pub use builtin::{builtin_declarative_suite, builtin_question_suite, canonical_query_name, SuiteOptions};
pub use engine::Matcher;
pub use expr::{Atom, QueryExpr, Relation, ROOT_VAR};
pub use hits::{parse_hits_tsv, write_hits_tsv, HitRecord, HITS_TSV_HEADER};
pub use pattern::{label_matches, Glob, Pattern, PatternError, PatternItem, TagClass};
pub use suite::{parse_expr, parse_suite_file, render_suite_file, SuiteFile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown tag class {class:?}")]
    UnknownClass { line: usize, class: String },
    #[error("{0}")]
    Suite(String),
    #[error("hits line {line}: {message}")]
    Hits { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub name: String,
    pub root: Pattern,
    /// Variable whose leftmost terminal binding is reported; `None` for
    /// structure rules.
    pub anchor: Option<String>,
    pub body: QueryExpr,
    pub note: Option<String>,
}

impl Query {
    pub(crate) fn validate(&self, is_rule: bool) -> Result<(), String> {
        self.body
            .check_bindings()
            .map_err(|m| format!("query {}: {}", self.name, m))?;
        match (&self.anchor, is_rule) {
            (Some(_), true) => Err(format!("rule {} cannot have an anchor", self.name)),
            (None, false) => Err(format!("query {} has no anchor", self.name)),
            (None, true) => Ok(()),
            (Some(a), false) => match self.body.positive_binder(a) {
                Some((_, true)) => Ok(()),
                Some((_, false)) => Err(format!("query {}: anchor {} must be bound to a leaf", self.name, a)),
                None => Err(format!(
                    "query {}: anchor {} must be bound by an exists outside any not/or",
                    self.name, a
                )),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySuite {
    pub defs: Vec<TagClass>,
    pub cascade: Vec<Query>,
}

impl QuerySuite {
    /// Loads a suite; every block must be a `query` with an anchor.
    pub fn parse(text: &str) -> Result<Self, QueryError> {
        let file = parse_suite_file(text)?;
        if let Some(i) = file.is_rule.iter().position(|&r| r) {
            return Err(QueryError::Suite(format!(
                "{} is a rule, not a query",
                file.queries[i].name
            )));
        }
        Ok(QuerySuite {
            defs: file.defs,
            cascade: file.queries,
        })
    }

    pub fn render(&self) -> String {
        render_suite_file(&self.defs, &self.cascade)
    }

    pub fn query(&self, name: &str) -> Option<&Query> {
        let name = canonical_query_name(name);
        self.cascade.iter().find(|q| q.name == name)
    }

    /// The same queries in a new order; `names` must be a permutation.
    pub fn reordered(&self, names: &[&str]) -> Result<QuerySuite, QueryError> {
        let mut cascade = Vec::with_capacity(names.len());
        for n in names {
            let q = self
                .query(n)
                .ok_or_else(|| QueryError::Suite(format!("no query named {}", n)))?;
            if cascade.iter().any(|x: &Query| x.name == q.name) {
                return Err(QueryError::Suite(format!("{} listed twice", n)));
            }
            cascade.push(q.clone());
        }
        if cascade.len() != self.cascade.len() {
            return Err(QueryError::Suite("reordering must list every query".into()));
        }
        Ok(QuerySuite {
            defs: self.defs.clone(),
            cascade,
        })
    }
}

impl fmt::Display for QuerySuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Runs the cascade over every internal node of one sentence, in preorder.
/// Hits come back ordered by anchor index.
pub fn run_cascade(suite: &QuerySuite, sentence: &Sentence) -> Vec<HitRecord> {
    let it = IndexedTree::new(&sentence.tree);
    let m = Matcher::new(&it);
    let mut hits = Vec::new();
    for (id, node) in it.nodes().iter().enumerate() {
        if node.is_leaf() {
            continue;
        }
        for q in &suite.cascade {
            if let Some(Some(anchor)) = m.match_query(q, id) {
                let a = it.span(anchor).expect("anchors are non-empty terminals");
                let span = match it.span(id) {
                    Some(s) => crate::Span::new(s.start.min(a.start), s.end.max(a.end)),
                    None => a,
                };
                hits.push(HitRecord {
                    sentence_id: sentence.id.clone(),
                    query: q.name.clone(),
                    anchor_index: a.start,
                    clause_span: span,
                    clause_label: node.label().raw().to_string(),
                });
                break;
            }
        }
    }
    hits.sort_by_key(|h| h.anchor_index);
    hits
}

/// Runs a suite over a corpus in parallel; output keeps sentence order.
pub fn run_corpus(suite: &QuerySuite, sentences: &[Sentence]) -> Vec<HitRecord> {
    sentences
        .par_iter()
        .map(|s| run_cascade(suite, s))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
