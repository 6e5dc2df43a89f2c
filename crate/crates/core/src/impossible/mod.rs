//! Detector for structures that parsers produce but gold trees never
//! contain. Rules use the query suite format with `rule` blocks.

use std::collections::BTreeMap;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::query::{parse_suite_file, render_suite_file, Matcher, Pattern, Query, QueryError, QueryExpr, TagClass};
use crate::treebank::{IndexedTree, Sentence};
use crate::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureRule {
    pub name: String,
    pub description: String,
    pub root: Pattern,
    pub pattern: QueryExpr,
}

impl StructureRule {
    fn as_query(&self) -> Query {
        Query {
            name: self.name.clone(),
            root: self.root.clone(),
            anchor: None,
            body: self.pattern.clone(),
            note: (!self.description.is_empty()).then(|| self.description.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub defs: Vec<TagClass>,
    pub rules: Vec<StructureRule>,
}

impl RuleSet {
    /// Loads a rule file; every block must be a `rule`.
    pub fn parse(text: &str) -> Result<Self, QueryError> {
        let file = parse_suite_file(text)?;
        let mut rules = Vec::new();
        for (q, is_rule) in file.queries.into_iter().zip(file.is_rule) {
            if !is_rule {
                return Err(QueryError::Suite(format!("{} is a query, not a rule", q.name)));
            }
            rules.push(StructureRule {
                name: q.name,
                description: q.note.unwrap_or_default(),
                root: q.root,
                pattern: q.body,
            });
        }
        Ok(RuleSet { defs: file.defs, rules })
    }

    pub fn render(&self) -> String {
        let qs: Vec<Query> = self.rules.iter().map(|r| r.as_query()).collect();
        render_suite_file(&self.defs, &qs)
    }
}

pub const BUILTIN_RULES: &str = "\
def finVerb = DOD|DOP|HVD|HVP|VBD|VBP
def subject = NP-SBJ*

rule matrix-over-finite-sub on IP-MAT*:
  note a matrix IP directly containing a subordinate IP with its own finite verb
  exists i: IP-SUB*
  iDominates root i
  exists f: finVerb leaf
  dominatesWithinClause i f

rule finite-verb-under-question on CP-QUE-MAT*:
  note a finite verb attached directly to a question CP with no IP between
  exists f: finVerb leaf
  iDominates root f

rule two-subjects on IP*|CP*:
  note one clause with two subject children
  exists a: subject
  exists b: subject
  iDominates root a
  iDominates root b
  precedes a b
";

pub fn builtin_impossible_rules() -> RuleSet {
    RuleSet::parse(BUILTIN_RULES).expect("built-in rules parse")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub sentence_id: String,
    pub rule: String,
    /// `None` if the node covers only empty categories.
    pub span: Option<Span>,
}

fn scan_sentence(sentence: &Sentence, queries: &[Query]) -> Vec<Finding> {
    let it = IndexedTree::new(&sentence.tree);
    let m = Matcher::new(&it);
    let mut out = Vec::new();
    for (id, node) in it.nodes().iter().enumerate() {
        if node.is_leaf() {
            continue;
        }
        for q in queries {
            if m.match_query(q, id).is_some() {
                out.push(Finding {
                    sentence_id: sentence.id.clone(),
                    rule: q.name.clone(),
                    span: it.span(id),
                });
            }
        }
    }
    out
}

/// Reports every node matching any rule, in corpus order, then node
/// preorder, then rule order.
pub fn scan(corpus: &[Sentence], rules: &RuleSet) -> Vec<Finding> {
    let queries: Vec<Query> = rules.rules.iter().map(|r| r.as_query()).collect();
    corpus
        .par_iter()
        .map(|s| scan_sentence(s, &queries))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Findings per rule, with zero entries for rules that never fired.
pub fn count_by_rule(findings: &[Finding], rules: &RuleSet) -> BTreeMap<String, usize> {
    let mut counts: BTreeMap<String, usize> = rules.rules.iter().map(|r| (r.name.clone(), 0)).collect();
    for f in findings {
        *counts.entry(f.rule.clone()).or_insert(0) += 1;
    }
    counts
}

pub fn write_findings_tsv<W: Write>(mut out: W, findings: &[Finding]) -> io::Result<()> {
    writeln!(out, "sentence_id\trule\tspan_start\tspan_end")?;
    for f in findings {
        let (s, e) = match f.span {
            Some(sp) => (sp.start.to_string(), sp.end.to_string()),
            None => (String::new(), String::new()),
        };
        writeln!(out, "{}\t{}\t{}\t{}", f.sentence_id, f.rule, s, e)?;
    }
    Ok(())
}
