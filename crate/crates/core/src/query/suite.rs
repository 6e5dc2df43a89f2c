//! Line-oriented suite format.
//!
//! ```text
//! # comment
//! def finVerb = DOD|DOP|HVD|HVP|VBD|VBP
//!
//! query inverted on IP-MAT*|IP-SUB*:
//!   anchor f
//!   exists f: finVerb leaf
//!   exists s: NP-SBJ*
//!   iDominates root f
//!   iDominates root s
//!   precedes f s
//! ```
//!
//! An `exists` line without a parenthesized body binds its variable over
//! every line after it in the block. Other body lines are expressions and
//! are joined with `and`. Blocks introduced by `rule` carry no anchor.

use std::fmt::Write as _;

use super::expr::{Atom, QueryExpr, Relation, ROOT_VAR};
use super::pattern::is_class_name;
use super::{Pattern, PatternItem, Query, QueryError, TagClass};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Colon,
    Word(String),
}

fn lex(s: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut Vec<Tok>| {
        if !word.is_empty() {
            out.push(Tok::Word(std::mem::take(word)));
        }
    };
    for c in s.chars() {
        match c {
            '(' | ')' | ':' => {
                flush(&mut word, &mut out);
                out.push(match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => Tok::Colon,
                });
            }
            c if c.is_whitespace() => flush(&mut word, &mut out),
            c => word.push(c),
        }
    }
    flush(&mut word, &mut out);
    out
}

const RESERVED: [&str; 7] = ["and", "or", "not", "exists", "true", "leaf", "label"];

fn valid_var(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&s)
        && Relation::from_keyword(s).is_none()
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

struct ExprParser<'d> {
    toks: Vec<Tok>,
    pos: usize,
    defs: &'d [TagClass],
}

impl<'d> ExprParser<'d> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_word(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), String> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(format!("expected {:?}, found {:?}", want, other)),
        }
    }

    fn word(&mut self, what: &str) -> Result<String, String> {
        match self.next() {
            Some(Tok::Word(w)) => Ok(w),
            other => Err(format!("expected {}, found {:?}", what, other)),
        }
    }

    fn var(&mut self) -> Result<String, String> {
        let v = self.word("a variable")?;
        if v == ROOT_VAR || valid_var(&v) {
            Ok(v)
        } else {
            Err(format!("{:?} is not a valid variable name", v))
        }
    }

    fn pattern(&mut self) -> Result<Pattern, String> {
        let p = self.word("a label pattern")?;
        Pattern::parse(&p, self.defs).map_err(|e| e.to_string())
    }

    fn or(&mut self) -> Result<QueryExpr, String> {
        let mut parts = vec![self.and()?];
        while self.peek_word() == Some("or") {
            self.pos += 1;
            parts.push(self.and()?);
        }
        Ok(QueryExpr::or(parts))
    }

    fn and(&mut self) -> Result<QueryExpr, String> {
        let mut parts = vec![self.unary()?];
        while self.peek_word() == Some("and") {
            self.pos += 1;
            parts.push(self.unary()?);
        }
        Ok(QueryExpr::and(parts))
    }

    /// `exists VAR : PATTERN [leaf]`, shared by binder lines and closed form.
    fn binder_head(&mut self) -> Result<(String, Pattern, bool), String> {
        let var = self.var()?;
        if var == ROOT_VAR {
            return Err("the root variable cannot be rebound".into());
        }
        self.expect(Tok::Colon)?;
        let pattern = self.pattern()?;
        let leaf = self.peek_word() == Some("leaf");
        if leaf {
            self.pos += 1;
        }
        Ok((var, pattern, leaf))
    }

    fn unary(&mut self) -> Result<QueryExpr, String> {
        match self.next() {
            Some(Tok::LParen) => {
                let e = self.or()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Word(w)) => match w.as_str() {
                "not" => Ok(QueryExpr::not(self.unary()?)),
                "true" => Ok(QueryExpr::True),
                "exists" => {
                    let (var, pattern, leaf) = self.binder_head()?;
                    self.expect(Tok::LParen)?;
                    let body = self.or()?;
                    self.expect(Tok::RParen)?;
                    Ok(QueryExpr::exists(&var, pattern, leaf, body))
                }
                "label" => {
                    let v = self.var()?;
                    let p = self.pattern()?;
                    Ok(QueryExpr::Atom(Atom::LabelIs(v, p)))
                }
                "leaf" => Ok(QueryExpr::Atom(Atom::IsLeaf(self.var()?))),
                other => match Relation::from_keyword(other) {
                    Some(r) => {
                        let a = self.var()?;
                        let b = self.var()?;
                        Ok(QueryExpr::Atom(Atom::Rel(r, a, b)))
                    }
                    None => Err(format!("unexpected {:?}", other)),
                },
            },
            other => Err(format!("unexpected {:?}", other)),
        }
    }
}

/// Parses one expression, e.g. `precedes f s and not leaf s`.
pub fn parse_expr(text: &str, defs: &[TagClass]) -> Result<QueryExpr, String> {
    let mut p = ExprParser {
        toks: lex(text),
        pos: 0,
        defs,
    };
    let e = p.or()?;
    if p.pos < p.toks.len() {
        return Err(format!("trailing input {:?}", &p.toks[p.pos..]));
    }
    Ok(e)
}

enum BodyLine {
    Binder(String, Pattern, bool),
    Expr(QueryExpr),
}

fn parse_body_line(text: &str, defs: &[TagClass]) -> Result<BodyLine, String> {
    let toks = lex(text);
    if toks.first() == Some(&Tok::Word("exists".into())) && !toks.contains(&Tok::LParen) {
        let mut p = ExprParser { toks, pos: 1, defs };
        let (v, pat, leaf) = p.binder_head()?;
        if p.pos < p.toks.len() {
            return Err(format!("trailing input {:?}", &p.toks[p.pos..]));
        }
        return Ok(BodyLine::Binder(v, pat, leaf));
    }
    parse_expr(text, defs).map(BodyLine::Expr)
}

fn build_body(lines: &[BodyLine]) -> QueryExpr {
    let mut parts = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        match line {
            BodyLine::Expr(e) => parts.push(e.clone()),
            BodyLine::Binder(v, p, leaf) => {
                parts.push(QueryExpr::exists(v, p.clone(), *leaf, build_body(&lines[i + 1..])));
                break;
            }
        }
    }
    QueryExpr::and(parts)
}

struct Block {
    line: usize,
    query: Query,
    is_rule: bool,
    lines: Vec<BodyLine>,
}

/// Parsed contents of a suite file, before cascade-specific validation.
#[derive(Debug, Clone)]
pub struct SuiteFile {
    pub defs: Vec<TagClass>,
    pub queries: Vec<Query>,
    /// Whether each query was written as a `rule` block.
    pub is_rule: Vec<bool>,
}

pub fn parse_suite_file(text: &str) -> Result<SuiteFile, QueryError> {
    let mut defs: Vec<TagClass> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    let mut open = false;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let err = |message: String| QueryError::Parse { line: lineno, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indented = raw.starts_with(|c: char| c.is_whitespace());
        if !indented {
            open = false;
            if let Some(rest) = trimmed.strip_prefix("def ") {
                let (name, members) = rest
                    .split_once('=')
                    .ok_or_else(|| err("expected `def NAME = A|B`".into()))?;
                let name = name.trim();
                if !is_class_name(name) || !valid_var(name) {
                    return Err(err(format!(
                        "tag class name {:?} must be an identifier with a lowercase letter",
                        name
                    )));
                }
                if defs.iter().any(|d| d.name == name) {
                    return Err(err(format!("tag class {:?} defined twice", name)));
                }
                let members: Vec<&str> = members.trim().split('|').collect();
                if let Some(m) = members.iter().find(|m| is_class_name(m)) {
                    return Err(err(format!("class members must be label globs, found {:?}", m)));
                }
                defs.push(TagClass::new(name, &members).map_err(err)?);
                continue;
            }
            let (is_rule, rest) = if let Some(r) = trimmed.strip_prefix("query ") {
                (false, r)
            } else if let Some(r) = trimmed.strip_prefix("rule ") {
                (true, r)
            } else {
                return Err(err(format!("expected `def`, `query` or `rule`, found {:?}", trimmed)));
            };
            let rest = rest
                .strip_suffix(':')
                .ok_or_else(|| err("block header must end with ':'".into()))?;
            let (name, root) = rest
                .split_once(" on ")
                .ok_or_else(|| err("expected `NAME on PATTERN:`".into()))?;
            let name = name.trim();
            if !valid_name(name) {
                return Err(err(format!("invalid query name {:?}", name)));
            }
            let root = Pattern::parse(root.trim(), &defs).map_err(|e| match e {
                super::PatternError::UnknownClass(c) => QueryError::UnknownClass { line: lineno, class: c },
                other => err(other.to_string()),
            })?;
            blocks.push(Block {
                line: lineno,
                query: Query {
                    name: name.to_string(),
                    root,
                    anchor: None,
                    body: QueryExpr::True,
                    note: None,
                },
                is_rule,
                lines: Vec::new(),
            });
            open = true;
            continue;
        }

        if !open {
            return Err(err("indented line outside a query block".into()));
        }
        let block = blocks.last_mut().expect("open block");
        if let Some(v) = trimmed.strip_prefix("anchor ") {
            if block.query.anchor.is_some() {
                return Err(err("anchor given twice".into()));
            }
            block.query.anchor = Some(v.trim().to_string());
        } else if let Some(n) = trimmed.strip_prefix("note ") {
            block.query.note = Some(n.trim().to_string());
        } else {
            let line = parse_body_line(trimmed, &defs).map_err(|m| {
                match m.strip_prefix("unknown tag class ") {
                    Some(c) => QueryError::UnknownClass {
                        line: lineno,
                        class: c.trim_matches('"').to_string(),
                    },
                    None => err(m),
                }
            })?;
            block.lines.push(line);
        }
    }

    let mut queries = Vec::new();
    let mut is_rule = Vec::new();
    for b in blocks {
        let mut q = b.query;
        q.body = build_body(&b.lines);
        q.validate(b.is_rule).map_err(|message| QueryError::Parse { line: b.line, message })?;
        if queries.iter().any(|x: &Query| x.name == q.name) {
            return Err(QueryError::Parse {
                line: b.line,
                message: format!("query {:?} defined twice", q.name),
            });
        }
        queries.push(q);
        is_rule.push(b.is_rule);
    }
    Ok(SuiteFile { defs, queries, is_rule })
}

fn body_lines(e: &QueryExpr, out: &mut Vec<String>) {
    match e {
        QueryExpr::True => {}
        QueryExpr::Exists {
            var,
            pattern,
            leaf,
            body,
        } => {
            out.push(format!("exists {}: {}{}", var, pattern, if *leaf { " leaf" } else { "" }));
            body_lines(body, out);
        }
        QueryExpr::And(xs) => {
            for (i, x) in xs.iter().enumerate() {
                if i + 1 == xs.len() && matches!(x, QueryExpr::Exists { .. }) {
                    body_lines(x, out);
                } else {
                    out.push(x.to_string());
                }
            }
        }
        other => out.push(other.to_string()),
    }
}

fn render_pattern_items(p: &Pattern) -> String {
    p.items()
        .iter()
        .map(|i| match i {
            PatternItem::Glob(g) => g.to_string(),
            PatternItem::Class(c) => c.clone(),
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// Renders definitions and queries in the suite format.
pub fn render_suite_file(defs: &[TagClass], queries: &[Query]) -> String {
    let mut out = String::new();
    for d in defs {
        let globs: Vec<String> = d.globs.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "def {} = {}", d.name, globs.join("|"));
    }
    for q in queries {
        out.push('\n');
        let kw = if q.anchor.is_some() { "query" } else { "rule" };
        let _ = writeln!(out, "{} {} on {}:", kw, q.name, render_pattern_items(&q.root));
        if let Some(n) = &q.note {
            let _ = writeln!(out, "  note {}", n);
        }
        if let Some(a) = &q.anchor {
            let _ = writeln!(out, "  anchor {}", a);
        }
        let mut lines = Vec::new();
        body_lines(&q.body, &mut lines);
        for l in lines {
            let _ = writeln!(out, "  {}", l);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defs() -> Vec<TagClass> {
        vec![
            TagClass::new("finVerb", &["DOD", "VBD"]).unwrap(),
            TagClass::new("inf", &["VB"]).unwrap(),
        ]
    }

    #[test]
    fn expression_precedence() {
        let e = parse_expr("leaf a or leaf b and not leaf c", &defs()).unwrap();
        assert_eq!(e.to_string(), "leaf a or leaf b and not leaf c");
        match e {
            QueryExpr::Or(xs) => assert!(matches!(xs[1], QueryExpr::And(_))),
            _ => panic!(),
        }
        let e = parse_expr("(leaf a or leaf b) and leaf c", &defs()).unwrap();
        assert_eq!(e.to_string(), "(leaf a or leaf b) and leaf c");
    }

    #[test]
    fn closed_exists() {
        let e = parse_expr("not exists w: inf|NEG leaf (dominatesWithinClause root w)", &defs()).unwrap();
        assert_eq!(e.to_string(), "not exists w: inf|NEG leaf (dominatesWithinClause root w)");
        assert!(parse_expr("exists w: nope (true)", &defs()).is_err());
        assert!(parse_expr("precedes a", &defs()).is_err());
        assert!(parse_expr("precedes a b c", &defs()).is_err());
    }

    #[test]
    fn binder_lines_scope_over_rest() {
        let text = "def finVerb = DOD|VBD\n\
                    query q on IP*:\n  anchor f\n  leaf root\n  exists f: finVerb leaf\n  iDominates root f\n  leaf f\n";
        let s = parse_suite_file(text).unwrap();
        let q = &s.queries[0];
        assert_eq!(
            q.body.to_string(),
            "leaf root and exists f: finVerb leaf (iDominates root f and leaf f)"
        );
        assert_eq!(render_suite_file(&s.defs, &s.queries), text.replacen("query", "\nquery", 1));
    }

    #[test]
    fn load_errors() {
        let unknown = "query q on IP*:\n  anchor f\n  exists f: finVerbb leaf\n";
        match parse_suite_file(unknown) {
            Err(QueryError::UnknownClass { line, class }) => {
                assert_eq!(line, 3);
                assert_eq!(class, "finVerbb");
            }
            other => panic!("{:?}", other),
        }
        assert!(matches!(
            parse_suite_file("query q on finClause:\n  leaf root\n"),
            Err(QueryError::UnknownClass { line: 1, .. })
        ));
        // anchor missing, unbound, not a leaf, under negation
        for body in [
            "  exists f: DOD leaf\n",
            "  anchor g\n  exists f: DOD leaf\n",
            "  anchor f\n  exists f: DOD\n",
            "  anchor f\n  not exists f: DOD leaf (true)\n",
            "  anchor f\n  exists f: DOD leaf\n  precedes f s\n",
            "  anchor f\n  exists f: DOD leaf\n  exists f: VBD leaf\n",
        ] {
            let text = format!("query q on IP*:\n{}", body);
            assert!(parse_suite_file(&text).is_err(), "{}", body);
        }
        let dup = "rule q on IP*:\n  leaf root\nrule q on IP*:\n  leaf root\n";
        assert!(matches!(parse_suite_file(dup), Err(QueryError::Parse { .. })));
        assert!(parse_suite_file("  leaf root\n").is_err());
        assert!(parse_suite_file("def UPPER = A\n").is_err());
    }
}
