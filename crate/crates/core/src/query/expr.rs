use std::fmt;

use super::Pattern;

/// The variable bound to the node a query is evaluated at.
pub const ROOT_VAR: &str = "root";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    IDominates,
    Dominates,
    /// Dominance that may not pass through an intermediate IP or CP.
    DominatesWithinClause,
    Precedes,
    IPrecedes,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::IDominates,
        Relation::Dominates,
        Relation::DominatesWithinClause,
        Relation::Precedes,
        Relation::IPrecedes,
    ];

    pub fn keyword(&self) -> &'static str {
        match self {
            Relation::IDominates => "iDominates",
            Relation::Dominates => "dominates",
            Relation::DominatesWithinClause => "dominatesWithinClause",
            Relation::Precedes => "precedes",
            Relation::IPrecedes => "iPrecedes",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Relation> {
        Relation::ALL.iter().copied().find(|r| r.keyword() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Rel(Relation, String, String),
    LabelIs(String, Pattern),
    IsLeaf(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryExpr {
    True,
    Atom(Atom),
    And(Vec<QueryExpr>),
    Or(Vec<QueryExpr>),
    Not(Box<QueryExpr>),
    /// Some node matching `pattern` (and a leaf, if `leaf`) can be bound to
    /// `var` so that `body` holds.
    Exists {
        var: String,
        pattern: Pattern,
        leaf: bool,
        body: Box<QueryExpr>,
    },
}

impl QueryExpr {
    pub fn rel(r: Relation, a: &str, b: &str) -> QueryExpr {
        QueryExpr::Atom(Atom::Rel(r, a.to_string(), b.to_string()))
    }

    pub fn and(mut parts: Vec<QueryExpr>) -> QueryExpr {
        match parts.len() {
            0 => QueryExpr::True,
            1 => parts.pop().unwrap(),
            _ => QueryExpr::And(parts),
        }
    }

    pub fn or(mut parts: Vec<QueryExpr>) -> QueryExpr {
        match parts.len() {
            1 => parts.pop().unwrap(),
            _ => QueryExpr::Or(parts),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: QueryExpr) -> QueryExpr {
        QueryExpr::Not(Box::new(e))
    }

    pub fn exists(var: &str, pattern: Pattern, leaf: bool, body: QueryExpr) -> QueryExpr {
        QueryExpr::Exists {
            var: var.to_string(),
            pattern,
            leaf,
            body: Box::new(body),
        }
    }

    /// Checks that every variable is bound exactly once (or is the root).
    pub fn check_bindings(&self) -> Result<(), String> {
        fn walk<'a>(e: &'a QueryExpr, scope: &mut Vec<&'a str>) -> Result<(), String> {
            let bound = |v: &str, scope: &Vec<&str>| -> Result<(), String> {
                if v == ROOT_VAR || scope.contains(&v) {
                    Ok(())
                } else {
                    Err(format!("variable {:?} is not bound", v))
                }
            };
            match e {
                QueryExpr::True => Ok(()),
                QueryExpr::Atom(Atom::Rel(_, a, b)) => {
                    bound(a, scope)?;
                    bound(b, scope)
                }
                QueryExpr::Atom(Atom::LabelIs(v, _)) | QueryExpr::Atom(Atom::IsLeaf(v)) => bound(v, scope),
                QueryExpr::And(xs) | QueryExpr::Or(xs) => xs.iter().try_for_each(|x| walk(x, scope)),
                QueryExpr::Not(x) => walk(x, scope),
                QueryExpr::Exists { var, body, .. } => {
                    if var == ROOT_VAR || scope.contains(&var.as_str()) {
                        return Err(format!("variable {:?} is bound more than once", var));
                    }
                    scope.push(var);
                    let r = walk(body, scope);
                    scope.pop();
                    r
                }
            }
        }
        let mut all = Vec::new();
        self.collect_binders(&mut all);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != all.len() {
            return Err("a variable is bound by more than one exists".into());
        }
        walk(self, &mut Vec::new())
    }

    fn collect_binders<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            QueryExpr::And(xs) | QueryExpr::Or(xs) => xs.iter().for_each(|x| x.collect_binders(out)),
            QueryExpr::Not(x) => x.collect_binders(out),
            QueryExpr::Exists { var, body, .. } => {
                out.push(var);
                body.collect_binders(out);
            }
            _ => {}
        }
    }

    /// The binder for `var` if it is reachable through `and`/`exists` only,
    /// i.e. in a positive position where pre-binding it is sound.
    pub fn positive_binder(&self, var: &str) -> Option<(&Pattern, bool)> {
        match self {
            QueryExpr::And(xs) => xs.iter().find_map(|x| x.positive_binder(var)),
            QueryExpr::Exists {
                var: v,
                pattern,
                leaf,
                body,
            } => {
                if v == var {
                    Some((pattern, *leaf))
                } else {
                    body.positive_binder(var)
                }
            }
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            QueryExpr::Or(_) => 1,
            QueryExpr::And(_) => 2,
            _ => 3,
        }
    }

    fn fmt_child(&self, child: &QueryExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() <= self.precedence() && child.precedence() < 3 {
            write!(f, "({})", child)
        } else {
            write!(f, "{}", child)
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Rel(r, a, b) => write!(f, "{} {} {}", r.keyword(), a, b),
            Atom::LabelIs(v, p) => write!(f, "label {} {}", v, p),
            Atom::IsLeaf(v) => write!(f, "leaf {}", v),
        }
    }
}

/// Single-line form; an `exists` always carries its parenthesized body.
impl fmt::Display for QueryExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryExpr::True => f.write_str("true"),
            QueryExpr::Atom(a) => write!(f, "{}", a),
            QueryExpr::And(xs) | QueryExpr::Or(xs) => {
                let op = if matches!(self, QueryExpr::And(_)) { " and " } else { " or " };
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    self.fmt_child(x, f)?;
                }
                Ok(())
            }
            QueryExpr::Not(x) => {
                f.write_str("not ")?;
                if x.precedence() < 3 {
                    write!(f, "({})", x)
                } else {
                    write!(f, "{}", x)
                }
            }
            QueryExpr::Exists {
                var,
                pattern,
                leaf,
                body,
            } => {
                write!(f, "exists {}: {}", var, pattern)?;
                if *leaf {
                    f.write_str(" leaf")?;
                }
                write!(f, " ({})", body)
            }
        }
    }
}
