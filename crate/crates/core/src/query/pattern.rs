use std::fmt;

use crate::treebank::NodeLabel;

/// A label glob: exact match on the raw label, or prefix match when the
/// pattern ends in `*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Glob(String);

impl Glob {
    pub fn new(text: &str) -> Result<Self, String> {
        if text.is_empty() {
            return Err("empty label pattern".into());
        }
        let star = text.find('*');
        if let Some(i) = star {
            if i != text.len() - 1 {
                return Err(format!("'*' may only end a pattern: {:?}", text));
            }
        }
        Ok(Glob(text.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn matches_raw(&self, raw: &str) -> bool {
        match self.0.strip_suffix('*') {
            Some(prefix) => raw.starts_with(prefix),
            None => raw == self.0,
        }
    }
}

impl fmt::Display for Glob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A named set of label globs, e.g. `finVerb = DOD|DOP|HVD|HVP|VBD|VBP`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagClass {
    pub name: String,
    pub globs: Vec<Glob>,
}

impl TagClass {
    pub fn new(name: &str, globs: &[&str]) -> Result<Self, String> {
        if globs.is_empty() {
            return Err(format!("tag class {} has no members", name));
        }
        Ok(TagClass {
            name: name.to_string(),
            globs: globs.iter().map(|g| Glob::new(g)).collect::<Result<_, _>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternItem {
    Glob(Glob),
    Class(String),
}

/// Alternatives of globs and class references, as written (`inf|part`),
/// with the class references already expanded into `globs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    items: Vec<PatternItem>,
    globs: Vec<Glob>,
}

impl Pattern {
    pub fn from_globs(globs: &[&str]) -> Result<Self, String> {
        let globs: Vec<Glob> = globs.iter().map(|g| Glob::new(g)).collect::<Result<_, _>>()?;
        Ok(Pattern {
            items: globs.iter().cloned().map(PatternItem::Glob).collect(),
            globs,
        })
    }

    pub fn from_class(class: &TagClass) -> Self {
        Pattern {
            items: vec![PatternItem::Class(class.name.clone())],
            globs: class.globs.clone(),
        }
    }

    /// Parses `A|B|c`: items with a lowercase letter name tag classes and
    /// must be found in `defs`, all others are globs.
    pub fn parse(text: &str, defs: &[TagClass]) -> Result<Self, PatternError> {
        let mut items = Vec::new();
        let mut globs = Vec::new();
        for part in text.split('|') {
            if is_class_name(part) {
                let class = defs
                    .iter()
                    .find(|c| c.name == part)
                    .ok_or_else(|| PatternError::UnknownClass(part.to_string()))?;
                items.push(PatternItem::Class(part.to_string()));
                globs.extend(class.globs.iter().cloned());
            } else {
                let g = Glob::new(part).map_err(PatternError::Glob)?;
                items.push(PatternItem::Glob(g.clone()));
                globs.push(g);
            }
        }
        Ok(Pattern { items, globs })
    }

    pub fn items(&self) -> &[PatternItem] {
        &self.items
    }

    pub fn globs(&self) -> &[Glob] {
        &self.globs
    }

    pub fn matches(&self, label: &NodeLabel) -> bool {
        self.globs.iter().any(|g| g.matches_raw(label.raw()))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            match item {
                PatternItem::Glob(g) => write!(f, "{}", g)?,
                PatternItem::Class(c) => f.write_str(c)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternError {
    UnknownClass(String),
    Glob(String),
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::UnknownClass(c) => write!(f, "unknown tag class {:?}", c),
            PatternError::Glob(m) => f.write_str(m),
        }
    }
}

pub(crate) fn is_class_name(s: &str) -> bool {
    s.bytes().any(|b| b.is_ascii_lowercase())
}

/// Whether the raw label matches a single glob or `|`-separated globs.
pub fn label_matches(label: &NodeLabel, pattern: &str) -> bool {
    pattern
        .split('|')
        .filter_map(|p| Glob::new(p).ok())
        .any(|g| g.matches_raw(label.raw()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> NodeLabel {
        NodeLabel::parse(s).unwrap()
    }

    #[test]
    fn globs() {
        assert!(label_matches(&l("IP-MAT"), "IP-MAT*"));
        assert!(label_matches(&l("IP-MAT-PRN"), "IP-MAT*"));
        assert!(!label_matches(&l("IP-INF"), "IP-MAT*|IP-SUB*"));
        assert!(label_matches(&l("IP-SUB-1"), "IP-MAT*|IP-SUB*"));
        assert!(label_matches(&l("DOD"), "DOD"));
        assert!(!label_matches(&l("DODI"), "DOD"));
    }

    #[test]
    fn star_only_as_suffix() {
        assert!(Glob::new("IP*").is_ok());
        assert!(Glob::new("*").is_ok());
        assert!(Glob::new("I*P").is_err());
        assert!(Glob::new("").is_err());
    }

    #[test]
    fn classes_expand() {
        let defs = vec![
            TagClass::new("inf", &["BE", "DO", "HV", "VB"]).unwrap(),
            TagClass::new("part", &["VBN"]).unwrap(),
        ];
        let p = Pattern::parse("inf|part|NEG", &defs).unwrap();
        assert_eq!(p.globs().len(), 6);
        assert!(p.matches(&l("VBN")));
        assert!(p.matches(&l("NEG")));
        assert!(!p.matches(&l("VBD")));
        assert_eq!(p.to_string(), "inf|part|NEG");
        assert_eq!(
            Pattern::parse("finVerb", &defs),
            Err(PatternError::UnknownClass("finVerb".into()))
        );
    }
}
