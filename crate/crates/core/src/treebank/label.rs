use std::fmt;

use super::TreebankError;

/// A parsed node label such as `CP-QUE-MAT`, `NP-SBJ-1` or `ADJ_NT`.
///
/// The raw text is kept alongside the parsed parts so that labels always
/// render back exactly as they were read.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeLabel {
    raw: String,
    category: String,
    function_tags: Vec<String>,
    coindex: Option<u32>,
}

impl NodeLabel {
    /// Parses a dash-separated label.
    ///
    /// The first component is the category, a trailing all-digit component
    /// is the coindex and everything in between is a function tag. Digits
    /// inside a component (`ADJ21`) stay part of it.
    pub fn parse(raw: &str) -> Result<Self, TreebankError> {
        if raw.is_empty() {
            return Err(TreebankError::MalformedLabel {
                label: raw.to_string(),
                reason: "empty label",
            });
        }
        if raw.chars().any(|c| c.is_whitespace() || c == '(' || c == ')') {
            return Err(TreebankError::MalformedLabel {
                label: raw.to_string(),
                reason: "label contains whitespace or parentheses",
            });
        }

        // Labels that begin with a dash (-LRB-, -NONE-) have no inner structure.
        if raw.starts_with('-') {
            return Ok(NodeLabel {
                raw: raw.to_string(),
                category: raw.to_string(),
                function_tags: Vec::new(),
                coindex: None,
            });
        }

        let mut parts: Vec<&str> = raw.split('-').collect();
        let category = parts.remove(0).to_string();
        let mut coindex = None;
        if let Some(idx) = parts.pop_if(|p| is_all_digits(p)) {
            coindex = Some(idx.parse::<u32>().map_err(|_| TreebankError::MalformedLabel {
                label: raw.to_string(),
                reason: "coindex out of range",
            })?);
        }
        if parts.iter().any(|p| p.is_empty()) {
            return Err(TreebankError::MalformedLabel {
                label: raw.to_string(),
                reason: "empty dash component",
            });
        }
        if parts.iter().any(|p| is_all_digits(p)) {
            return Err(TreebankError::MalformedLabel {
                label: raw.to_string(),
                reason: "numeric component before the end of the label",
            });
        }

        Ok(NodeLabel {
            raw: raw.to_string(),
            category,
            function_tags: parts.into_iter().map(str::to_string).collect(),
            coindex,
        })
    }

    /// Builds a label from its parts; the raw text is derived.
    pub fn from_parts(category: &str, function_tags: &[String], coindex: Option<u32>) -> Self {
        let mut raw = category.to_string();
        for tag in function_tags {
            raw.push('-');
            raw.push_str(tag);
        }
        if let Some(idx) = coindex {
            raw.push('-');
            raw.push_str(&idx.to_string());
        }
        NodeLabel {
            raw,
            category: category.to_string(),
            function_tags: function_tags.to_vec(),
            coindex,
        }
    }

    pub fn raw(&self) -> &str {
        &self.raw
    }

    pub fn category(&self) -> &str {
        &self.category
    }

    pub fn function_tags(&self) -> &[String] {
        &self.function_tags
    }

    pub fn coindex(&self) -> Option<u32> {
        self.coindex
    }

    /// True for nonterminals introduced for segmented words (`ADJ_NT`).
    pub fn nt_marker(&self) -> bool {
        self.category.ends_with("_NT")
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.function_tags.iter().any(|t| t == tag)
    }

    pub fn with_category(&self, category: &str) -> Self {
        NodeLabel::from_parts(category, &self.function_tags, self.coindex)
    }

    pub fn with_function_tags(&self, tags: Vec<String>) -> Self {
        NodeLabel::from_parts(&self.category, &tags, self.coindex)
    }

    pub fn without_coindex(&self) -> Self {
        NodeLabel::from_parts(&self.category, &self.function_tags, None)
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

fn is_all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn question_clause_label() {
        let l = NodeLabel::parse("CP-QUE-MAT").unwrap();
        assert_eq!(l.category(), "CP");
        assert_eq!(l.function_tags(), ["QUE", "MAT"]);
        assert_eq!(l.coindex(), None);
    }

    #[test]
    fn coindexed_subject() {
        let l = NodeLabel::parse("NP-SBJ-1").unwrap();
        assert_eq!(l.category(), "NP");
        assert_eq!(l.function_tags(), ["SBJ"]);
        assert_eq!(l.coindex(), Some(1));
    }

    #[test]
    fn bare_and_segmented() {
        let l = NodeLabel::parse("VB").unwrap();
        assert_eq!(l.category(), "VB");
        assert!(l.function_tags().is_empty());
        assert_eq!(l.coindex(), None);

        let l = NodeLabel::parse("ADJ21").unwrap();
        assert_eq!(l.category(), "ADJ21");
        assert_eq!(l.coindex(), None);

        let l = NodeLabel::parse("ADJ_NT").unwrap();
        assert!(l.nt_marker());
    }

    #[test]
    fn coindex_only() {
        let l = NodeLabel::parse("WNP-1").unwrap();
        assert_eq!(l.category(), "WNP");
        assert!(l.function_tags().is_empty());
        assert_eq!(l.coindex(), Some(1));
    }

    #[test]
    fn bracket_tokens_are_atomic() {
        let l = NodeLabel::parse("-LRB-").unwrap();
        assert_eq!(l.category(), "-LRB-");
        assert!(l.function_tags().is_empty());
    }

    #[test]
    fn errors() {
        assert!(NodeLabel::parse("").is_err());
        assert!(NodeLabel::parse("NP SBJ").is_err());
        assert!(NodeLabel::parse("NP--SBJ").is_err());
        assert!(NodeLabel::parse("NP-1-SBJ").is_err());
    }

    #[test]
    fn figure_labels_render_back() {
        for raw in [
            "CP-QUE-MAT",
            "IP-SUB",
            "NP-SBJ",
            "NP-DTV",
            "NP-ACC",
            "WNP-1",
            "WADVP-1",
            "ADVP-LOC",
            "NP-SBJ-1",
            "NP-1",
            "CP-QUE-MAT-PRN",
            "IP-SUB-PRN",
            "IP-INF",
            "CP-THT",
            "PRO$",
            ".",
            ",",
        ] {
            let l = NodeLabel::parse(raw).unwrap();
            let rebuilt = NodeLabel::from_parts(l.category(), l.function_tags(), l.coindex());
            assert_eq!(rebuilt.raw(), raw);
            assert_eq!(rebuilt, l);
        }
    }
}
