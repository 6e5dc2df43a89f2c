//! Tree data model, label parsing and the bracketed file format.

mod label;
mod reader;
mod spans;
mod tree;

use thiserror::Error;

pub use label::NodeLabel;
pub use reader::{parse_tree, read_trees, TreeReader};
pub use spans::{terminal_spans, IndexedNode, IndexedTree, NodeId, Span};
pub use tree::{is_empty_category, render_tree, Sentence, Tree};

#[derive(Debug, Error)]
pub enum TreebankError {
    #[error("malformed label {label:?}: {reason}")]
    MalformedLabel { label: String, reason: &'static str },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn parse_label(raw: &str) -> Result<NodeLabel, TreebankError> {
    NodeLabel::parse(raw)
}

/// Reads all trees from a file; the file name is used for synthesized ids.
pub fn read_tree_file(path: &std::path::Path) -> Result<Vec<Sentence>, TreebankError> {
    let file = std::fs::File::open(path)?;
    let origin = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    TreeReader::new(std::io::BufReader::new(file), origin).collect()
}

/// Renders sentences one per line, in wrapper form where they carry an ID.
pub fn write_sentences<W: std::io::Write>(mut out: W, sentences: &[Sentence]) -> std::io::Result<()> {
    for s in sentences {
        writeln!(out, "{}", s.render())?;
    }
    Ok(())
}
