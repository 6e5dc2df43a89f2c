use roxmltree::{Node, ParsingOptions};
use unicode_normalization::UnicodeNormalization;

use super::{ExtractError, ExtractionConfig};

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Document {
    pub id: String,
    pub title: String,
    pub author: String,
    pub date: String,
    pub paragraphs: Vec<String>,
}

fn name_in(node: &Node, names: &std::collections::BTreeSet<String>) -> bool {
    let tag = node.tag_name().name();
    names.iter().any(|n| n.eq_ignore_ascii_case(tag))
}

fn name_is(node: &Node, name: &str) -> bool {
    node.tag_name().name().eq_ignore_ascii_case(name)
}

/// Collapses whitespace runs to one space, trims, and applies NFC.
fn clean(text: &str) -> String {
    let collapsed = text.split_whitespace().collect::<Vec<_>>().join(" ");
    collapsed.nfc().collect()
}

fn collect_text(node: Node, cfg: &ExtractionConfig, out: &mut String) {
    for child in node.children() {
        if child.is_text() {
            out.push_str(child.text().unwrap_or(""));
        } else if child.is_element() {
            if name_is(&child, &cfg.gap_element) {
                match child.attribute("DISP").or_else(|| child.attribute("disp")) {
                    Some(d) if !d.is_empty() => out.push_str(d),
                    _ => out.push(cfg.gap_placeholder),
                }
            } else if !name_in(&child, &cfg.drop_elements) {
                collect_text(child, cfg, out);
            }
        }
    }
}

fn find_paragraphs(node: Node, cfg: &ExtractionConfig, out: &mut Vec<String>) {
    for child in node.children().filter(|c| c.is_element()) {
        if name_in(&child, &cfg.drop_elements) {
            continue;
        }
        if name_in(&child, &cfg.keep_elements) {
            let mut text = String::new();
            collect_text(child, cfg, &mut text);
            let text = clean(&text);
            if !text.is_empty() {
                out.push(text);
            }
        } else {
            find_paragraphs(child, cfg, out);
        }
    }
}

fn header_field(doc: &roxmltree::Document, name: &str) -> String {
    doc.descendants()
        .find(|n| n.is_element() && name_is(n, name))
        .map(|n| {
            let text: String = n
                .descendants()
                .filter(|d| d.is_text())
                .filter_map(|d| d.text())
                .collect();
            clean(&text)
        })
        .unwrap_or_default()
}

/// Extracts header fields and paragraph text from one XML document.
///
/// Text under the drop elements is discarded, each gap element is replaced
/// in place by its `DISP` character (or the configured placeholder), and
/// everything is NFC-normalized. Missing header fields come back empty.
pub fn extract_document(xml: &str, id: &str, cfg: &ExtractionConfig) -> Result<Document, ExtractError> {
    let opts = ParsingOptions {
        allow_dtd: true,
        ..ParsingOptions::default()
    };
    let doc = roxmltree::Document::parse_with_options(xml, opts).map_err(|e| {
        let pos = e.pos();
        ExtractError::Xml {
            line: pos.row,
            column: pos.col,
            message: e.to_string(),
        }
    })?;

    let mut paragraphs = Vec::new();
    find_paragraphs(doc.root(), cfg, &mut paragraphs);

    Ok(Document {
        id: id.to_string(),
        title: header_field(&doc, &cfg.title_element),
        author: header_field(&doc, &cfg.author_element),
        date: header_field(&doc, &cfg.date_element),
        paragraphs,
    })
}
