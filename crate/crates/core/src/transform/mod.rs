//! PPCEME corpus normalization: POS-tag simplification, segmented-word
//! rewriting, metadata removal, function-tag filtering and the
//! train/dev/test split.

mod ftags;
mod metadata;
mod split;
mod tags;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use ftags::filter_function_tags;
pub use metadata::{strip_metadata, DropReason, DroppedSentence, MetadataOutcome};
pub use split::{split_corpus, Partition, SplitAssignment, SplitSummary};
pub use tags::{normalize_tags, rewrite_segmented, simplify_complex_tag, SegmentWarning};

use crate::treebank::Sentence;

/// The ten function tags kept for parsing.
pub const RETAINED_FUNCTION_TAGS: [&str; 10] = [
    "MAT", "SUB", "IMP", "INF", "QUE", "SBJ", "ACC", "DTV", "VOC", "PRN",
];

pub const EXCLUDED_RARE_TAGS: [&str; 5] = ["YYY", "ELAB", "XXX", "TPC", "TAG"];

pub const METADATA_LABELS: [&str; 4] = ["CODE", "META", "REF", "BREAK"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransformConfig {
    pub retained_function_tags: BTreeSet<String>,
    pub excluded_rare_tags: BTreeSet<String>,
    pub metadata_labels: BTreeSet<String>,
}

impl Default for TransformConfig {
    fn default() -> Self {
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        TransformConfig {
            retained_function_tags: set(&RETAINED_FUNCTION_TAGS),
            excluded_rare_tags: set(&EXCLUDED_RARE_TAGS),
            metadata_labels: set(&METADATA_LABELS),
        }
    }
}

impl TransformConfig {
    pub fn validate(&self) -> Result<(), String> {
        let overlap: Vec<_> = self
            .retained_function_tags
            .intersection(&self.excluded_rare_tags)
            .collect();
        if !overlap.is_empty() {
            return Err(format!(
                "tags both retained and excluded: {}",
                overlap.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
            ));
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self, String> {
        let cfg: TransformConfig = toml::from_str(text).map_err(|e| e.to_string())?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Which steps of the preparation pipeline to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrepareSteps {
    pub metadata: bool,
    pub tags: bool,
    pub function_tags: bool,
}

impl Default for PrepareSteps {
    fn default() -> Self {
        PrepareSteps {
            metadata: true,
            tags: true,
            function_tags: true,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PrepareOutcome {
    pub kept: Vec<Sentence>,
    pub dropped: Vec<DroppedSentence>,
    pub warnings: Vec<(String, SegmentWarning)>,
}

/// Runs the preparation pipeline in its fixed order: metadata removal, then
/// POS-tag normalization, then function-tag filtering.
pub fn prepare(sentences: Vec<Sentence>, cfg: &TransformConfig, steps: PrepareSteps) -> PrepareOutcome {
    let (kept, dropped) = if steps.metadata {
        let out = strip_metadata(sentences, cfg);
        (out.kept, out.dropped)
    } else {
        (sentences, Vec::new())
    };

    let mut warnings = Vec::new();
    let kept = kept
        .into_iter()
        .map(|s| {
            let mut tree = s.tree.clone();
            if steps.tags {
                let (t, w) = normalize_tags(&tree);
                warnings.extend(w.into_iter().map(|w| (s.id.clone(), w)));
                tree = t;
            }
            if steps.function_tags {
                tree = filter_function_tags(&tree, cfg);
            }
            s.with_tree(tree)
        })
        .collect();

    PrepareOutcome {
        kept,
        dropped,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = TransformConfig::default();
        assert_eq!(cfg.retained_function_tags.len(), 10);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn overlapping_sets_rejected() {
        let text = r#"
retained_function_tags = ["SBJ", "TPC"]
excluded_rare_tags = ["TPC"]
"#;
        assert!(TransformConfig::from_toml(text).is_err());
        let ok = TransformConfig::from_toml("retained_function_tags = [\"SBJ\"]\n").unwrap();
        assert_eq!(ok.retained_function_tags.len(), 1);
        assert_eq!(ok.metadata_labels.len(), 4);
    }
}
