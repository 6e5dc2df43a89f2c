use std::fmt;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Partition {
    Train,
    Dev,
    Test,
}

impl Partition {
    pub const ALL: [Partition; 3] = [Partition::Train, Partition::Dev, Partition::Test];

    pub fn as_str(&self) -> &'static str {
        match self {
            Partition::Train => "train",
            Partition::Dev => "dev",
            Partition::Test => "test",
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitAssignment {
    pub partition: Partition,
    pub file: String,
}

fn partition_for(file: &str) -> Partition {
    let base = Path::new(file)
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    match base.chars().next() {
        Some('l') => Partition::Dev,
        Some('e') => Partition::Test,
        _ => Partition::Train,
    }
}

/// Dev gets the files whose basename starts with `l`, test those starting
/// with `e`, train everything else.
pub fn split_corpus<S: AsRef<str>>(files: &[S]) -> Vec<SplitAssignment> {
    files
        .iter()
        .map(|f| SplitAssignment {
            partition: partition_for(f.as_ref()),
            file: f.as_ref().to_string(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PartitionCounts {
    pub files: usize,
    pub sentences: usize,
    pub tokens: usize,
}

/// Size of each partition, for comparison against the target proportions.
#[derive(Debug, Clone, Default)]
pub struct SplitSummary {
    pub counts: [PartitionCounts; 3],
}

impl SplitSummary {
    fn slot(p: Partition) -> usize {
        match p {
            Partition::Train => 0,
            Partition::Dev => 1,
            Partition::Test => 2,
        }
    }

    pub fn add(&mut self, p: Partition, sentences: usize, tokens: usize) {
        let c = &mut self.counts[Self::slot(p)];
        c.files += 1;
        c.sentences += sentences;
        c.tokens += tokens;
    }

    pub fn get(&self, p: Partition) -> PartitionCounts {
        self.counts[Self::slot(p)]
    }

    pub fn total_tokens(&self) -> usize {
        self.counts.iter().map(|c| c.tokens).sum()
    }

    pub fn token_percent(&self, p: Partition) -> f64 {
        let total = self.total_tokens();
        if total == 0 {
            0.0
        } else {
            100.0 * self.get(p).tokens as f64 / total as f64
        }
    }
}
