//! Command-line front end. [`run`] parses arguments and dispatches to the
//! subcommands; the binary only forwards its arguments and exit code.

mod commands;
mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use manifest::{sidecar_path, RunManifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments, unreadable files, unwritable outputs.
    #[error("{0}")]
    Usage(String),
    /// Input that violates a data contract: malformed trees or XML,
    /// mismatched sentence sets, invalid suites.
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "eme-treebank", version, about = "Prepare, query and score Penn-style historical treebanks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize tree files. Steps run in a fixed order: metadata removal,
    /// then POS-tag normalization, then function-tag filtering.
    Prepare(PrepareArgs),
    /// Assign tree files to train/dev/test by file name.
    Split(SplitArgs),
    /// Tokenize plain text, one segment per line.
    Tokenize(TokenizeArgs),
    /// Extract header fields and paragraphs from XML as JSON lines.
    Extract(ExtractArgs),
    /// Extract, tokenize and sentence-split XML, filtering rare characters
    /// and overlong sentences.
    Segment(SegmentArgs),
    /// Run query suites over trees and write hits as TSV.
    Query(QueryArgs),
    /// Labelled-bracket precision, recall and F1.
    ScoreBrackets(ScoreTreesArgs),
    /// Function-tag scores on brackets whose bare labels match.
    ScoreFtags(ScoreTreesArgs),
    /// Compare gold and predicted query hits.
    ScoreQueries(ScoreQueriesArgs),
    /// Report structures that gold trees never contain.
    ScanImpossible(ScanArgs),
}

#[derive(Debug, Args)]
pub struct PrepareArgs {
    /// Bracketed tree files.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Directory for the normalized files (same base names).
    #[arg(long)]
    pub out_dir: PathBuf,
    /// TOML transform config.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// TSV of dropped trees: file, sentence id, reason.
    #[arg(long)]
    pub drop_report: Option<PathBuf>,
    #[arg(long)]
    pub skip_metadata: bool,
    #[arg(long)]
    pub skip_tags: bool,
    #[arg(long)]
    pub skip_function_tags: bool,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Also read the files and print sentence and token counts per partition.
    #[arg(long)]
    pub summary: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TokenizeArgs {
    /// Text file; standard input when absent.
    pub input: Option<PathBuf>,
    /// Extra abbreviations, one per line.
    #[arg(long)]
    pub abbreviations: Option<PathBuf>,
    /// Keep th' attached to the following word.
    #[arg(long)]
    pub keep_th: bool,
    /// Split "its" into "it" and "s".
    #[arg(long)]
    pub split_its: bool,
    /// Do not accept numerals ending in j.
    #[arg(long)]
    pub no_j_numerals: bool,
    /// One token per line, blank line between segments.
    #[arg(long)]
    pub one_per_line: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct XmlOptions {
    /// Paragraph element names (repeatable).
    #[arg(long = "keep-element")]
    pub keep_elements: Vec<String>,
    /// Discarded element names (repeatable).
    #[arg(long = "drop-element")]
    pub drop_elements: Vec<String>,
    /// Placeholder for gaps without a DISP attribute.
    #[arg(long)]
    pub gap_placeholder: Option<char>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub xml: XmlOptions,
    /// JSON lines, one document per line.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Character frequency TSV over all documents.
    #[arg(long)]
    pub char_table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SegmentArgs {
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub xml: XmlOptions,
    #[arg(long, default_value_t = 200)]
    pub rare_threshold: u64,
    #[arg(long, default_value_t = 800)]
    pub max_tokens: usize,
    /// Count characters per document instead of over the whole input.
    #[arg(long)]
    pub per_file: bool,
    /// Use a precomputed character table instead of counting.
    #[arg(long, conflicts_with = "per_file")]
    pub char_table: Option<PathBuf>,
    /// Kept sentences, one per line, tokens separated by spaces.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TSV of excluded sentences: doc id, sentence id, reason.
    #[arg(long)]
    pub excluded: Option<PathBuf>,
    /// Write the character table used for filtering.
    #[arg(long)]
    pub char_table_out: Option<PathBuf>,
    #[arg(long)]
    pub abbreviations: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct SuiteArgs {
    /// `declarative`, `question`, or a suite file (repeatable; both
    /// built-ins when absent).
    #[arg(long = "suite")]
    pub suites: Vec<String>,
    /// Let do/verb and NEG be separated by other material.
    #[arg(long)]
    pub nonadjacent_negation: bool,
    /// Look for the verb, subject and NEG anywhere inside the clause.
    #[arg(long)]
    pub relaxed_depth: bool,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub suite: SuiteArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the selected suites in the suite file format and exit.
    #[arg(long)]
    pub print_suite: bool,
}

#[derive(Debug, Args)]
pub struct ScoreTreesArgs {
    pub gold: PathBuf,
    pub pred: PathBuf,
    /// TOML scoring parameters.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub tsv: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScoreQueriesArgs {
    /// Gold hits TSV, or gold trees with --from-trees.
    pub gold: PathBuf,
    /// Predicted hits TSV, or predicted trees with --from-trees.
    pub pred: PathBuf,
    /// Run the suites over two tree files first.
    #[arg(long)]
    pub from_trees: bool,
    #[command(flatten)]
    pub suite: SuiteArgs,
    #[arg(long)]
    pub tsv: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub inputs: Vec<PathBuf>,
    /// Rule file; the built-in rules when absent.
    #[arg(long)]
    pub rules: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the rules in the suite file format and exit.
    #[arg(long)]
    pub print_rules: bool,
}

/// Runs the tool and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e);
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e);
                    EXIT_USAGE
                }
            };
        }
    };
    match commands::dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e);
            e.exit_code()
        }
    }
}
