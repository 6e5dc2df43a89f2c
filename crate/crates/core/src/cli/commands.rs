use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::manifest::{sidecar_path, RunManifest};
use super::*;
use crate::eebo::{
    build_char_table, extract_document, segment_sentences, CharFrequencyTable, Document, ExclusionReason,
    ExtractionConfig,
};
use crate::eval::{
    diff_query_hits, pair_sentences, score_brackets_corpus, score_function_tags_corpus, EvalError, EvalParams,
};
use crate::impossible::{builtin_impossible_rules, count_by_rule, scan, write_findings_tsv, RuleSet};
use crate::query::{
    builtin_declarative_suite, builtin_question_suite, parse_hits_tsv, run_cascade, write_hits_tsv, HitRecord,
    QuerySuite, SuiteOptions,
};
use crate::tokenizer::{tokenize, TokenizerConfig};
use crate::transform::{prepare, split_corpus, Partition, PrepareSteps, SplitSummary, TransformConfig};
use crate::treebank::{read_tree_file, write_sentences, Sentence, TreebankError};

type Result<T> = std::result::Result<T, CliError>;

pub(super) fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Prepare(a) => cmd_prepare(a, stderr),
        Command::Split(a) => cmd_split(a, stdout, stderr),
        Command::Tokenize(a) => cmd_tokenize(a, stdout),
        Command::Extract(a) => cmd_extract(a, stdout, stderr),
        Command::Segment(a) => cmd_segment(a, stdout, stderr),
        Command::Query(a) => cmd_query(a, stdout),
        Command::ScoreBrackets(a) => cmd_score_brackets(a, stdout, stderr),
        Command::ScoreFtags(a) => cmd_score_ftags(a, stdout, stderr),
        Command::ScoreQueries(a) => cmd_score_queries(a, stdout, stderr),
        Command::ScanImpossible(a) => cmd_scan(a, stdout, stderr),
    }
}

fn read_text(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {}", p.display(), e)))
}

fn write_file(p: &Path, content: &str) -> Result<()> {
    fs::write(p, content).map_err(|e| CliError::Usage(format!("cannot write {}: {}", p.display(), e)))
}

fn read_trees(p: &Path) -> Result<Vec<Sentence>> {
    read_tree_file(p).map_err(|e| match e {
        TreebankError::Io(io) => CliError::Usage(format!("cannot read {}: {}", p.display(), io)),
        other => CliError::Data(format!("{}: {}", p.display(), other)),
    })
}

/// Reads several tree files in parallel, keeping input order.
fn read_all_trees(paths: &[PathBuf]) -> Result<Vec<Sentence>> {
    let parts: Vec<Result<Vec<Sentence>>> = paths.par_iter().map(|p| read_trees(p)).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn lossy(s: &[u8]) -> String {
    String::from_utf8_lossy(s).into_owned()
}

/// Writes `content` to `out` with a manifest sidecar, or to stdout.
fn emit(out: Option<&Path>, content: &str, manifest: RunManifest, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => {
            write_file(p, content)?;
            write_file(&sidecar_path(p), &manifest.output(p).to_json())
        }
        None => stdout
            .write_all(content.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {}", e))),
    }
}

fn load_config<T>(p: &Option<PathBuf>, parse: impl Fn(&str) -> std::result::Result<T, String>) -> Result<Option<(PathBuf, String, T)>> {
    match p {
        None => Ok(None),
        Some(p) => {
            let text = read_text(p)?;
            let v = parse(&text).map_err(|e| CliError::Usage(format!("{}: {}", p.display(), e)))?;
            Ok(Some((p.clone(), text, v)))
        }
    }
}

fn cmd_prepare(a: PrepareArgs, stderr: &mut dyn Write) -> Result<()> {
    let loaded = load_config(&a.config, TransformConfig::from_toml)?;
    let configs: Vec<(PathBuf, String)> = loaded.iter().map(|(p, t, _)| (p.clone(), t.clone())).collect();
    let cfg = loaded.map(|(_, _, c)| c).unwrap_or_default();
    let steps = PrepareSteps {
        metadata: !a.skip_metadata,
        tags: !a.skip_tags,
        function_tags: !a.skip_function_tags,
    };
    fs::create_dir_all(&a.out_dir)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {}", a.out_dir.display(), e)))?;

    let results: Vec<_> = a
        .inputs
        .par_iter()
        .map(|p| read_trees(p).map(|s| prepare(s, &cfg, steps)))
        .collect();

    let mut manifest = RunManifest::new("prepare", &format!("{:?}", a), &a.inputs, &configs);
    let mut report = String::from("file\tsentence_id\treason\n");
    let (mut failed, mut kept, mut dropped) = (0, 0, 0);
    for (p, r) in a.inputs.iter().zip(results) {
        let outcome = match r {
            Ok(o) => o,
            Err(e) => {
                let _ = writeln!(stderr, "error: {}", e);
                failed += 1;
                continue;
            }
        };
        let name = p.file_name().unwrap_or(p.as_os_str());
        let out = a.out_dir.join(name);
        let mut buf = Vec::new();
        write_sentences(&mut buf, &outcome.kept).expect("writing to memory");
        write_file(&out, &lossy(&buf))?;
        manifest = manifest.output(&out);
        for d in &outcome.dropped {
            let _ = writeln!(report, "{}\t{}\t{}", p.display(), d.sentence.id, d.reason);
        }
        for (id, w) in &outcome.warnings {
            let _ = writeln!(stderr, "warning: {} {}: {}", p.display(), id, w);
        }
        kept += outcome.kept.len();
        dropped += outcome.dropped.len();
    }
    if let Some(r) = &a.drop_report {
        write_file(r, &report)?;
        manifest = manifest.output(r);
    }
    write_file(&a.out_dir.join("manifest.json"), &manifest.to_json())?;
    let _ = writeln!(stderr, "kept {} trees, dropped {}", kept, dropped);
    if failed > 0 {
        return Err(CliError::Data(format!("{} input file(s) could not be read", failed)));
    }
    Ok(())
}

fn cmd_split(a: SplitArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let names: Vec<String> = a.files.iter().map(|p| p.display().to_string()).collect();
    let assignments = split_corpus(&names);
    let mut out = String::from("file\tpartition\n");
    for s in &assignments {
        let _ = writeln!(out, "{}\t{}", s.file, s.partition);
    }
    if a.summary {
        let counts: Vec<Result<(usize, usize)>> = a
            .files
            .par_iter()
            .map(|p| {
                let s = read_trees(p)?;
                Ok((s.len(), s.iter().map(|x| x.tokens.len()).sum()))
            })
            .collect();
        let mut summary = SplitSummary::default();
        for (s, c) in assignments.iter().zip(counts) {
            let (n, t) = c?;
            summary.add(s.partition, n, t);
        }
        let _ = writeln!(stderr, "partition\tfiles\tsentences\ttokens\ttoken_percent");
        for p in Partition::ALL {
            let c = summary.get(p);
            let _ = writeln!(
                stderr,
                "{}\t{}\t{}\t{}\t{:.2}",
                p,
                c.files,
                c.sentences,
                c.tokens,
                summary.token_percent(p)
            );
        }
    }
    let manifest = RunManifest::new("split", &format!("{:?}", a), &a.files, &[]);
    emit(a.out.as_deref(), &out, manifest, stdout)
}

fn tokenizer_config(abbreviations: &Option<PathBuf>) -> Result<(TokenizerConfig, Vec<(PathBuf, String)>)> {
    let mut cfg = TokenizerConfig::default();
    let mut configs = Vec::new();
    if let Some(p) = abbreviations {
        let text = read_text(p)?;
        cfg.add_abbreviations(&text)
            .map_err(|e| CliError::Usage(format!("{}: {}", p.display(), e)))?;
        configs.push((p.clone(), text));
    }
    Ok((cfg, configs))
}

fn cmd_tokenize(a: TokenizeArgs, stdout: &mut dyn Write) -> Result<()> {
    let (mut cfg, configs) = tokenizer_config(&a.abbreviations)?;
    cfg.split_th_apostrophe = !a.keep_th;
    cfg.its_one_token = !a.split_its;
    cfg.roman_numeral_j_variant = !a.no_j_numerals;
    let text = match &a.input {
        Some(p) => read_text(p)?,
        None => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| CliError::Usage(format!("cannot read standard input: {}", e)))?;
            s
        }
    };
    let mut out = String::new();
    for line in text.lines() {
        let toks = tokenize(line, &cfg).tokens;
        if a.one_per_line {
            for t in toks {
                out.push_str(&t);
                out.push('\n');
            }
            out.push('\n');
        } else {
            out.push_str(&toks.join(" "));
            out.push('\n');
        }
    }
    let inputs: Vec<PathBuf> = a.input.iter().cloned().collect();
    let manifest = RunManifest::new("tokenize", &format!("{:?}", a), &inputs, &configs);
    emit(a.out.as_deref(), &out, manifest, stdout)
}

fn extraction_config(x: &XmlOptions) -> ExtractionConfig {
    let mut cfg = ExtractionConfig::default();
    if !x.keep_elements.is_empty() {
        cfg.keep_elements = x.keep_elements.iter().cloned().collect();
    }
    if !x.drop_elements.is_empty() {
        cfg.drop_elements = x.drop_elements.iter().cloned().collect();
    }
    if let Some(c) = x.gap_placeholder {
        cfg.gap_placeholder = c;
    }
    cfg
}

fn doc_id(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| p.display().to_string())
}

/// Extracts every input in parallel. Unreadable or malformed files are
/// reported and skipped; the count of failures is returned.
fn extract_all(inputs: &[PathBuf], cfg: &ExtractionConfig, stderr: &mut dyn Write) -> Result<(Vec<Document>, usize)> {
    let results: Vec<Result<Document>> = inputs
        .par_iter()
        .map(|p| {
            let xml = read_text(p)?;
            extract_document(&xml, &doc_id(p), cfg).map_err(|e| CliError::Data(format!("{}: {}", p.display(), e)))
        })
        .collect();
    let mut docs = Vec::new();
    let mut failed = 0;
    for r in results {
        match r {
            Ok(d) => docs.push(d),
            Err(e @ CliError::Usage(_)) => return Err(e),
            Err(e) => {
                let _ = writeln!(stderr, "error: {}", e);
                failed += 1;
            }
        }
    }
    Ok((docs, failed))
}

fn merged_table(docs: &[Document]) -> CharFrequencyTable {
    docs.par_iter()
        .map(|d| build_char_table([d]))
        .reduce(CharFrequencyTable::default, CharFrequencyTable::merge)
}

fn cmd_extract(a: ExtractArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let cfg = extraction_config(&a.xml);
    let (docs, failed) = extract_all(&a.inputs, &cfg, stderr)?;
    let mut out = String::new();
    for d in &docs {
        out.push_str(&serde_json::to_string(d).expect("documents serialize"));
        out.push('\n');
    }
    let manifest = RunManifest::new("extract", &format!("{:?}", a), &a.inputs, &[]);
    if let Some(t) = &a.char_table {
        write_file(t, &merged_table(&docs).to_tsv())?;
    }
    let manifest = match &a.char_table {
        Some(t) => manifest.output(t),
        None => manifest,
    };
    emit(a.out.as_deref(), &out, manifest, stdout)?;
    if failed > 0 {
        return Err(CliError::Data(format!("{} input file(s) could not be extracted", failed)));
    }
    Ok(())
}

fn cmd_segment(a: SegmentArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let mut cfg = extraction_config(&a.xml);
    cfg.rare_char_threshold = a.rare_threshold;
    cfg.max_sentence_tokens = a.max_tokens;
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let (tok, mut configs) = tokenizer_config(&a.abbreviations)?;

    let (docs, failed) = extract_all(&a.inputs, &cfg, stderr)?;
    let global = match &a.char_table {
        Some(p) => {
            let text = read_text(p)?;
            let t = CharFrequencyTable::from_tsv(&text).map_err(|e| CliError::Data(format!("{}: {}", p.display(), e)))?;
            configs.push((p.clone(), text));
            Some(t)
        }
        None if a.per_file => None,
        None => Some(merged_table(&docs)),
    };

    let segs: Vec<_> = docs
        .par_iter()
        .map(|d| match &global {
            Some(t) => segment_sentences(d, &cfg, t, &tok),
            None => segment_sentences(d, &cfg, &build_char_table([d]), &tok),
        })
        .collect();

    let mut kept = String::new();
    let mut excluded = String::from("doc_id\tsentence_id\treason\n");
    let (mut total, mut n_rare, mut n_long) = (0, 0, 0);
    for s in &segs {
        total += s.total();
        n_rare += s.excluded_for(ExclusionReason::RareChar);
        n_long += s.excluded_for(ExclusionReason::TooLong);
        for k in &s.kept {
            kept.push_str(&k.tokens.join(" "));
            kept.push('\n');
        }
        for e in &s.excluded {
            let _ = writeln!(excluded, "{}\t{}\t{}", e.doc_id, e.sentence.id, e.reason);
        }
    }
    let _ = writeln!(
        stderr,
        "sentences {}, kept {}, excluded rare_char {}, excluded too_long {}",
        total,
        total - n_rare - n_long,
        n_rare,
        n_long
    );

    let mut manifest = RunManifest::new("segment", &format!("{:?}", a), &a.inputs, &configs);
    if let Some(p) = &a.excluded {
        write_file(p, &excluded)?;
        manifest = manifest.output(p);
    }
    if let Some(p) = &a.char_table_out {
        let table = global.clone().unwrap_or_else(|| merged_table(&docs));
        write_file(p, &table.to_tsv())?;
        manifest = manifest.output(p);
    }
    emit(a.out.as_deref(), &kept, manifest, stdout)?;
    if failed > 0 {
        return Err(CliError::Data(format!("{} input file(s) could not be extracted", failed)));
    }
    Ok(())
}

/// Config files read for a run, with their contents.
type Configs = Vec<(PathBuf, String)>;

fn load_suites(s: &SuiteArgs) -> Result<(Vec<QuerySuite>, Configs)> {
    let opts = SuiteOptions {
        adjacent_negation: !s.nonadjacent_negation,
        relaxed_depth: s.relaxed_depth,
    };
    let names: Vec<String> = if s.suites.is_empty() {
        vec!["declarative".into(), "question".into()]
    } else {
        s.suites.clone()
    };
    let mut suites = Vec::new();
    let mut configs = Vec::new();
    for n in names {
        match n.as_str() {
            "declarative" => suites.push(builtin_declarative_suite(&opts)),
            "question" => suites.push(builtin_question_suite(&opts)),
            path => {
                let p = PathBuf::from(path);
                let text = read_text(&p)?;
                let suite = QuerySuite::parse(&text).map_err(|e| CliError::Data(format!("{}: {}", path, e)))?;
                suites.push(suite);
                configs.push((p, text));
            }
        }
    }
    Ok((suites, configs))
}

/// Hits from every suite, per sentence in corpus order, then by anchor.
pub(crate) fn run_suites(suites: &[QuerySuite], sentences: &[Sentence]) -> Vec<HitRecord> {
    sentences
        .par_iter()
        .map(|s| {
            let mut hits: Vec<HitRecord> = suites.iter().flat_map(|q| run_cascade(q, s)).collect();
            hits.sort_by_key(|h| h.anchor_index);
            hits
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn hits_tsv(hits: &[HitRecord]) -> String {
    let mut buf = Vec::new();
    write_hits_tsv(&mut buf, hits).expect("writing to memory");
    lossy(&buf)
}

fn cmd_query(a: QueryArgs, stdout: &mut dyn Write) -> Result<()> {
    let (suites, configs) = load_suites(&a.suite)?;
    if a.print_suite {
        let text: Vec<String> = suites.iter().map(|s| s.render()).collect();
        return emit(None, &text.join("\n"), RunManifest::new("query", "", &[], &[]), stdout);
    }
    let sentences = read_all_trees(&a.inputs)?;
    let hits = run_suites(&suites, &sentences);
    let manifest = RunManifest::new("query", &format!("{:?}", a), &a.inputs, &configs);
    emit(a.out.as_deref(), &hits_tsv(&hits), manifest, stdout)
}

fn eval_params(p: &Option<PathBuf>) -> Result<(EvalParams, Vec<(PathBuf, String)>)> {
    let loaded = load_config(p, |t| EvalParams::from_toml(t).map_err(|e| e.to_string()))?;
    Ok(match loaded {
        Some((p, t, v)) => (v, vec![(p, t)]),
        None => (EvalParams::default(), Vec::new()),
    })
}

fn data(e: EvalError) -> CliError {
    CliError::Data(e.to_string())
}

fn report_skips(skipped: &[(String, String)], stderr: &mut dyn Write) {
    for (id, why) in skipped {
        let _ = writeln!(stderr, "skipped {}: {}", id, why);
    }
}

fn cmd_score_brackets(a: ScoreTreesArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let (params, configs) = eval_params(&a.params)?;
    let gold = read_trees(&a.gold)?;
    let pred = read_trees(&a.pred)?;
    let r = score_brackets_corpus(&gold, &pred, &params).map_err(data)?;
    report_skips(&r.skipped, stderr);
    let t = r.total;
    let out = if a.tsv {
        format!(
            "sentences\tskipped\tmatched\tgold\tpred\trecall\tprecision\tf1\n{}\t{}\t{}\t{}\t{}\t{:.2}\t{:.2}\t{:.2}\n",
            r.sentences,
            r.skipped.len(),
            t.matched,
            t.gold_count,
            t.pred_count,
            t.recall,
            t.precision,
            t.f1
        )
    } else {
        format!(
            "Sentences scored  {}\nSentences skipped {}\nBrackets matched  {} (gold {}, predicted {})\n\
             Recall     {:6.2}\nPrecision  {:6.2}\nF1         {:6.2}\n",
            r.sentences,
            r.skipped.len(),
            t.matched,
            t.gold_count,
            t.pred_count,
            t.recall,
            t.precision,
            t.f1
        )
    };
    let inputs = [a.gold.clone(), a.pred.clone()];
    let manifest = RunManifest::new("score-brackets", &format!("{:?}", a), &inputs, &configs);
    emit(a.out.as_deref(), &out, manifest, stdout)
}

fn cmd_score_ftags(a: ScoreTreesArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let (params, configs) = eval_params(&a.params)?;
    let gold = read_trees(&a.gold)?;
    let pred = read_trees(&a.pred)?;
    let (score, skipped) = score_function_tags_corpus(&gold, &pred, &params).map_err(data)?;
    report_skips(&skipped, stderr);
    let mut out = String::new();
    let mut rows: Vec<(String, crate::eval::TagCounts)> = score.tags.iter().map(|(t, c)| (t.clone(), *c)).collect();
    rows.push(("all".into(), score.total()));
    if a.tsv {
        out.push_str("tag\tgold\tpred\tmatch\trecall\tprecision\tf1\n");
    } else {
        let _ = writeln!(out, "{:<5}  {:>6}  {:>6}  {:>6}  {:>6}  {:>6}  {:>6}", "tag", "gold", "pred", "match", "Recall", "Prec", "F1");
    }
    for (t, c) in rows {
        let p = crate::eval::prf(c.matched, c.gold, c.pred).map_err(data)?;
        if a.tsv {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{:.2}\t{:.2}\t{:.2}",
                t, c.gold, c.pred, c.matched, p.recall, p.precision, p.f1
            );
        } else {
            let _ = writeln!(
                out,
                "{:<5}  {:>6}  {:>6}  {:>6}  {:>6.2}  {:>6.2}  {:>6.2}",
                t, c.gold, c.pred, c.matched, p.recall, p.precision, p.f1
            );
        }
    }
    let inputs = [a.gold.clone(), a.pred.clone()];
    let manifest = RunManifest::new("score-ftags", &format!("{:?}", a), &inputs, &configs);
    emit(a.out.as_deref(), &out, manifest, stdout)
}

fn cmd_score_queries(a: ScoreQueriesArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let mut configs = Vec::new();
    let (gold, pred) = if a.from_trees {
        let (suites, c) = load_suites(&a.suite)?;
        configs = c;
        let g = read_trees(&a.gold)?;
        let p = read_trees(&a.pred)?;
        pair_sentences(&g, &p).map_err(data)?;
        (run_suites(&suites, &g), run_suites(&suites, &p))
    } else {
        let parse = |p: &Path| parse_hits_tsv(&read_text(p)?).map_err(|e| CliError::Data(format!("{}: {}", p.display(), e)));
        (parse(&a.gold)?, parse(&a.pred)?)
    };
    let diff = diff_query_hits(&gold, &pred).map_err(data)?;
    for w in &diff.warnings {
        let _ = writeln!(stderr, "warning: {}", w);
    }
    let out = if a.tsv { diff.to_tsv() } else { diff.to_table() };
    let inputs = [a.gold.clone(), a.pred.clone()];
    let manifest = RunManifest::new("score-queries", &format!("{:?}", a), &inputs, &configs);
    emit(a.out.as_deref(), &out, manifest, stdout)
}

fn cmd_scan(a: ScanArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let mut configs = Vec::new();
    let rules = match &a.rules {
        None => builtin_impossible_rules(),
        Some(p) => {
            let text = read_text(p)?;
            let r = RuleSet::parse(&text).map_err(|e| CliError::Data(format!("{}: {}", p.display(), e)))?;
            configs.push((p.clone(), text));
            r
        }
    };
    if a.print_rules {
        return emit(None, &rules.render(), RunManifest::new("scan-impossible", "", &[], &[]), stdout);
    }
    let sentences = read_all_trees(&a.inputs)?;
    let findings = scan(&sentences, &rules);
    for (rule, n) in count_by_rule(&findings, &rules) {
        let _ = writeln!(stderr, "{}\t{}", rule, n);
    }
    let mut buf = Vec::new();
    write_findings_tsv(&mut buf, &findings).expect("writing to memory");
    let manifest = RunManifest::new("scan-impossible", &format!("{:?}", a), &a.inputs, &configs);
    emit(a.out.as_deref(), &lossy(&buf), manifest, stdout)
}
