//! C ABI over `eme-treebank`.
//!
//! Objects are opaque handles created by `*_parse`/`*_builtin`/`*_run`
//! functions and released with the matching `*_free`. Every fallible call
//! returns an [`EmeStatus`]; on failure a description is available from
//! [`eme_last_error_message`] on the same thread.
//!
//! Strings passed in must be NUL-terminated UTF-8. Strings handed out as
//! `char **` are owned by the caller and released with [`eme_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eme_treebank::eval::{prf, score_brackets_corpus, EvalParams};
use eme_treebank::query::{
    builtin_declarative_suite, builtin_question_suite, run_corpus, write_hits_tsv, HitRecord, QuerySuite,
    SuiteOptions,
};
use eme_treebank::tokenizer::{tokenize, TokenizerConfig};
use eme_treebank::treebank::{read_trees, Sentence};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmeStatus {
    EmeOk = 0,
    EmeNullArgument = 1,
    EmeInvalidUtf8 = 2,
    EmeParseError = 3,
    EmeContractViolation = 4,
    EmeInvalidArgument = 5,
    EmePanic = 6,
}

/// A list of parsed sentences.
pub struct EmeCorpus {
    sentences: Vec<Sentence>,
}

/// A query suite ready to run.
pub struct EmeSuite {
    suite: QuerySuite,
}

/// Query hits in corpus order.
pub struct EmeHits {
    hits: Vec<HitRecord>,
}

/// Tokenizer output.
pub struct EmeTokens {
    tokens: Vec<CString>,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EmePrf {
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EmeBracketScore {
    pub matched: u64,
    pub gold_count: u64,
    pub pred_count: u64,
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
    /// Sentence pairs left out because their yields differ.
    pub skipped: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(EmeStatus, String);

type FfiResult = Result<(), Failure>;

fn guard(f: impl FnOnce() -> FfiResult) -> EmeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            EmeStatus::EmeOk
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EmeStatus::EmePanic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(EmeStatus::EmeNullArgument, format!("{} is NULL", what)));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(EmeStatus::EmeInvalidUtf8, format!("{} is not valid UTF-8", what)))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(EmeStatus::EmeNullArgument, format!("{} is NULL", what)))
}

fn out_arg<T>(p: *mut T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(EmeStatus::EmeNullArgument, format!("{} is NULL", what)))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn eme_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn eme_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses bracketed trees. `origin` names the source in synthesized ids
/// and may be NULL.
///
/// # Safety
/// `text` and `origin` must be NULL or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_corpus_parse(
    text: *const c_char,
    origin: *const c_char,
    out: *mut *mut EmeCorpus,
) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ptr::null_mut();
        let text = str_arg(text, "text")?;
        let origin = if origin.is_null() { "input" } else { str_arg(origin, "origin")? };
        let sentences = read_trees(text, origin).map_err(|e| Failure(EmeStatus::EmeParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(EmeCorpus { sentences }));
        Ok(())
    })
}

/// # Safety
/// `corpus` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_corpus_len(corpus: *const EmeCorpus, out: *mut usize) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ref_arg(corpus, "corpus")?.sentences.len();
        Ok(())
    })
}

/// Renders the corpus in canonical form, one tree per line.
///
/// # Safety
/// `corpus` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_corpus_render(corpus: *const EmeCorpus, out: *mut *mut c_char) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ptr::null_mut();
        let c = ref_arg(corpus, "corpus")?;
        let mut s = String::new();
        for x in &c.sentences {
            s.push_str(&x.render());
            s.push('\n');
        }
        *out = c_string(s);
        Ok(())
    })
}

/// # Safety
/// `corpus` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eme_corpus_free(corpus: *mut EmeCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

/// `name` is `declarative` or `question`.
///
/// # Safety
/// `name` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_suite_builtin(name: *const c_char, out: *mut *mut EmeSuite) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ptr::null_mut();
        let opts = SuiteOptions::default();
        let suite = match str_arg(name, "name")? {
            "declarative" => builtin_declarative_suite(&opts),
            "question" => builtin_question_suite(&opts),
            other => {
                return Err(Failure(
                    EmeStatus::EmeInvalidArgument,
                    format!("no built-in suite named {:?}", other),
                ))
            }
        };
        *out = Box::into_raw(Box::new(EmeSuite { suite }));
        Ok(())
    })
}

/// Loads a suite from its text form.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_suite_parse(text: *const c_char, out: *mut *mut EmeSuite) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ptr::null_mut();
        let suite =
            QuerySuite::parse(str_arg(text, "text")?).map_err(|e| Failure(EmeStatus::EmeParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(EmeSuite { suite }));
        Ok(())
    })
}

/// # Safety
/// `suite` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eme_suite_free(suite: *mut EmeSuite) {
    if !suite.is_null() {
        drop(Box::from_raw(suite));
    }
}

/// Runs a suite over every sentence of a corpus.
///
/// # Safety
/// `suite` and `corpus` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_query_run(
    suite: *const EmeSuite,
    corpus: *const EmeCorpus,
    out: *mut *mut EmeHits,
) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ptr::null_mut();
        let s = ref_arg(suite, "suite")?;
        let c = ref_arg(corpus, "corpus")?;
        let hits = run_corpus(&s.suite, &c.sentences);
        *out = Box::into_raw(Box::new(EmeHits { hits }));
        Ok(())
    })
}

/// # Safety
/// `hits` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_hits_len(hits: *const EmeHits, out: *mut usize) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ref_arg(hits, "hits")?.hits.len();
        Ok(())
    })
}

/// Hits as TSV with a header line.
///
/// # Safety
/// `hits` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_hits_to_tsv(hits: *const EmeHits, out: *mut *mut c_char) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ptr::null_mut();
        let h = ref_arg(hits, "hits")?;
        let mut buf = Vec::new();
        write_hits_tsv(&mut buf, &h.hits).expect("writing to memory");
        *out = c_string(String::from_utf8_lossy(&buf).into_owned());
        Ok(())
    })
}

/// # Safety
/// `hits` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eme_hits_free(hits: *mut EmeHits) {
    if !hits.is_null() {
        drop(Box::from_raw(hits));
    }
}

/// Tokenizes with the default configuration.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_tokenize(text: *const c_char, out: *mut *mut EmeTokens) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ptr::null_mut();
        let t = tokenize(str_arg(text, "text")?, &TokenizerConfig::default());
        let tokens = t
            .tokens
            .into_iter()
            .map(|s| CString::new(s).expect("input had no NUL"))
            .collect();
        *out = Box::into_raw(Box::new(EmeTokens { tokens }));
        Ok(())
    })
}

/// # Safety
/// `tokens` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_tokens_len(tokens: *const EmeTokens, out: *mut usize) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ref_arg(tokens, "tokens")?.tokens.len();
        Ok(())
    })
}

/// Borrowed pointer to token `index`, valid until the handle is freed.
///
/// # Safety
/// `tokens` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_tokens_get(tokens: *const EmeTokens, index: usize, out: *mut *const c_char) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = ptr::null();
        let t = ref_arg(tokens, "tokens")?;
        let s = t.tokens.get(index).ok_or_else(|| {
            Failure(
                EmeStatus::EmeInvalidArgument,
                format!("index {} out of range for {} tokens", index, t.tokens.len()),
            )
        })?;
        *out = s.as_ptr();
        Ok(())
    })
}

/// # Safety
/// `tokens` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eme_tokens_free(tokens: *mut EmeTokens) {
    if !tokens.is_null() {
        drop(Box::from_raw(tokens));
    }
}

/// Recall, precision and F1 percentages from counts.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_prf(matched: u64, gold: u64, pred: u64, out: *mut EmePrf) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        let p = prf(matched, gold, pred).map_err(|e| Failure(EmeStatus::EmeContractViolation, e.to_string()))?;
        *out = EmePrf {
            recall: p.recall,
            precision: p.precision,
            f1: p.f1,
        };
        Ok(())
    })
}

/// Corpus-level labelled-bracket score with default parameters.
///
/// # Safety
/// `gold` and `pred` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eme_score_brackets(
    gold: *const EmeCorpus,
    pred: *const EmeCorpus,
    out: *mut EmeBracketScore,
) -> EmeStatus {
    guard(|| {
        out_arg(out, "out")?;
        let g = ref_arg(gold, "gold")?;
        let p = ref_arg(pred, "pred")?;
        let r = score_brackets_corpus(&g.sentences, &p.sentences, &EvalParams::default())
            .map_err(|e| Failure(EmeStatus::EmeContractViolation, e.to_string()))?;
        *out = EmeBracketScore {
            matched: r.total.matched,
            gold_count: r.total.gold_count,
            pred_count: r.total.pred_count,
            recall: r.total.recall,
            precision: r.total.precision,
            f1: r.total.f1,
            skipped: r.skipped.len(),
        };
        Ok(())
    })
}
