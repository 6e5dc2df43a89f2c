use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use eme_treebank_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(eme_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    eme_string_free(p);
    s
}

const FIG2: &str = "( (CP-QUE-MAT (IP-SUB (DOD did) (NEG not) (NP-SBJ (NPR Carpenter)) (VB ask) (NP-DTV (PRO you)))) (ID a,1))
( (IP-SUB (NP-SBJ (PRO they)) (DOP do) (NEG not) (VB perish)) (ID a,2))";

#[test]
fn corpus_query_round_trip() {
    unsafe {
        let mut corpus = ptr::null_mut();
        assert_eq!(eme_corpus_parse(c(FIG2).as_ptr(), ptr::null(), &mut corpus), EmeStatus::EmeOk);
        let mut n = 0usize;
        assert_eq!(eme_corpus_len(corpus, &mut n), EmeStatus::EmeOk);
        assert_eq!(n, 2);

        let mut rendered = ptr::null_mut();
        assert_eq!(eme_corpus_render(corpus, &mut rendered), EmeStatus::EmeOk);
        let text = take_string(rendered);
        assert!(text.starts_with("( (CP-QUE-MAT (IP-SUB (DOD did)"));
        assert!(text.contains("(ID a,2))"));

        let mut suite = ptr::null_mut();
        assert_eq!(eme_suite_builtin(c("declarative").as_ptr(), &mut suite), EmeStatus::EmeOk);
        let mut hits = ptr::null_mut();
        assert_eq!(eme_query_run(suite, corpus, &mut hits), EmeStatus::EmeOk);
        assert_eq!(eme_hits_len(hits, &mut n), EmeStatus::EmeOk);
        assert_eq!(n, 2);
        let mut tsv = ptr::null_mut();
        assert_eq!(eme_hits_to_tsv(hits, &mut tsv), EmeStatus::EmeOk);
        let tsv = take_string(tsv);
        let rows: Vec<&str> = tsv.lines().skip(1).collect();
        assert_eq!(rows, ["inverted\ta,1\t0\t0\t4\tIP-SUB", "do-not\ta,2\t1\t0\t3\tIP-SUB"]);

        eme_hits_free(hits);
        eme_suite_free(suite);
        eme_corpus_free(corpus);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut corpus = ptr::null_mut();
        let st = eme_corpus_parse(c("(IP (NP (N a))").as_ptr(), c("f").as_ptr(), &mut corpus);
        assert_eq!(st, EmeStatus::EmeParseError);
        assert!(corpus.is_null());
        assert!(last_error().contains("byte 0"), "{}", last_error());

        assert_eq!(eme_corpus_parse(ptr::null(), ptr::null(), &mut corpus), EmeStatus::EmeNullArgument);
        assert_eq!(
            eme_corpus_parse(c("").as_ptr(), ptr::null(), ptr::null_mut()),
            EmeStatus::EmeNullArgument
        );

        let bad = [0xffu8, 0];
        assert_eq!(
            eme_corpus_parse(bad.as_ptr().cast(), ptr::null(), &mut corpus),
            EmeStatus::EmeInvalidUtf8
        );

        let mut suite = ptr::null_mut();
        assert_eq!(eme_suite_builtin(c("imperative").as_ptr(), &mut suite), EmeStatus::EmeInvalidArgument);
        let text = "query q on IP*:\n  anchor f\n  exists f: finVerb leaf\n";
        assert_eq!(eme_suite_parse(c(text).as_ptr(), &mut suite), EmeStatus::EmeParseError);
        assert!(last_error().contains("finVerb"));

        let mut p = EmePrf::default();
        assert_eq!(eme_prf(5, 4, 9, &mut p), EmeStatus::EmeContractViolation);
        assert_eq!(eme_prf(313, 328, 348, &mut p), EmeStatus::EmeOk);
        assert_eq!(last_error(), "");
        assert!((p.recall - 95.43).abs() < 0.005);
        assert!((p.precision - 89.94).abs() < 0.005);
        assert!((p.f1 - 92.60).abs() < 0.005);

        eme_corpus_free(ptr::null_mut());
        eme_string_free(ptr::null_mut());
    }
}

#[test]
fn tokens() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(eme_tokenize(c("th'exchaung of the Queen's men.").as_ptr(), &mut t), EmeStatus::EmeOk);
        let mut n = 0;
        eme_tokens_len(t, &mut n);
        let got: Vec<String> = (0..n)
            .map(|i| {
                let mut s = ptr::null();
                assert_eq!(eme_tokens_get(t, i, &mut s), EmeStatus::EmeOk);
                CStr::from_ptr(s).to_string_lossy().into_owned()
            })
            .collect();
        assert_eq!(got, ["th'", "exchaung", "of", "the", "Queen's", "men", "."]);
        let mut s = ptr::null();
        assert_eq!(eme_tokens_get(t, n, &mut s), EmeStatus::EmeInvalidArgument);
        eme_tokens_free(t);
    }
}

#[test]
fn bracket_scores() {
    unsafe {
        let gold = "(CP-QUE-MAT (INTJ NO) (, ,) (CONJ nor) (IP-SUB (DOD did) (NP-SBJ (Q no) (N body)) (VB ask) (NP-DTV (PRO you)) (IP-INF (TO to) (VB eat))) (. ?))";
        let pred = gold.replacen("CP-QUE-MAT", "IP-MAT", 1);
        let (mut g, mut p) = (ptr::null_mut(), ptr::null_mut());
        eme_corpus_parse(c(gold).as_ptr(), ptr::null(), &mut g);
        eme_corpus_parse(c(&pred).as_ptr(), ptr::null(), &mut p);
        let mut s = EmeBracketScore::default();
        assert_eq!(eme_score_brackets(g, p, &mut s), EmeStatus::EmeOk);
        assert_eq!((s.matched, s.gold_count, s.pred_count, s.skipped), (4, 5, 5, 0));
        assert!((s.f1 - 80.0).abs() < 1e-9);
        eme_corpus_free(g);
        eme_corpus_free(p);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/eme_treebank.h");
    let text = std::fs::read_to_string(&header).expect("header generated by the build script");
    for f in [
        "eme_corpus_parse",
        "eme_query_run",
        "eme_hits_to_tsv",
        "eme_tokenize",
        "eme_prf",
        "eme_score_brackets",
        "eme_last_error_message",
        "typedef struct EmeCorpus EmeCorpus;",
        "EME_CONTRACT_VIOLATION = 4",
    ] {
        assert!(text.contains(f), "{} missing from header", f);
    }
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() else {
        eprintln!("no C compiler found; syntax check skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
