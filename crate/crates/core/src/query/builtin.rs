use super::QuerySuite;

/// Knobs for the built-in do-support suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Require do/verb and NEG to be adjacent; otherwise plain precedence.
    pub adjacent_negation: bool,
    /// Find the verb, subject and NEG anywhere inside the clause rather than
    /// as its immediate children.
    pub relaxed_depth: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            adjacent_negation: true,
            relaxed_depth: false,
        }
    }
}

const DEFS: &str = "\
def finClause = IP-MAT*|IP-SUB*
def subject = NP-SBJ*
def inf = BE|DO|HV|VB
def part = DAN|HAN|VAN|BEN|DON|HVN|VBN
def finDo = DOD|DOP
def finVerb = DOD|DOP|HVD|HVP|VBD|VBP
";

impl SuiteOptions {
    fn contains(&self) -> &'static str {
        if self.relaxed_depth {
            "dominatesWithinClause"
        } else {
            "iDominates"
        }
    }

    fn next_to(&self) -> &'static str {
        if self.adjacent_negation {
            "iPrecedes"
        } else {
            "precedes"
        }
    }
}

pub fn declarative_suite_text(opts: &SuiteOptions) -> String {
    let c = opts.contains();
    let adj = opts.next_to();
    format!(
        "{DEFS}
query inverted on finClause:
  note finite verb before the subject
  anchor f
  exists f: finVerb leaf
  exists s: subject
  {c} root f
  {c} root s
  precedes f s

query do-not on finClause:
  note do followed by not, with a nonfinite verb later in the clause
  anchor d
  exists d: finDo leaf
  exists n: NEG leaf
  {c} root d
  {c} root n
  {adj} d n
  exists w: inf|part leaf (dominatesWithinClause root w and precedes n w)

query verb-not on finClause:
  note finite verb followed by not, with no nonfinite verb in the clause
  anchor f
  exists f: finVerb leaf
  exists n: NEG leaf
  {c} root f
  {c} root n
  {adj} f n
  not exists w: inf|part leaf (dominatesWithinClause root w)
"
    )
}

pub fn question_suite_text(opts: &SuiteOptions) -> String {
    let c = opts.contains();
    format!(
        "{DEFS}
query non-inverted on CP-QUE-MAT*:
  note subject before the finite verb
  anchor f
  exists i: IP-SUB*
  iDominates root i
  exists f: finVerb leaf
  exists s: subject
  {c} i f
  {c} i s
  precedes s f

query do-subj on CP-QUE-MAT*:
  note do before the subject, with a nonfinite verb after it
  anchor d
  exists i: IP-SUB*
  iDominates root i
  exists d: finDo leaf
  exists s: subject
  {c} i d
  {c} i s
  precedes d s
  exists w: inf|part leaf (dominatesWithinClause i w and precedes s w)

query verb-subj on CP-QUE-MAT*:
  note finite verb before the subject, with no nonfinite verb in the clause
  anchor f
  exists i: IP-SUB*
  iDominates root i
  exists f: finVerb leaf
  exists s: subject
  {c} i f
  {c} i s
  precedes f s
  not exists w: inf|part leaf (dominatesWithinClause i w)
"
    )
}

/// Cascade over finite IP clauses: inverted, do-not, verb-not.
pub fn builtin_declarative_suite(opts: &SuiteOptions) -> QuerySuite {
    QuerySuite::parse(&declarative_suite_text(opts)).expect("built-in suite parses")
}

/// Cascade over matrix questions: non-inverted, do-subj, verb-subj.
pub fn builtin_question_suite(opts: &SuiteOptions) -> QuerySuite {
    QuerySuite::parse(&question_suite_text(opts)).expect("built-in suite parses")
}

/// Maps alternative spellings of query names onto the built-in ones.
pub fn canonical_query_name(name: &str) -> &str {
    match name {
        "ignore-inverted" => "inverted",
        "verb-subject" => "verb-subj",
        "do-subject" => "do-subj",
        other => other,
    }
}
