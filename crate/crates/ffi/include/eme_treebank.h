#ifndef EME_TREEBANK_H
#define EME_TREEBANK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EmeStatus {
  EME_OK = 0,
  EME_NULL_ARGUMENT = 1,
  EME_INVALID_UTF8 = 2,
  EME_PARSE_ERROR = 3,
  EME_CONTRACT_VIOLATION = 4,
  EME_INVALID_ARGUMENT = 5,
  EME_PANIC = 6,
} EmeStatus;

/**
 * A list of parsed sentences.
 */
typedef struct EmeCorpus EmeCorpus;

/**
 * Query hits in corpus order.
 */
typedef struct EmeHits EmeHits;

/**
 * A query suite ready to run.
 */
typedef struct EmeSuite EmeSuite;

/**
 * Tokenizer output.
 */
typedef struct EmeTokens EmeTokens;

typedef struct EmePrf {
  double recall;
  double precision;
  double f1;
} EmePrf;

typedef struct EmeBracketScore {
  uint64_t matched;
  uint64_t gold_count;
  uint64_t pred_count;
  double recall;
  double precision;
  double f1;
  /**
   * Sentence pairs left out because their yields differ.
   */
  size_t skipped;
} EmeBracketScore;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *eme_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void eme_string_free(char *s);

/**
 * Parses bracketed trees. `origin` names the source in synthesized ids
 * and may be NULL.
 *
 * # Safety
 * `text` and `origin` must be NULL or NUL-terminated; `out` must be writable.
 */
enum EmeStatus eme_corpus_parse(const char *text, const char *origin, struct EmeCorpus **out);

/**
 * # Safety
 * `corpus` must be a live handle; `out` must be writable.
 */
enum EmeStatus eme_corpus_len(const struct EmeCorpus *corpus, size_t *out);

/**
 * Renders the corpus in canonical form, one tree per line.
 *
 * # Safety
 * `corpus` must be a live handle; `out` must be writable.
 */
enum EmeStatus eme_corpus_render(const struct EmeCorpus *corpus, char **out);

/**
 * # Safety
 * `corpus` must be NULL or a handle not yet freed.
 */
void eme_corpus_free(struct EmeCorpus *corpus);

/**
 * `name` is `declarative` or `question`.
 *
 * # Safety
 * `name` must be NUL-terminated; `out` must be writable.
 */
enum EmeStatus eme_suite_builtin(const char *name, struct EmeSuite **out);

/**
 * Loads a suite from its text form.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be writable.
 */
enum EmeStatus eme_suite_parse(const char *text, struct EmeSuite **out);

/**
 * # Safety
 * `suite` must be NULL or a handle not yet freed.
 */
void eme_suite_free(struct EmeSuite *suite);

/**
 * Runs a suite over every sentence of a corpus.
 *
 * # Safety
 * `suite` and `corpus` must be live handles; `out` must be writable.
 */
enum EmeStatus eme_query_run(const struct EmeSuite *suite,
                             const struct EmeCorpus *corpus,
                             struct EmeHits **out);

/**
 * # Safety
 * `hits` must be a live handle; `out` must be writable.
 */
enum EmeStatus eme_hits_len(const struct EmeHits *hits, size_t *out);

/**
 * Hits as TSV with a header line.
 *
 * # Safety
 * `hits` must be a live handle; `out` must be writable.
 */
enum EmeStatus eme_hits_to_tsv(const struct EmeHits *hits, char **out);

/**
 * # Safety
 * `hits` must be NULL or a handle not yet freed.
 */
void eme_hits_free(struct EmeHits *hits);

/**
 * Tokenizes with the default configuration.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be writable.
 */
enum EmeStatus eme_tokenize(const char *text, struct EmeTokens **out);

/**
 * # Safety
 * `tokens` must be a live handle; `out` must be writable.
 */
enum EmeStatus eme_tokens_len(const struct EmeTokens *tokens, size_t *out);

/**
 * Borrowed pointer to token `index`, valid until the handle is freed.
 *
 * # Safety
 * `tokens` must be a live handle; `out` must be writable.
 */
enum EmeStatus eme_tokens_get(const struct EmeTokens *tokens, size_t index, const char **out);

/**
 * # Safety
 * `tokens` must be NULL or a handle not yet freed.
 */
void eme_tokens_free(struct EmeTokens *tokens);

/**
 * Recall, precision and F1 percentages from counts.
 *
 * # Safety
 * `out` must be writable.
 */
enum EmeStatus eme_prf(uint64_t matched, uint64_t gold, uint64_t pred, struct EmePrf *out);

/**
 * Corpus-level labelled-bracket score with default parameters.
 *
 * # Safety
 * `gold` and `pred` must be live handles; `out` must be writable.
 */
enum EmeStatus eme_score_brackets(const struct EmeCorpus *gold,
                                  const struct EmeCorpus *pred,
                                  struct EmeBracketScore *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EME_TREEBANK_H */
