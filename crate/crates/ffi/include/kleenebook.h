#ifndef KLEENEBOOK_H
#define KLEENEBOOK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KbStatus {
  KB_STATUS_OK = 0,
  KB_STATUS_NULL_POINTER = 1,
  KB_STATUS_INVALID_UTF8 = 2,
  KB_STATUS_PARSE = 3,
  KB_STATUS_ARITY = 4,
  KB_STATUS_INVALID_VALUE = 5,
  KB_STATUS_INPUT = 6,
  KB_STATUS_PRECONDITION = 7,
  KB_STATUS_UNVERIFIED = 8,
  KB_STATUS_PANIC = 9,
} KbStatus;

typedef enum KbTruth {
  KB_TRUTH_F = 0,
  KB_TRUTH_N = 1,
  KB_TRUTH_T = 2,
} KbTruth;

typedef enum KbVerdict {
  KB_VERDICT_NEITHER = 0,
  KB_VERDICT_WEAK_DUTCH_BOOK = 1,
  KB_VERDICT_DUTCH_BOOK = 2,
} KbVerdict;

typedef struct KbBeliefs KbBeliefs;

typedef struct KbBook KbBook;

/**
 * A parsed formula together with the arity it was parsed at.
 */
typedef struct KbFormula KbFormula;

/**
 * A point of R². Classical payoffs use `u` and leave `v` at 0.
 */
typedef struct KbPair {
  double u;
  double v;
} KbPair;

/**
 * Stakes `h, h', k, k'` with `h·x + h'·z = k·y + k'·w`, `h < k'`, `h' < k`.
 */
typedef struct KbStakes {
  double h;
  double hp;
  double k;
  double kp;
} KbStakes;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library on the same thread.
 */
const char *kb_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void kb_string_free(char *s);

/**
 * Parses `text` over `p1..p{arity}`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum KbStatus kb_formula_parse(const char *text, uintptr_t arity, struct KbFormula **out);

/**
 * # Safety
 * `f` must be null or a handle from [`kb_formula_parse`], not yet freed.
 */
void kb_formula_free(struct KbFormula *f);

/**
 * Canonical text of the formula; free with [`kb_string_free`].
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum KbStatus kb_formula_to_string(const struct KbFormula *f, char **out);

/**
 * Value of the formula at `world`, a string over `T`, `N`, `F`.
 *
 * # Safety
 * `f` must be a live handle, `world` a nul-terminated string and `out`
 * writable.
 */
enum KbStatus kb_formula_eval(const struct KbFormula *f, const char *world, enum KbTruth *out);

/**
 * Whether `premise ⊨ conclusion` over all `3ⁿ` worlds.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum KbStatus kb_formula_entails(const struct KbFormula *premise,
                                 const struct KbFormula *conclusion,
                                 bool *out);

/**
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum KbStatus kb_formula_equivalent(const struct KbFormula *a,
                                    const struct KbFormula *b,
                                    bool *out);

/**
 * Reads a belief file: `{"arity": n, "beliefs": [{"formula": "...", "value": [x, y]}]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum KbStatus kb_beliefs_from_json(const char *json, struct KbBeliefs **out);

/**
 * # Safety
 * `b` must be null or a handle from [`kb_beliefs_from_json`], not yet freed.
 */
void kb_beliefs_free(struct KbBeliefs *b);

/**
 * Checks the axioms and their derived consequences. Writes the number of
 * violations to `count` and, when `report` is not null, a JSON report.
 *
 * # Safety
 * `b` must be a live handle; `count` writable; `report` null or writable.
 */
enum KbStatus kb_beliefs_check(const struct KbBeliefs *b, uintptr_t *count, char **report);

/**
 * Builds and verifies a Dutch Book for every violation. Writes the number
 * of certificates to `count` and, when `report` is not null, the full JSON
 * report (certificates, unsynthesized violations, unchecked instances).
 *
 * # Safety
 * `b` must be a live handle; `count` writable; `report` null or writable.
 */
enum KbStatus kb_beliefs_synthesize(const struct KbBeliefs *b, uintptr_t *count, char **report);

/**
 * Reads a book file (`"kind": "partial"` or `"classical"`).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum KbStatus kb_book_from_json(const char *json, struct KbBook **out);

/**
 * # Safety
 * `b` must be null or a handle from [`kb_book_from_json`], not yet freed.
 */
void kb_book_free(struct KbBook *b);

/**
 * Exhaustive detection over every world of the book's arity.
 *
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum KbStatus kb_book_detect(const struct KbBook *b, enum KbVerdict *out);

/**
 * Net payoff of the book at `world`.
 *
 * # Safety
 * `b` must be a live handle, `world` a nul-terminated string and `out`
 * writable.
 */
enum KbStatus kb_book_payoff(const struct KbBook *b, const char *world, struct KbPair *out);

/**
 * Stakes for `(x, y), (z, w) ∈ T` with `x + z = y + w` and
 * `(y, x) ≠ (z, w)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum KbStatus kb_stake_solver(double x, double y, double z, double w, struct KbStakes *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KLEENEBOOK_H */
