/* C interface of the defext default-logic extension search. */

#ifndef DEFEXT_H
#define DEFEXT_H

/* Generated by cbindgen from defext-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a C API call.
 */
typedef enum DefextStatus {
  DEFEXT_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  DEFEXT_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DEFEXT_STATUS_INVALID_UTF8 = 2,
  /**
   * Theory or chromosome text failed to parse.
   */
  DEFEXT_STATUS_PARSE_ERROR = 3,
  /**
   * A parameter value is out of range.
   */
  DEFEXT_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The theory is too large for exhaustive enumeration.
   */
  DEFEXT_STATUS_BOUND_EXCEEDED = 5,
  /**
   * An internal invariant failed.
   */
  DEFEXT_STATUS_INTERNAL_ERROR = 6,
} DefextStatus;

/**
 * An aggregate report over one or more search trials (opaque).
 */
typedef struct DefextReport DefextReport;

/**
 * A preprocessed default theory ready for solving (opaque).
 */
typedef struct DefextTheory DefextTheory;

/**
 * Search parameters. Obtain defaults from [`defext_params_default`].
 */
typedef struct DefextParams {
  uint64_t population_size;
  double crossover_probability;
  double mutation_probability;
  uint32_t max_generations;
  uint64_t seed;
  uint32_t rank_levels;
  /**
   * Restrict crossover cuts to gene boundaries.
   */
  bool boundary_crossover;
  /**
   * Encode one bit per default instead of a two-bit gene.
   */
  bool one_bit_genes;
  /**
   * Independent searches; per-trial seeds derive from `seed`.
   */
  uint32_t trials;
} DefextParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Fills `out` with the library's default parameters (one trial).
 *
 * # Safety
 * `out` must point to writable memory for one `DefextParams`.
 */
enum DefextStatus defext_params_default(struct DefextParams *out);

/**
 * Parses a theory from text (see the README for the format).
 *
 * # Safety
 * `text` must point to a NUL-terminated string and `out` to a writable
 * pointer slot.
 */
enum DefextStatus defext_theory_from_text(const char *text, struct DefextTheory **out);

/**
 * Builds a taxonomy benchmark theory; `variant` is one of `boy`, `girl`,
 * `man`, `woman`, `man-student`, `woman-student`.
 *
 * # Safety
 * `variant` must point to a NUL-terminated string and `out` to a writable
 * pointer slot.
 */
enum DefextStatus defext_theory_people(const char *variant, struct DefextTheory **out);

/**
 * Builds a Hamiltonian-cycle theory over `n` vertices from `edge_count`
 * directed edges given as `(from, to)` pairs in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable `uint64_t` values laid
 * out as from/to pairs, and `out` to a writable pointer slot.
 */
enum DefextStatus defext_theory_hamilton(uint64_t n,
                                         const uint64_t *edges,
                                         uint64_t edge_count,
                                         struct DefextTheory **out);

/**
 * Total number of defaults in the theory.
 *
 * # Safety
 * `theory` must be a live handle from a `defext_theory_*` constructor.
 */
uint64_t defext_theory_default_count(const struct DefextTheory *theory);

/**
 * Number of chromosome-encoded defaults (self-blocking ones are excluded).
 *
 * # Safety
 * `theory` must be a live handle from a `defext_theory_*` constructor.
 */
uint64_t defext_theory_encoded_count(const struct DefextTheory *theory);

/**
 * Releases a theory handle; NULL is ignored.
 *
 * # Safety
 * `theory` must be NULL or a live handle, and must not be used afterwards.
 */
void defext_theory_free(struct DefextTheory *theory);

/**
 * Runs the genetic search (`params.trials` independent trials) and returns
 * a report handle.
 *
 * # Safety
 * `theory` must be a live handle; `params` and `out` must be readable and
 * writable respectively.
 */
enum DefextStatus defext_solve(const struct DefextTheory *theory,
                               const struct DefextParams *params,
                               struct DefextReport **out);

/**
 * True iff at least one trial found a certified extension (or the facts
 * were inconsistent, which short-circuits to the trivial extension).
 *
 * # Safety
 * `report` must be a live handle from [`defext_solve`].
 */
bool defext_report_found(const struct DefextReport *report);

/**
 * Number of successful trials.
 *
 * # Safety
 * `report` must be a live handle from [`defext_solve`].
 */
uint32_t defext_report_successes(const struct DefextReport *report);

/**
 * Mean generations over successful trials; false when no trial succeeded.
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
bool defext_report_ng_mean(const struct DefextReport *report, double *out);

/**
 * Serializes the full report as JSON.
 *
 * # Safety
 * `report` must be a live handle and `out` a writable pointer slot; free
 * the string with [`defext_string_free`].
 */
enum DefextStatus defext_report_json(const struct DefextReport *report, char **out);

/**
 * Releases a report handle; NULL is ignored.
 *
 * # Safety
 * `report` must be NULL or a live handle, and must not be used afterwards.
 */
void defext_report_free(struct DefextReport *report);

/**
 * Verifies one chromosome (a 0/1 string, two bits per encoded default)
 * against the theory; `certified` receives the verdict.
 *
 * # Safety
 * `theory` must be a live handle, `chromosome` a NUL-terminated string,
 * `certified` writable.
 */
enum DefextStatus defext_verify(const struct DefextTheory *theory,
                                const char *chromosome,
                                bool *certified);

/**
 * Exhaustively counts the theory's extensions (at most 16 defaults).
 *
 * # Safety
 * `theory` must be a live handle and `count` writable.
 */
enum DefextStatus defext_oracle_count(const struct DefextTheory *theory, uint64_t *count);

/**
 * Releases a string returned by this library; NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, and must not be
 * used afterwards.
 */
void defext_string_free(char *s);

/**
 * Returns a copy of the last error message on this thread, or NULL if none;
 * free it with [`defext_string_free`].
 */
char *defext_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEFEXT_H */
