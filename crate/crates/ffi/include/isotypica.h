#ifndef ISOTYPICA_H
#define ISOTYPICA_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum IsotypicaMode {
  ISOTYPICA_MODE_FACTOR_BY_FACTOR = 0,
  ISOTYPICA_MODE_SINGLE_PASS = 1,
} IsotypicaMode;

typedef enum IsotypicaStatus {
  ISOTYPICA_STATUS_OK = 0,
  ISOTYPICA_STATUS_NULL_POINTER = 1,
  ISOTYPICA_STATUS_INVALID_UTF8 = 2,
  ISOTYPICA_STATUS_PARSE = 3,
  ISOTYPICA_STATUS_FORMAT_MISMATCH = 4,
  ISOTYPICA_STATUS_INVALID_ARGUMENT = 5,
  ISOTYPICA_STATUS_BUDGET_EXCEEDED = 6,
  ISOTYPICA_STATUS_MATH = 7,
  ISOTYPICA_STATUS_PANIC = 8,
} IsotypicaStatus;

typedef struct IsotypicaCircuit IsotypicaCircuit;

typedef struct IsotypicaMeta IsotypicaMeta;

typedef struct IsotypicaPlan IsotypicaPlan;

/**
 * Format `(delta, d, k)` of a metapolynomial space.
 */
typedef struct IsotypicaFormat {
  uint32_t delta;
  uint32_t d;
  uint32_t k;
} IsotypicaFormat;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *isotypica_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void isotypica_string_free(char *s);

/**
 * Parses text or JSON. `format` may be null when the text has a nonzero term.
 *
 * # Safety
 * `text` must be a nul-terminated string; `format` null or valid; `out`
 * writable.
 */
enum IsotypicaStatus isotypica_meta_parse(const char *text,
                                          const struct IsotypicaFormat *format,
                                          struct IsotypicaMeta **out);

/**
 * # Safety
 * `m` must come from this library and not have been freed.
 */
void isotypica_meta_free(struct IsotypicaMeta *m);

/**
 * # Safety
 * `m` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_meta_to_string(const struct IsotypicaMeta *m, char **out);

/**
 * # Safety
 * `m` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_meta_to_json(const struct IsotypicaMeta *m, char **out);

/**
 * # Safety
 * `m` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_meta_format(const struct IsotypicaMeta *m,
                                           struct IsotypicaFormat *out);

/**
 * # Safety
 * `m` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_meta_is_zero(const struct IsotypicaMeta *m, bool *out);

/**
 * # Safety
 * `a`, `b` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_meta_equal(const struct IsotypicaMeta *a,
                                          const struct IsotypicaMeta *b,
                                          bool *out);

/**
 * Projector onto the weight space `coords[0..len]`.
 *
 * # Safety
 * `coords` points to `len` values; `out` writable.
 */
enum IsotypicaStatus isotypica_plan_weight(struct IsotypicaFormat format,
                                           const int64_t *coords,
                                           size_t len,
                                           struct IsotypicaPlan **out);

/**
 * Projector onto the isotypic component of the partition `parts[0..len]`.
 *
 * # Safety
 * `parts` points to `len` values; `out` writable.
 */
enum IsotypicaStatus isotypica_plan_isotypic(struct IsotypicaFormat format,
                                             const int64_t *parts,
                                             size_t len,
                                             struct IsotypicaPlan **out);

/**
 * Projector onto the highest weight vectors of type `parts[0..len]`.
 *
 * # Safety
 * `parts` points to `len` values; `out` writable.
 */
enum IsotypicaStatus isotypica_plan_hwv(struct IsotypicaFormat format,
                                        const int64_t *parts,
                                        size_t len,
                                        struct IsotypicaPlan **out);

/**
 * Projector onto the component of a semistandard tableau given row by row:
 * row `r` has `row_lengths[r]` entries, all rows concatenated in `entries`.
 *
 * # Safety
 * `row_lengths` points to `rows` values and `entries` to their sum; `out`
 * writable.
 */
enum IsotypicaStatus isotypica_plan_gz(struct IsotypicaFormat format,
                                       const uint32_t *entries,
                                       const size_t *row_lengths,
                                       size_t rows,
                                       struct IsotypicaPlan **out);

/**
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void isotypica_plan_free(struct IsotypicaPlan *p);

/**
 * # Safety
 * `p` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_plan_factor_count(const struct IsotypicaPlan *p, size_t *out);

/**
 * # Safety
 * `p` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_plan_to_json(const struct IsotypicaPlan *p, char **out);

/**
 * # Safety
 * `p`, `m` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_apply_plan(const struct IsotypicaPlan *p,
                                          const struct IsotypicaMeta *m,
                                          struct IsotypicaMeta **out);

/**
 * `chi_lambda(C_p)` as a decimal string.
 *
 * # Safety
 * `lambda` points to `len` values; `out` writable.
 */
enum IsotypicaStatus isotypica_central_character(const int64_t *lambda,
                                                 size_t len,
                                                 size_t p,
                                                 char **out);

/**
 * # Safety
 * `json` nul-terminated; `out` writable.
 */
enum IsotypicaStatus isotypica_circuit_from_json(const char *json, struct IsotypicaCircuit **out);

/**
 * # Safety
 * `c` must come from this library and not have been freed.
 */
void isotypica_circuit_free(struct IsotypicaCircuit *c);

/**
 * # Safety
 * `c` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_circuit_to_json(const struct IsotypicaCircuit *c, char **out);

/**
 * # Safety
 * `c` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_circuit_size(const struct IsotypicaCircuit *c, size_t *out);

/**
 * Symbolic value of the circuit.
 *
 * # Safety
 * `c` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_circuit_eval(const struct IsotypicaCircuit *c,
                                            struct IsotypicaMeta **out);

/**
 * Circuit computing the plan's projection of the circuit's output.
 * `budget` bounds the normal form in single-pass mode and is ignored
 * otherwise.
 *
 * # Safety
 * `c`, `p` valid; `out` writable.
 */
enum IsotypicaStatus isotypica_transform(const struct IsotypicaCircuit *c,
                                         const struct IsotypicaPlan *p,
                                         enum IsotypicaMode mode,
                                         size_t budget,
                                         struct IsotypicaCircuit **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISOTYPICA_H */
