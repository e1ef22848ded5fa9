#ifndef ENTCAT_H
#define ENTCAT_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Input and resource codes match the CLI exit codes.
 */
typedef enum EntcatStatus {
  ENTCAT_STATUS_OK = 0,
  ENTCAT_STATUS_NULL_POINTER = 1,
  ENTCAT_STATUS_INVALID_INPUT = 2,
  ENTCAT_STATUS_RESOURCE_LIMIT = 4,
  ENTCAT_STATUS_DIMENSION_MISMATCH = 5,
  ENTCAT_STATUS_NO_SEARCH_NEEDED = 6,
  ENTCAT_STATUS_INVALID_ARGUMENT = 7,
  ENTCAT_STATUS_PANIC = 8,
} EntcatStatus;

/**
 * Opaque Schmidt coefficient vector.
 */
typedef struct EntcatVector EntcatVector;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into this library from the same thread.
 */
const char *entcat_last_error(void);

void entcat_string_free(char *s);

uint64_t entcat_component_cap(void);

void entcat_set_component_cap(uint64_t cap);

/**
 * Parses `"0.4,0.4,0.1,0.1"` or `"50/103,30/103,23/103"`. With
 * `normalize` the entries are rescaled by their sum instead of rejected.
 */
enum EntcatStatus entcat_vector_parse(const char *input, bool normalize, struct EntcatVector **out);

void entcat_vector_free(struct EntcatVector *v);

/**
 * Number of components, or 0 for NULL.
 */
uint64_t entcat_vector_len(const struct EntcatVector *v);

/**
 * Canonical fraction text, or NULL for NULL.
 */
char *entcat_vector_to_string(const struct EntcatVector *v);

enum EntcatStatus entcat_vector_tensor(const struct EntcatVector *a,
                                       const struct EntcatVector *b,
                                       struct EntcatVector **out);

enum EntcatStatus entcat_vector_power(const struct EntcatVector *a,
                                      uint32_t k,
                                      struct EntcatVector **out);

/**
 * Sets `*feasible` to whether `x ≺ y`.
 */
enum EntcatStatus entcat_majorizes(const struct EntcatVector *x,
                                   const struct EntcatVector *y,
                                   bool *feasible);

enum EntcatStatus entcat_is_catalyst(const struct EntcatVector *cat,
                                     const struct EntcatVector *psi,
                                     const struct EntcatVector *phi,
                                     uint32_t copies,
                                     bool *result);

/**
 * Writes the fewest catalyst copies up to `max_copies`, or 0 if none.
 */
enum EntcatStatus entcat_min_catalyst_copies(const struct EntcatVector *cat,
                                             const struct EntcatVector *psi,
                                             const struct EntcatVector *phi,
                                             uint32_t max_copies,
                                             uint32_t *copies);

/**
 * Writes the multiple-copy threshold up to `max_k`, or 0 if none.
 */
enum EntcatStatus entcat_mlocc_threshold(const struct EntcatVector *psi,
                                         const struct EntcatVector *phi,
                                         uint32_t max_k,
                                         uint32_t *threshold);

/**
 * Exact `P_max(psi^⊗s ⊗ cat^⊗m → phi^⊗s ⊗ cat^⊗m)` as fraction text.
 * `cat` may be NULL, in which case `cat_copies` is ignored.
 */
enum EntcatStatus entcat_pmax(const struct EntcatVector *psi,
                              const struct EntcatVector *phi,
                              uint32_t source_copies,
                              const struct EntcatVector *cat,
                              uint32_t cat_copies,
                              char **fraction);

enum EntcatStatus entcat_bounds(const struct EntcatVector *psi,
                                const struct EntcatVector *phi,
                                uint32_t power,
                                char **lower,
                                char **upper);

/**
 * Trade-off table as the JSON payload used by the CLI.
 */
enum EntcatStatus entcat_tradeoff_json(const struct EntcatVector *psi,
                                       const struct EntcatVector *phi,
                                       const struct EntcatVector *cat,
                                       uint32_t max_source,
                                       uint32_t max_cat,
                                       char **json);

/**
 * Grid catalyst search. `lambda` may be NULL for deterministic mode;
 * `max_hits` of 0 means unlimited. Writes `{"hits": [...], "counters": {...}}`.
 */
enum EntcatStatus entcat_search_json(const struct EntcatVector *psi,
                                     const struct EntcatVector *phi,
                                     size_t dimension,
                                     uint64_t denominator,
                                     uint32_t copies,
                                     const char *lambda,
                                     size_t max_hits,
                                     char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTCAT_H */
