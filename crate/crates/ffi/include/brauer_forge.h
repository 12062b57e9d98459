#ifndef BRAUER_FORGE_H
#define BRAUER_FORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum BfStatus {
  BF_STATUS_OK = 0,
  BF_STATUS_NULL_POINTER = 1,
  BF_STATUS_INVALID_UTF8 = 2,
  BF_STATUS_INVALID_ARGUMENT = 3,
  BF_STATUS_UNKNOWN_GROUP = 4,
  BF_STATUS_PARSE = 5,
  BF_STATUS_PRECONDITION = 6,
  BF_STATUS_RESOURCE_LIMIT = 7,
  BF_STATUS_INTERNAL = 8,
  BF_STATUS_IO = 9,
  BF_STATUS_PANIC = 10,
} BfStatus;

typedef enum BfVerdict {
  BF_VERDICT_PASS = 0,
  BF_VERDICT_FAIL = 1,
  BF_VERDICT_SKIPPED = 2,
} BfVerdict;

/**
 * A group together with its chosen Sylow 2-subgroup.
 */
typedef struct BfGroup BfGroup;

typedef struct BfReport BfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *bf_last_error(void);

/**
 * Library version as a static string.
 */
const char *bf_version(void);

/**
 * Loads a catalog group (`gl23`, `sd16`, ...) or a group file.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BfStatus bf_group_load(const char *source, struct BfGroup **out);

/**
 * Builds a group from text: a `degree n` line followed by one generator
 * per line in cycle notation.
 *
 * # Safety
 * `name` and `text` must be NUL-terminated strings and `out` a valid pointer.
 */
enum BfStatus bf_group_from_text(const char *name, const char *text, struct BfGroup **out);

/**
 * # Safety
 * `g` must be a valid group handle and `out` a valid pointer.
 */
enum BfStatus bf_group_order(const struct BfGroup *g, uint64_t *out);

/**
 * Order of the chosen Sylow 2-subgroup.
 *
 * # Safety
 * `g` must be a valid group handle and `out` a valid pointer.
 */
enum BfStatus bf_group_sylow_order(const struct BfGroup *g, uint64_t *out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void bf_group_free(struct BfGroup *g);

/**
 * Brauer indecomposability of `Sc(G, P)`; `p_spec` as on the command line
 * (`sylow`, a tag, words in `x, y`, or `delta:<spec>` on products).
 *
 * # Safety
 * `g` must be a valid group handle, `p_spec` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum BfStatus bf_check_brauer(const struct BfGroup *g,
                              const char *p_spec,
                              uint32_t field_degree,
                              uint64_t seed,
                              struct BfReport **out);

/**
 * Hypotheses and conclusion for a semidihedral `P ≤ G`.
 *
 * # Safety
 * As for [`bf_check_brauer`].
 */
enum BfStatus bf_check_theorem1(const struct BfGroup *g,
                                const char *p_spec,
                                uint32_t field_degree,
                                uint64_t seed,
                                struct BfReport **out);

/**
 * `Sc(G x G', ΔP)` for two groups with semidihedral Sylow 2-subgroups of
 * the same order.
 *
 * # Safety
 * `left` and `right` must be valid group handles and `out` a valid pointer.
 */
enum BfStatus bf_check_theorem2(const struct BfGroup *left,
                                const struct BfGroup *right,
                                uint32_t field_degree,
                                uint64_t seed,
                                struct BfReport **out);

/**
 * Compares `Sc(G, P)(Q)` with `Sc(N_G(Q), N_P(Q))`.
 *
 * # Safety
 * `g` must be a valid group handle, the specs NUL-terminated strings and
 * `out` a valid pointer.
 */
enum BfStatus bf_check_ik1(const struct BfGroup *g,
                           const char *p_spec,
                           const char *q_spec,
                           uint32_t field_degree,
                           uint64_t seed,
                           struct BfReport **out);

/**
 * # Safety
 * `g` must be a valid group handle and `out` a valid pointer.
 */
enum BfStatus bf_check_lemma31(const struct BfGroup *g, uint64_t seed, struct BfReport **out);

/**
 * # Safety
 * `r` must be a valid report handle and `out` a valid pointer.
 */
enum BfStatus bf_report_verdict(const struct BfReport *r, enum BfVerdict *out);

/**
 * # Safety
 * `r` must be a valid report handle and `out` a valid pointer.
 */
enum BfStatus bf_report_hypotheses_hold(const struct BfReport *r, bool *out);

/**
 * The report as JSON; with `canonical` the timings are omitted so equal
 * runs give equal strings. Free the result with [`bf_string_free`].
 *
 * # Safety
 * `r` must be a valid report handle and `out` a valid pointer.
 */
enum BfStatus bf_report_to_json(const struct BfReport *r, bool canonical, char **out);

/**
 * The human-readable summary. Free the result with [`bf_string_free`].
 *
 * # Safety
 * `r` must be a valid report handle and `out` a valid pointer.
 */
enum BfStatus bf_report_summary(const struct BfReport *r, char **out);

/**
 * # Safety
 * `r` must be null or a handle from this library not yet freed.
 */
void bf_report_free(struct BfReport *r);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void bf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRAUER_FORGE_H */
