#ifndef PARSTAB_H
#define PARSTAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the first four match the CLI exit codes.
 */
typedef enum ParstabStatus {
  PARSTAB_STATUS_OK = 0,
  PARSTAB_STATUS_INVALID = 1,
  PARSTAB_STATUS_PARSE = 2,
  PARSTAB_STATUS_CAP_EXCEEDED = 3,
  PARSTAB_STATUS_NULL_POINTER = 4,
  PARSTAB_STATUS_INTERNAL = 5,
} ParstabStatus;

/**
 * Opaque validated cover.
 */
typedef struct ParstabCover ParstabCover;

/**
 * Opaque orbifold structure (marked points with orders).
 */
typedef struct ParstabOrbifold ParstabOrbifold;

typedef struct ParstabVerdict {
  /**
   * True when pullback preserves stability (rank F = 1).
   */
  bool preserved;
  /**
   * rank F.
   */
  size_t rank;
  /**
   * Degree over the base of the obstructing intermediate cover; 0 when preserved.
   */
  size_t witness_degree;
} ParstabVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *parstab_last_error(void);

/**
 * Parses and validates a cover document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be a valid pointer.
 */
enum ParstabStatus parstab_cover_from_json(const char *json, struct ParstabCover **out);

/**
 * # Safety
 * `cover` must be null or a handle from [`parstab_cover_from_json`] not yet freed.
 */
void parstab_cover_free(struct ParstabCover *cover);

/**
 * Degree of the cover, or 0 for a null handle.
 *
 * # Safety
 * `cover` must be null or a live handle.
 */
size_t parstab_cover_degree(const struct ParstabCover *cover);

/**
 * Genus of the covering curve.
 *
 * # Safety
 * `cover` must be a live handle; `out` a valid pointer.
 */
enum ParstabStatus parstab_cover_genus(const struct ParstabCover *cover, size_t *out);

/**
 * Parses an orbifold document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be a valid pointer.
 */
enum ParstabStatus parstab_orbifold_from_json(const char *json, struct ParstabOrbifold **out);

/**
 * An orbifold structure with no marked points.
 */
struct ParstabOrbifold *parstab_orbifold_empty(void);

/**
 * # Safety
 * `orbifold` must be null or a live handle.
 */
void parstab_orbifold_free(struct ParstabOrbifold *orbifold);

/**
 * rank F for the cover and orbifold structure.
 *
 * # Safety
 * Handles must be live; `out` a valid pointer.
 */
enum ParstabStatus parstab_rank_of_f(const struct ParstabCover *cover,
                                     const struct ParstabOrbifold *orbifold,
                                     size_t max_degree,
                                     size_t *out);

/**
 * # Safety
 * Handles must be live; `out` a valid pointer.
 */
enum ParstabStatus parstab_stability_verdict(const struct ParstabCover *cover,
                                             const struct ParstabOrbifold *orbifold,
                                             size_t max_degree,
                                             struct ParstabVerdict *out);

/**
 * Whether every marked order is coprime to the ramification indices above it.
 *
 * # Safety
 * Handles must be live; `out` a valid pointer.
 */
enum ParstabStatus parstab_gr1_hypothesis_holds(const struct ParstabCover *cover,
                                                const struct ParstabOrbifold *orbifold,
                                                bool *out);

/**
 * The `analyze` report as a JSON string.
 *
 * # Safety
 * Handles must be live; `out` a valid pointer. Free the result with
 * [`parstab_string_free`].
 */
enum ParstabStatus parstab_analyze_json(const struct ParstabCover *cover,
                                        const struct ParstabOrbifold *orbifold,
                                        size_t max_degree,
                                        bool list_blocks,
                                        char **out);

/**
 * The parabolic structure of the direct image as a JSON string.
 *
 * # Safety
 * `cover` must be live; `out` a valid pointer.
 */
enum ParstabStatus parstab_direct_image_json(const struct ParstabCover *cover, char **out);

/**
 * Pulls a bundle document back along the cover; the result is a JSON string.
 *
 * # Safety
 * `cover` must be live, `bundle_json` nul-terminated, `out` a valid pointer.
 */
enum ParstabStatus parstab_pullback_json(const struct ParstabCover *cover,
                                         const char *bundle_json,
                                         char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void parstab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARSTAB_H */
