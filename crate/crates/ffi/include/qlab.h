#ifndef QLAB_H
#define QLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QlabStatus {
  QLAB_STATUS_OK = 0,
  QLAB_STATUS_NULL_POINTER = 1,
  QLAB_STATUS_EMPTY_TEXT = 2,
  QLAB_STATUS_INVALID_ARGUMENT = 3,
  QLAB_STATUS_OUT_OF_RANGE = 4,
  QLAB_STATUS_BUFFER_TOO_SMALL = 5,
  QLAB_STATUS_INTERNAL = 6,
} QlabStatus;

/**
 * Values for the `algorithm` argument of the cover functions.
 */
typedef enum QlabCoverAlgorithm {
  QLAB_COVER_ALGORITHM_FOLK = 0,
  QLAB_COVER_ALGORITHM_AFI = 1,
  QLAB_COVER_ALGORITHM_BRES = 2,
  QLAB_COVER_ALGORITHM_MS = 3,
  QLAB_COVER_ALGORITHM_MS_STATIC = 4,
} QlabCoverAlgorithm;

/**
 * Values for the `algorithm` argument of the seed functions.
 */
typedef enum QlabSeedAlgorithm {
  QLAB_SEED_ALGORITHM_IMP = 0,
  QLAB_SEED_ALGORITHM_KKRRW_S = 1,
  QLAB_SEED_ALGORITHM_KKRRW = 2,
} QlabSeedAlgorithm;

/**
 * Opaque text handle.
 */
typedef struct QlabText QlabText;

/**
 * Substrings `T[i, j]` for `j` in `j1..=j2`, 1-based. When `reversed` is
 * nonzero the positions refer to the reversed text.
 */
typedef struct QlabPackage {
  size_t i;
  size_t j1;
  size_t j2;
  uint8_t reversed;
} QlabPackage;

typedef struct QlabPartialCover {
  size_t alpha;
  size_t length;
  size_t witness_start;
  size_t coverage;
} QlabPartialCover;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies `len` bytes into a new text.
 *
 * # Safety
 * `bytes` must be valid for `len` reads; `out` must be writable.
 */
enum QlabStatus qlab_text_new(const uint8_t *bytes, size_t len, struct QlabText **out);

/**
 * Releases a text; null is ignored.
 *
 * # Safety
 * `text` must come from [`qlab_text_new`] and not be used afterwards.
 */
void qlab_text_free(struct QlabText *text);

/**
 * Length of the text, 0 for null.
 *
 * # Safety
 * `text` must be null or a live handle.
 */
size_t qlab_text_len(const struct QlabText *text);

/**
 * # Safety
 * `text` must be a live handle and `out_len` writable.
 */
enum QlabStatus qlab_shortest_cover(const struct QlabText *text,
                                    uint32_t algorithm,
                                    size_t *out_len);

/**
 * Lengths of all covers in increasing order.
 *
 * # Safety
 * `buf` must be valid for `cap` writes; `out_count` writable.
 */
enum QlabStatus qlab_all_covers(const struct QlabText *text,
                                size_t *buf,
                                size_t cap,
                                size_t *out_count);

/**
 * Number of distinct seeds and the shortest seed length.
 *
 * # Safety
 * `text` must be a live handle; out-pointers writable.
 */
enum QlabStatus qlab_seed_count(const struct QlabText *text,
                                uint32_t algorithm,
                                size_t *out_count,
                                size_t *out_shortest);

/**
 * All seeds as packages.
 *
 * # Safety
 * `buf` must be valid for `cap` writes; `out_count` writable.
 */
enum QlabStatus qlab_seed_packages(const struct QlabText *text,
                                   uint32_t algorithm,
                                   struct QlabPackage *buf,
                                   size_t cap,
                                   size_t *out_count);

/**
 * Shortest substring covering at least `alpha` positions.
 *
 * # Safety
 * `text` must be a live handle and `out` writable.
 */
enum QlabStatus qlab_partial_cover(const struct QlabText *text,
                                   size_t alpha,
                                   struct QlabPartialCover *out);

/**
 * Static description of a status code; unknown codes get a generic text.
 */
const char *qlab_status_message(int32_t status);

const char *qlab_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLAB_H */
