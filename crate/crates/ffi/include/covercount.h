#ifndef COVERCOUNT_H
#define COVERCOUNT_H

/* Generated from the Rust sources by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum CcStatus {
  /**
   * The call succeeded.
   */
  CC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  CC_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  CC_STATUS_INVALID_UTF8 = 2,
  /**
   * The input was well-formed but mathematically invalid;
   * `cc_last_error_message` has the details.
   */
  CC_STATUS_DOMAIN_ERROR = 3,
  /**
   * An internal invariant failed; the library state is still sound.
   */
  CC_STATUS_PANIC = 4,
} CcStatus;

/**
 * Opaque handle to computed cover invariants.
 */
typedef struct CcCover CcCover;

/**
 * Opaque handle to an L-polynomial.
 */
typedef struct CcLPolynomial CcLPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string; do not free it.
 */
const char *cc_version(void);

/**
 * Copy of the current thread's last error message, or null if no call
 * has failed yet. Free the copy with `cc_string_free`.
 */
char *cc_last_error_message(void);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `text` must be null or a pointer previously returned by a `covercount`
 * function that documents `cc_string_free` as its deallocator, and it must
 * not be used afterwards.
 */
void cc_string_free(char *text);

/**
 * Parses an isogeny-class label (such as `4.2.d_i_o_x`) into an
 * L-polynomial handle. On success `*out` owns the new object; release it
 * with `cc_lpoly_free`.
 *
 * # Safety
 * `label` must be null or NUL-terminated; `out` must be null or writable.
 */
enum CcStatus cc_lpoly_parse_label(const char *label, struct CcLPolynomial **out);

/**
 * Builds an L-polynomial over F_q from the full coefficient list
 * `a_0,a_1,...,a_2g` given as comma-separated decimal integers
 * (`a_0` must be 1). Release the handle with `cc_lpoly_free`.
 *
 * # Safety
 * `coefficients` must be null or NUL-terminated; `out` must be null or
 * writable.
 */
enum CcStatus cc_lpoly_from_coefficients(uint64_t q,
                                         const char *coefficients,
                                         struct CcLPolynomial **out);

/**
 * Releases an L-polynomial handle. Null is a no-op.
 *
 * # Safety
 * `lpoly` must be null or a pointer from `cc_lpoly_parse_label` /
 * `cc_lpoly_from_coefficients`, not used afterwards.
 */
void cc_lpoly_free(struct CcLPolynomial *lpoly);

/**
 * Genus of the underlying curve.
 *
 * # Safety
 * `lpoly` must be a live handle; `out` must be null or writable.
 */
enum CcStatus cc_lpoly_genus(const struct CcLPolynomial *lpoly, uint32_t *out);

/**
 * Size of the base field F_q.
 *
 * # Safety
 * `lpoly` must be a live handle; `out` must be null or writable.
 */
enum CcStatus cc_lpoly_field(const struct CcLPolynomial *lpoly, uint64_t *out);

/**
 * Whether the polynomial passes the Weil checks (functional equation and
 * certified root location).
 *
 * # Safety
 * `lpoly` must be a live handle; `out` must be null or writable.
 */
enum CcStatus cc_lpoly_weil_ok(const struct CcLPolynomial *lpoly, bool *out);

/**
 * Class number L(1) as a decimal string; free it with `cc_string_free`.
 *
 * # Safety
 * `lpoly` must be a live handle; `out` must be null or writable.
 */
enum CcStatus cc_lpoly_class_number(const struct CcLPolynomial *lpoly, char **out);

/**
 * Number of rational points over the degree-`degree` extension, as a
 * decimal string; free it with `cc_string_free`. `degree` must be >= 1.
 *
 * # Safety
 * `lpoly` must be a live handle; `out` must be null or writable.
 */
enum CcStatus cc_lpoly_point_count(const struct CcLPolynomial *lpoly, uint32_t degree, char **out);

/**
 * Computes the invariants of the largest everywhere-unramified abelian
 * cover in which every rational point splits completely. On success
 * `*out` owns the new object; release it with `cc_cover_free`.
 *
 * # Safety
 * `lpoly` must be a live handle; `out` must be null or writable.
 */
enum CcStatus cc_cover_compute(const struct CcLPolynomial *lpoly, struct CcCover **out);

/**
 * Releases a cover handle. Null is a no-op.
 *
 * # Safety
 * `cover` must be null or a pointer from `cc_cover_compute`, not used
 * afterwards.
 */
void cc_cover_free(struct CcCover *cover);

/**
 * Order of the Galois group of the cover, as a decimal string; free it
 * with `cc_string_free`.
 *
 * # Safety
 * `cover` must be a live handle; `out` must be null or writable.
 */
enum CcStatus cc_cover_group_order(const struct CcCover *cover, char **out);

/**
 * Genus of the covering curve, as a decimal string; free it with
 * `cc_string_free`.
 *
 * # Safety
 * `cover` must be a live handle; `out` must be null or writable.
 */
enum CcStatus cc_cover_genus(const struct CcCover *cover, char **out);

/**
 * Number of rational points on the covering curve, as a decimal string;
 * free it with `cc_string_free`.
 *
 * # Safety
 * `cover` must be a live handle; `out` must be null or writable.
 */
enum CcStatus cc_cover_points(const struct CcCover *cover, char **out);

/**
 * Recomputes the bundled record tables. Writes how many rows passed and
 * how many there are; the caller decides whether `passed == total` is
 * good enough.
 *
 * # Safety
 * `passed` and `total` must each be null or writable.
 */
enum CcStatus cc_verify_tables(size_t *passed, size_t *total);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COVERCOUNT_H */
