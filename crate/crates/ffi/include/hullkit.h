#ifndef HULLKIT_H
#define HULLKIT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  HK_STATUS_OK = 0,
  HK_STATUS_NULL_ARGUMENT = 1,
  HK_STATUS_INVALID_UTF8 = 2,
  HK_STATUS_PARSE = 3,
  HK_STATUS_PRECONDITION = 4,
  HK_STATUS_SIZE_REFUSED = 5,
  HK_STATUS_THEOREM_VIOLATION = 6,
  HK_STATUS_IO = 7,
  HK_STATUS_PANIC = 8,
  HK_STATUS_OTHER = 9,
} HkStatus;

/**
 * A finite algebra.
 */
typedef struct HkAlgebra HkAlgebra;

/**
 * A finite semigroup, as returned by `hk_end`.
 */
typedef struct HkSemigroup HkSemigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next hullkit call on the same thread.
 */
const char *hk_last_error(void);

/**
 * Library version as a static string.
 */
const char *hk_version(void);

/**
 * Parses an algebra from JSON text.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
HkStatus hk_algebra_from_json(const char *json, HkAlgebra **out);

/**
 * Builds a named algebra: `set:N`, `cyclic:N`, `sym:N`, `vector:P:D` or
 * `clifford`.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
HkStatus hk_algebra_builtin(const char *name, HkAlgebra **out);

/**
 * Carrier size, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a handle from this library.
 */
size_t hk_algebra_size(const HkAlgebra *alg);

/**
 * # Safety
 * `alg` must be null or a handle from this library, not yet freed.
 */
void hk_algebra_free(HkAlgebra *alg);

/**
 * Enumerates `End(A)`.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
HkStatus hk_end(const HkAlgebra *alg, HkSemigroup **out);

/**
 * Order of a semigroup, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a handle from this library.
 */
size_t hk_semigroup_order(const HkSemigroup *s);

/**
 * Number of idempotents, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a handle from this library.
 */
size_t hk_semigroup_idempotents(const HkSemigroup *s);

/**
 * # Safety
 * `s` must be null or a handle from this library, not yet freed.
 */
void hk_semigroup_free(HkSemigroup *s);

/**
 * The hull report for an ideal of `End(A)` as JSON. `ideal` uses the CLI
 * syntax (`all`, `rank:K`, `non-units`, `minimal`, `gens:I,J`, or a file).
 *
 * # Safety
 * `alg` must be a live handle, `ideal` a nul-terminated string and
 * `out_json` a valid pointer. Release the result with `hk_string_free`.
 */
HkStatus hk_hull_report_json(const HkAlgebra *alg, const char *ideal, char **out_json);

/**
 * Size of `A/∼` for an ideal of `End(A)`.
 *
 * # Safety
 * `alg` must be a live handle, `ideal` a nul-terminated string and
 * `out_size` a valid pointer.
 */
HkStatus hk_quotient_size(const HkAlgebra *alg, const char *ideal, size_t *out_size);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void hk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HULLKIT_H */
