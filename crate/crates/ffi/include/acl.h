#ifndef ACL_H
#define ACL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function.
 */
typedef enum AclStatus {
  ACL_STATUS_OK = 0,
  /**
   * No proof found, sequent invalid, or proof rejected.
   */
  ACL_STATUS_NEGATIVE = 1,
  /**
   * Text failed to parse or an argument was out of range.
   */
  ACL_STATUS_PARSE_ERROR = 2,
  /**
   * A lattice failed validation.
   */
  ACL_STATUS_LATTICE_ERROR = 3,
  ACL_STATUS_NULL_POINTER = 4,
  ACL_STATUS_INVALID_UTF8 = 5,
  /**
   * Two handles live over different lattices.
   */
  ACL_STATUS_LATTICE_MISMATCH = 6,
  /**
   * A panic was caught at the boundary.
   */
  ACL_STATUS_INTERNAL = 7,
} AclStatus;

/**
 * A validated finite residuated lattice.
 */
typedef struct AclLattice AclLattice;

/**
 * A step function over some lattice.
 */
typedef struct AclStep AclStep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failure on this thread, or an empty string.
 * The pointer stays valid until the next call into the library.
 */
const char *acl_last_error(void);

/**
 * Frees a string returned by the library.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library that has not
 * been freed.
 */
void acl_string_free(char *s);

/**
 * Builds a lattice from `luk:n`, `godel:n`, `bool:k` or `file:PATH`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a writable pointer.
 */
enum AclStatus acl_lattice_new(const char *spec, struct AclLattice **out);

/**
 * # Safety
 * `l` must be null or a handle from [`acl_lattice_new`] not yet freed.
 */
void acl_lattice_free(struct AclLattice *l);

/**
 * The number of elements, or 0 for a null handle.
 *
 * # Safety
 * `l` must be null or a live lattice handle.
 */
size_t acl_lattice_size(const struct AclLattice *l);

/**
 * Parses a literal such as `step(1/2=0,1=1)` over `l`.
 *
 * # Safety
 * `l` must be a live lattice handle, `literal` a NUL-terminated string and
 * `out` a writable pointer.
 */
enum AclStatus acl_step_parse(const struct AclLattice *l,
                              const char *literal,
                              struct AclStep **out);

/**
 * # Safety
 * `f` must be null or a step handle not yet freed.
 */
void acl_step_free(struct AclStep *f);

/**
 * The literal form of `f`, to be freed with [`acl_string_free`]; null for
 * a null handle.
 *
 * # Safety
 * `f` must be null or a live step handle.
 */
char *acl_step_to_string(const struct AclStep *f);

/**
 * Writes whether `f ≤ g` in the continuous order.
 *
 * # Safety
 * `f` and `g` must be live step handles and `out` a writable pointer.
 */
enum AclStatus acl_step_leq(const struct AclStep *f, const struct AclStep *g, bool *out);

/**
 * Evaluates `formula` with `names[i]` bound to `values[i]`.
 *
 * # Safety
 * `l` must be a live lattice handle; `names` and `values` must each point
 * to `count` valid entries (they may be null when `count` is 0); `out`
 * must be writable.
 */
enum AclStatus acl_eval(const struct AclLattice *l,
                        const char *formula,
                        const char *const *names,
                        const struct AclStep *const *values,
                        size_t count,
                        struct AclStep **out);

/**
 * Checks a sequent on `samples` random valuations with breakpoints on the
 * grid `k / 2^grid`. Returns `Ok` when no countermodel is found and
 * `Negative` otherwise; the countermodel, if any, is written to
 * `witness` (free with [`acl_string_free`]) when `witness` is not null.
 *
 * # Safety
 * `l` must be a live lattice handle, the strings NUL-terminated, and
 * `witness` null or writable.
 */
enum AclStatus acl_sequent_valid(const struct AclLattice *l,
                                 const char *system_name,
                                 const char *sequent,
                                 uint32_t grid,
                                 size_t samples,
                                 uint64_t seed,
                                 char **witness);

/**
 * Searches for a cut-free (or, with `allow_cut`, any) proof within
 * `max_depth`. On success the proof text is written to `proof` (free with
 * [`acl_string_free`]) when `proof` is not null.
 *
 * # Safety
 * The strings must be NUL-terminated and `proof` null or writable.
 */
enum AclStatus acl_prove(const char *system_name,
                         const char *sequent,
                         size_t max_depth,
                         uint32_t n_max,
                         bool allow_cut,
                         char **proof);

/**
 * Checks a proof written as an s-expression. Returns `Negative` with the
 * reason in [`acl_last_error`] when a step does not follow.
 *
 * # Safety
 * The strings must be NUL-terminated.
 */
enum AclStatus acl_check_proof(const char *system_name,
                               const char *proof,
                               uint32_t n_max,
                               bool allow_cut);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ACL_H */
