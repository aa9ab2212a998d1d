#ifndef PREPROJ_H
#define PREPROJ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Nonzero values other than the last three match the exit
 * codes of the command-line tool.
 */
typedef enum PpStatus {
  PP_STATUS_OK = 0,
  PP_STATUS_PARSE = 2,
  PP_STATUS_PRECONDITION = 3,
  PP_STATUS_GUARD = 4,
  PP_STATUS_INTERNAL = 5,
  PP_STATUS_NULL_ARGUMENT = 6,
  PP_STATUS_INVALID_UTF8 = 7,
  PP_STATUS_PANIC = 8,
} PpStatus;

/**
 * Mutation direction.
 */
typedef enum PpDirection {
  PP_DIRECTION_LEFT = 0,
  PP_DIRECTION_RIGHT = 1,
} PpDirection;

/**
 * Finite-dimensional algebra given by a quiver with relations.
 */
typedef struct PpAlgebra PpAlgebra;

/**
 * Bounded complex of modules over a [`PpAlgebra`].
 */
typedef struct PpComplex PpComplex;

/**
 * Ordered collection of complexes.
 */
typedef struct PpSmc PpSmc;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *pp_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void pp_string_free(char *s);

/**
 * Loads an algebra: `pi:<dynkin>[:I=..]`, `path:A<n>`, or a JSON file path.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out_alg` must be writable.
 */
enum PpStatus pp_algebra_load(const char *spec, struct PpAlgebra **out_alg);

/**
 * # Safety
 * `alg` must be NULL or a handle from [`pp_algebra_load`], not yet freed.
 */
void pp_algebra_free(struct PpAlgebra *alg);

/**
 * Number of vertices, or 0 if `alg` is NULL.
 *
 * # Safety
 * `alg` must be NULL or a live handle.
 */
size_t pp_algebra_num_vertices(const struct PpAlgebra *alg);

/**
 * Dimension of the algebra over the base field, or 0 if `alg` is NULL.
 *
 * # Safety
 * `alg` must be NULL or a live handle.
 */
size_t pp_algebra_dim(const struct PpAlgebra *alg);

/**
 * Parses a complex (or a module, placed in degree 0) from JSON text.
 *
 * # Safety
 * Pointers must be valid; `json` NUL-terminated.
 */
enum PpStatus pp_complex_from_json(const struct PpAlgebra *alg,
                                   const char *json,
                                   struct PpComplex **out_complex);

/**
 * The simple module at a 0-based vertex, placed in cohomological degree
 * `degree`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_complex_simple(const struct PpAlgebra *alg,
                                size_t vertex,
                                int64_t degree,
                                struct PpComplex **out_complex);

/**
 * Direct sum of two complexes.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_complex_direct_sum(const struct PpAlgebra *alg,
                                    const struct PpComplex *x,
                                    const struct PpComplex *y,
                                    struct PpComplex **out_complex);

/**
 * The shifted complex `x[n]`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_complex_shift(const struct PpComplex *x,
                               int64_t n,
                               struct PpComplex **out_complex);

/**
 * JSON text of a complex; release with [`pp_string_free`].
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_complex_to_json(const struct PpAlgebra *alg,
                                 const struct PpComplex *x,
                                 char **out_json);

/**
 * # Safety
 * `x` must be NULL or a live complex handle.
 */
void pp_complex_free(struct PpComplex *x);

/**
 * `dim Hom(x, y[n])` in the bounded derived category.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_hom_dim(const struct PpAlgebra *alg,
                         const struct PpComplex *x,
                         const struct PpComplex *y,
                         int64_t n,
                         size_t *out_dim);

/**
 * Lowest and highest degrees of nonzero cohomology.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_std_bounds(const struct PpAlgebra *alg,
                            const struct PpComplex *x,
                            int64_t *out_lo,
                            int64_t *out_hi);

/**
 * The simple modules in degree 0.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_smc_standard(const struct PpAlgebra *alg, struct PpSmc **out_smc);

/**
 * Parses a collection from JSON text.
 *
 * # Safety
 * Pointers must be valid; `json` NUL-terminated.
 */
enum PpStatus pp_smc_from_json(const struct PpAlgebra *alg,
                               const char *json,
                               struct PpSmc **out_smc);

/**
 * JSON text of a collection, including its mutation path; release with
 * [`pp_string_free`].
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_smc_to_json(const struct PpAlgebra *alg, const struct PpSmc *u, char **out_json);

/**
 * Number of elements, or 0 if `u` is NULL.
 *
 * # Safety
 * `u` must be NULL or a live handle.
 */
size_t pp_smc_len(const struct PpSmc *u);

/**
 * Copy of element `index` of a collection.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_smc_element(const struct PpSmc *u, size_t index, struct PpComplex **out_complex);

/**
 * Mutation of `u` at `index`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_smc_mutate(const struct PpAlgebra *alg,
                            const struct PpSmc *u,
                            size_t index,
                            enum PpDirection dir,
                            struct PpSmc **out_smc);

/**
 * Whether `u` satisfies the Hom axioms of a simple-minded collection.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_smc_validate(const struct PpAlgebra *alg, const struct PpSmc *u, bool *out_valid);

/**
 * Window `[lo, hi]` of `x` relative to the collection `u`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum PpStatus pp_smc_window(const struct PpAlgebra *alg,
                            const struct PpComplex *x,
                            const struct PpSmc *u,
                            int64_t *out_lo,
                            int64_t *out_hi);

/**
 * # Safety
 * `u` must be NULL or a live collection handle.
 */
void pp_smc_free(struct PpSmc *u);

/**
 * Decides whether `x` lies in the heart of some simple-minded collection.
 *
 * On membership, `*out_in_heart` is true and, if `out_witness` is not NULL,
 * it receives a collection whose heart contains `x`. Otherwise
 * `*out_degree` receives a negative `n` with `Hom(x, x[n]) != 0`.
 *
 * # Safety
 * Pointers must be valid; `out_witness` may be NULL.
 */
enum PpStatus pp_heart_membership(const struct PpAlgebra *alg,
                                  const struct PpComplex *x,
                                  bool *out_in_heart,
                                  int64_t *out_degree,
                                  struct PpSmc **out_witness);

/**
 * Restricted and primitive restricted roots of `FAMILY RANK:I=...` as JSON
 * `{"restricted_roots": [...], "primitive": [...]}`.
 *
 * # Safety
 * Pointers must be valid; `dynkin` NUL-terminated.
 */
enum PpStatus pp_restricted_roots_json(const char *dynkin, char **out_json);

/**
 * Runs a named verification suite; `*out_passed` is true if every check
 * passed. If `out_report` is not NULL it receives the JSON report.
 *
 * # Safety
 * Pointers must be valid; `name` NUL-terminated; `out_report` may be NULL.
 */
enum PpStatus pp_verify_suite(const char *name, uint64_t seed, bool *out_passed, char **out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREPROJ_H */
