#ifndef LIEGRAPH_H
#define LIEGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LgStatus {
  LG_STATUS_OK = 0,
  LG_STATUS_NULL_POINTER = 1,
  LG_STATUS_INVALID_UTF8 = 2,
  LG_STATUS_PARSE = 3,
  LG_STATUS_VALIDATION = 4,
  LG_STATUS_BUDGET = 5,
  LG_STATUS_INTERNAL = 6,
} LgStatus;

typedef struct LgAlgebra LgAlgebra;

typedef struct LgForm LgForm;

typedef struct LgGraph LgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. Valid until
 * the next failing call on the same thread.
 */
const char *lg_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void lg_string_free(char *s);

/**
 * Parses an edge list (`u v` per line, `vertex u` for isolated vertices, `#` comments).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LgStatus lg_graph_parse(const char *text, struct LgGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from [`lg_graph_parse`], not yet freed.
 */
void lg_graph_free(struct LgGraph *g);

/**
 * Vertex, edge, coherent-component and connected-component counts.
 *
 * # Safety
 * `g` must be a live handle; output pointers must be valid.
 */
enum LgStatus lg_graph_counts(const struct LgGraph *g,
                              size_t *vertices,
                              size_t *edges,
                              size_t *coherent,
                              size_t *connected);

/**
 * Number of real forms of the complex algebra, one per involution class.
 *
 * # Safety
 * `g` must be a live handle and `out` valid.
 */
enum LgStatus lg_graph_real_form_count(const struct LgGraph *g, size_t bound, size_t *out);

/**
 * Writes `true` when there are infinitely many rational forms, `false` when exactly one.
 *
 * # Safety
 * `g` must be a live handle and `out` valid.
 */
enum LgStatus lg_graph_rational_forms_infinite(const struct LgGraph *g, size_t bound, bool *out);

/**
 * Builds the class-`class_` nilpotent Lie algebra; `budget` caps the free
 * Lie algebra dimension per degree.
 *
 * # Safety
 * `g` must be a live handle and `out` valid.
 */
enum LgStatus lg_algebra_build(const struct LgGraph *g,
                               size_t class_,
                               size_t budget,
                               struct LgAlgebra **out);

/**
 * # Safety
 * `a` must be null or a handle from [`lg_algebra_build`], not yet freed.
 */
void lg_algebra_free(struct LgAlgebra *a);

/**
 * # Safety
 * `a` must be a live handle and `out` valid.
 */
enum LgStatus lg_algebra_dim(const struct LgAlgebra *a, size_t *out);

/**
 * Dimension of degree `degree` (1-based); zero above the class.
 *
 * # Safety
 * `a` must be a live handle and `out` valid.
 */
enum LgStatus lg_algebra_graded_dim(const struct LgAlgebra *a, size_t degree, size_t *out);

/**
 * Basis and structure constants as JSON.
 *
 * # Safety
 * `a` must be a live handle and `out` valid; free the result with [`lg_string_free`].
 */
enum LgStatus lg_algebra_to_json(const struct LgAlgebra *a, char **out);

/**
 * Rational form for radicands `radicands[0..k]` whose sign flips act by the
 * quotient permutations `images[0..k]` (1-based cycle notation). `k = 0`
 * gives the standard form. `paper_basis` selects orbit-sum names and needs `k = 1`.
 *
 * # Safety
 * `a` must be a live handle; `radicands` and `images` must point to `k`
 * entries (either may be null when `k = 0`); `out` must be valid.
 */
enum LgStatus lg_form_compute(const struct LgAlgebra *a,
                              const int64_t *radicands,
                              const char *const *images,
                              size_t k,
                              bool paper_basis,
                              struct LgForm **out);

/**
 * # Safety
 * `f` must be null or a handle from [`lg_form_compute`], not yet freed.
 */
void lg_form_free(struct LgForm *f);

/**
 * # Safety
 * `f` must be a live handle and `out` valid.
 */
enum LgStatus lg_form_dim(const struct LgForm *f, size_t *out);

/**
 * # Safety
 * `f` must be a live handle and `out` valid.
 */
enum LgStatus lg_form_is_indecomposable(const struct LgForm *f, bool *out);

/**
 * Whether every radicand is positive, so the form is also a form of the real algebra.
 *
 * # Safety
 * `f` must be a live handle and `out` valid.
 */
enum LgStatus lg_form_is_real(const struct LgForm *f, bool *out);

/**
 * Basis and bracket table as aligned text.
 *
 * # Safety
 * `f` must be a live handle and `out` valid; free the result with [`lg_string_free`].
 */
enum LgStatus lg_form_to_text(const struct LgForm *f, char **out);

/**
 * # Safety
 * `f` must be a live handle and `out` valid; free the result with [`lg_string_free`].
 */
enum LgStatus lg_form_to_json(const struct LgForm *f, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LIEGRAPH_H */
