#ifndef JETCALC_H
#define JETCALC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum JcStatus {
  JC_STATUS_OK = 0,
  JC_STATUS_NULL_POINTER = 1,
  JC_STATUS_INVALID_UTF8 = 2,
  JC_STATUS_PARSE = 3,
  /**
   * Order or degree limit exceeded.
   */
  JC_STATUS_LIMIT = 4,
  /**
   * Chart mismatch, unknown catalog name, wrong kind of object.
   */
  JC_STATUS_INVALID = 5,
  JC_STATUS_PANIC = 6,
} JcStatus;

typedef enum JcChart {
  /**
   * Coordinates `x, y`.
   */
  JC_CHART_ELLIPTIC = 0,
  /**
   * Coordinates `xi, eta`.
   */
  JC_CHART_HYPERBOLIC = 1,
  /**
   * Coordinates `X, Y`.
   */
  JC_CHART_INTERMEDIATE = 2,
} JcChart;

typedef enum JcMap {
  JC_MAP_CANONICAL = 0,
  JC_MAP_ED = 1,
  JC_MAP_ED_LITERAL = 2,
  JC_MAP_G = 3,
} JcMap;

/**
 * Opaque generating section (affine in the jets).
 */
typedef struct JcExpr JcExpr;

/**
 * Opaque C-differential operator.
 */
typedef struct JcOp JcOp;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *jc_last_error(void);

/**
 * Library version as a static string.
 */
const char *jc_version(void);

/**
 * # Safety
 * `s` must be null or come from this library.
 */
void jc_string_free(char *s);

/**
 * # Safety
 * `e` must be null or a live handle from this library.
 */
void jc_expr_free(struct JcExpr *e);

/**
 * # Safety
 * `o` must be null or a live handle from this library.
 */
void jc_op_free(struct JcOp *o);

/**
 * Parses a section such as `"-1*u[1,0] + u[0,1]"` in the given chart.
 *
 * # Safety
 * `src` must be a nul-terminated string; `out` must be writable.
 */
enum JcStatus jc_expr_parse(const char *src, enum JcChart chart, struct JcExpr **out);

/**
 * # Safety
 * `src` must be a nul-terminated string; `out` must be writable.
 */
enum JcStatus jc_op_parse(const char *src, enum JcChart chart, struct JcOp **out);

/**
 * Canonical text form.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum JcStatus jc_expr_print(const struct JcExpr *e, char **out);

/**
 * # Safety
 * `o` must be a live handle; `out` must be writable.
 */
enum JcStatus jc_op_print(const struct JcOp *o, char **out);

/**
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum JcStatus jc_expr_to_json(const struct JcExpr *e, char **out);

/**
 * # Safety
 * `o` must be a live handle; `out` must be writable.
 */
enum JcStatus jc_op_to_json(const struct JcOp *o, char **out);

/**
 * Reads a JSON document holding an expression.
 *
 * # Safety
 * `src` must be a nul-terminated string; `out` must be writable.
 */
enum JcStatus jc_expr_from_json(const char *src, struct JcExpr **out);

/**
 * # Safety
 * `src` must be a nul-terminated string; `out` must be writable.
 */
enum JcStatus jc_op_from_json(const char *src, struct JcOp **out);

/**
 * Chart of an expression; `Elliptic` for a null handle.
 *
 * # Safety
 * `e` must be null or a live handle.
 */
enum JcChart jc_expr_chart(const struct JcExpr *e);

/**
 * # Safety
 * `a` and `b` must be live handles.
 */
bool jc_expr_equal(const struct JcExpr *a, const struct JcExpr *b);

/**
 * Catalog section by name, including `classical(c1,c2,c3,c4)`.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum JcStatus jc_catalog_expr(const char *name, struct JcExpr **out);

/**
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum JcStatus jc_catalog_op(const char *name, struct JcOp **out);

/**
 * Symmetry test on the equation of `eq`. Writes the verdict and, when
 * `residual` is non-null, the restricted residual.
 *
 * # Safety
 * `phi` must be a live handle; `verdict` must be writable; `residual` may be null.
 */
enum JcStatus jc_is_symmetry(enum JcChart eq,
                             const struct JcExpr *phi,
                             bool *verdict,
                             struct JcExpr **residual);

/**
 * Restriction of a section to the internal coordinates of `eq`.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum JcStatus jc_restrict(enum JcChart eq, const struct JcExpr *e, struct JcExpr **out);

/**
 * Hyperbolic section to elliptic section.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum JcStatus jc_theta(const struct JcExpr *e, bool literal, struct JcExpr **out);

/**
 * Elliptic section to hyperbolic section.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum JcStatus jc_theta_prime(const struct JcExpr *e, bool literal, struct JcExpr **out);

/**
 * Jacobi bracket of two sections of the same chart (unrestricted).
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum JcStatus jc_bracket(const struct JcExpr *a, const struct JcExpr *b, struct JcExpr **out);

/**
 * Applies an operator to a section.
 *
 * # Safety
 * `o`, `e` must be live handles; `out` must be writable.
 */
enum JcStatus jc_op_apply(const struct JcOp *o, const struct JcExpr *e, struct JcExpr **out);

/**
 * Prolongation block of order `k`, its inverse and the block identity checks
 * for orders `0..=k`, as a JSON document.
 *
 * # Safety
 * `out` must be writable.
 */
enum JcStatus jc_blocks_json(enum JcMap map, uint32_t k, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JETCALC_H */
