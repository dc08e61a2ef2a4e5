#ifndef ORBICALC_H
#define ORBICALC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum OrbStatus {
  ORB_STATUS_OK = 0,
  ORB_STATUS_NULL_POINTER = 1,
  ORB_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or a field that fails validation.
   */
  ORB_STATUS_INPUT_ERROR = 3,
  /**
   * A mathematical check failed (for example a non-equivariant lift).
   */
  ORB_STATUS_MATH_ERROR = 4,
  /**
   * The report was produced but one of its checks failed.
   */
  ORB_STATUS_CHECK_FAILED = 5,
  ORB_STATUS_PANIC = 6,
} OrbStatus;

/**
 * A linear orbifold chart.
 */
typedef struct OrbChart OrbChart;

/**
 * An equivariant map germ between two charts.
 */
typedef struct OrbGerm OrbGerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string owned by the library.
 */
const char *orb_version(void);

/**
 * The message of the last failed call on this thread, or null. The caller
 * owns the returned string.
 */
char *orb_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void orb_string_free(char *s);

/**
 * Runs a command (`analyze`, `strata`, `obstruct`, `sard`, `classify1`,
 * `retraction`) on a JSON scenario. On `Ok` or `CheckFailed` the report is
 * stored in `*report_out` and must be released with [`orb_string_free`].
 *
 * # Safety
 * `command` and `scenario_json` are NUL-terminated; `report_out` is writable.
 */
enum OrbStatus orb_run(const char *command, const char *scenario_json, char **report_out);

/**
 * Builds a chart from `{"dim", "generators", "boundary"}` (or a scenario
 * with a `"chart"` key).
 *
 * # Safety
 * `json` is NUL-terminated; `out` is writable.
 */
enum OrbStatus orb_chart_from_json(const char *json, struct OrbChart **out);

/**
 * # Safety
 * `chart` is null or a live handle; it must not be used afterwards.
 */
void orb_chart_free(struct OrbChart *chart);

/**
 * # Safety
 * `chart` is a live handle; `dim` and `order` are writable.
 */
enum OrbStatus orb_chart_shape(const struct OrbChart *chart, size_t *dim, size_t *order);

/**
 * Number of singular strata, whether one of them is an interior stratum
 * of codimension 1, and whether some index-2 subgroup fixes a nonzero vector.
 *
 * # Safety
 * `chart` is a live handle; the output pointers are writable.
 */
enum OrbStatus orb_chart_singular(const struct OrbChart *chart,
                                  size_t *singular_strata,
                                  bool *interior_codim1,
                                  bool *forbidden_index2);

/**
 * The full strata report as JSON.
 *
 * # Safety
 * `chart` is a live handle; `report_out` is writable.
 */
enum OrbStatus orb_chart_strata_json(const struct OrbChart *chart, char **report_out);

/**
 * Builds a germ from a germ scenario (`source`, `target`, `lift`, ...).
 * Fails with `MathError` when the lift is not equivariant.
 *
 * # Safety
 * `json` is NUL-terminated; `out` is writable.
 */
enum OrbStatus orb_germ_from_json(const char *json, struct OrbGerm **out);

/**
 * # Safety
 * `germ` is null or a live handle; it must not be used afterwards.
 */
void orb_germ_free(struct OrbGerm *germ);

/**
 * Order of `N = ker theta`, rank of the invariant projection `A_x` at the
 * base point, and whether its exact identities all hold.
 *
 * # Safety
 * `germ` is a live handle; the output pointers are writable.
 */
enum OrbStatus orb_germ_projection(const struct OrbGerm *germ,
                                   size_t *n_order,
                                   size_t *rank,
                                   bool *identities_hold);

/**
 * The `analyze` report for the scenario the germ was built from.
 *
 * # Safety
 * `germ` is a live handle; `report_out` is writable.
 */
enum OrbStatus orb_germ_analyze_json(const struct OrbGerm *germ, char **report_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBICALC_H */
