#ifndef PLANESYM_H
#define PLANESYM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum PsStatus {
  PS_STATUS_OK = 0,
  PS_STATUS_NULL_POINTER = 1,
  PS_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed metric or vector text, or an unknown fixture name.
   */
  PS_STATUS_INPUT = 3,
  PS_STATUS_IO = 4,
  PS_STATUS_INVALID_CONFIG = 5,
  /**
   * A panic was caught at the boundary.
   */
  PS_STATUS_INTERNAL = 6,
} PsStatus;

/**
 * Curvature class of the Riemann matrix.
 */
typedef enum PsClass {
  PS_CLASS_A = 0,
  PS_CLASS_B = 1,
  PS_CLASS_C = 2,
  PS_CLASS_D = 3,
  PS_CLASS_O = 4,
} PsClass;

/**
 * Opaque metric handle.
 */
typedef struct PsMetric PsMetric;

/**
 * Opaque vector field handle.
 */
typedef struct PsVector PsVector;

typedef struct PsConfig {
  size_t samples;
  double tol;
  double rank_tol;
  uint64_t seed;
} PsConfig;

typedef struct PsClassification {
  size_t generic_rank;
  enum PsClass curvature_class;
  size_t kernel_dim;
  /**
   * Whether every point of generic rank has the same class.
   */
  bool stable;
} PsClassification;

/**
 * Collineation verdicts with the largest residual of each test.
 */
typedef struct PsCollineation {
  bool is_killing;
  bool is_homothetic;
  /**
   * Meaningful only when `is_homothetic`.
   */
  double homothety_constant;
  bool is_affine;
  bool is_cc;
  bool is_proper_cc;
  double killing_residual;
  double affine_residual;
  double cc_residual;
} PsCollineation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *ps_last_error(void);

/**
 * Library version as a static string.
 */
const char *ps_version(void);

/**
 * Default sampling and tolerance settings.
 */
struct PsConfig ps_config_default(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ps_string_free(char *s);

/**
 * Parses the text of a metric file.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum PsStatus ps_metric_parse(const char *src, struct PsMetric **out);

/**
 * Reads and parses a metric file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum PsStatus ps_metric_from_file(const char *path, struct PsMetric **out);

/**
 * Built-in fixture by name, e.g. `"Case27"` (case-insensitive).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum PsStatus ps_metric_fixture(const char *name, struct PsMetric **out);

/**
 * # Safety
 * `m` must come from a metric constructor and not have been freed.
 */
void ps_metric_free(struct PsMetric *m);

/**
 * Parses `X0 = ...` lines; components may use the metric's parameters.
 *
 * # Safety
 * `m` must be a live metric, `src` a NUL-terminated string, `out` writable.
 */
enum PsStatus ps_vector_parse(const struct PsMetric *m, const char *src, struct PsVector **out);

/**
 * # Safety
 * `v` must come from [`ps_vector_parse`] and not have been freed.
 */
void ps_vector_free(struct PsVector *v);

/**
 * Generic rank, class and kernel dimension. `cfg` may be null for defaults.
 *
 * # Safety
 * `m` must be a live metric; `cfg` null or valid; `out` writable.
 */
enum PsStatus ps_classify(const struct PsMetric *m,
                          const struct PsConfig *cfg,
                          struct PsClassification *out);

/**
 * Killing, homothety, affine and CC verdicts for `v` on `m`.
 *
 * # Safety
 * `m` and `v` must be live handles; `cfg` null or valid; `out` writable.
 */
enum PsStatus ps_check_vector(const struct PsMetric *m,
                              const struct PsVector *v,
                              const struct PsConfig *cfg,
                              struct PsCollineation *out);

/**
 * Full classification report as JSON, including the case match.
 *
 * # Safety
 * `m` must be a live metric; `cfg` null or valid; `out` writable. The
 * string must be released with [`ps_string_free`].
 */
enum PsStatus ps_classify_json(const struct PsMetric *m, const struct PsConfig *cfg, char **out);

/**
 * Collineation report as JSON.
 *
 * # Safety
 * As for [`ps_check_vector`]; the string must be released with
 * [`ps_string_free`].
 */
enum PsStatus ps_check_vector_json(const struct PsMetric *m,
                                   const struct PsVector *v,
                                   const struct PsConfig *cfg,
                                   char **out);

/**
 * Runs every claim check on the built-in fixtures. `all_agree` receives
 * whether no claim is DISAGREE; `json` receives the report.
 *
 * # Safety
 * `cfg` null or valid; `all_agree` and `json` writable. The string must be
 * released with [`ps_string_free`].
 */
enum PsStatus ps_verify_paper(const struct PsConfig *cfg, bool *all_agree, char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANESYM_H */
