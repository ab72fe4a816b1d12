#ifndef CHAMBERLAB_H
#define CHAMBERLAB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChamberlabStatus {
  CHAMBERLAB_STATUS_OK = 0,
  /**
   * The check ran and found failures; the report lists them.
   */
  CHAMBERLAB_STATUS_CHECK_FAILED = 1,
  CHAMBERLAB_STATUS_NULL_POINTER = 2,
  CHAMBERLAB_STATUS_INVALID_ARGUMENT = 3,
  CHAMBERLAB_STATUS_NOT_PRIME_POWER = 4,
  CHAMBERLAB_STATUS_UNSUPPORTED = 5,
  CHAMBERLAB_STATUS_INTERNAL = 6,
  CHAMBERLAB_STATUS_PANIC = 7,
} ChamberlabStatus;

/**
 * A loaded model and its maps.
 */
typedef struct ChamberlabModel ChamberlabModel;

/**
 * The outcome of one check.
 */
typedef struct ChamberlabReport ChamberlabReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null; do not free.
 */
const char *chamberlab_status_str(enum ChamberlabStatus status);

/**
 * Copy of the last error message on this thread, or null if there is none.
 * Free with [`chamberlab_string_free`].
 */
char *chamberlab_last_error(void);

/**
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void chamberlab_string_free(char *s);

/**
 * Loads a model: `kind` is `pg`, `gq`, `a3` or `thin`; `q` is used by `pg`
 * (0 for the default); `thin_type` is `A2` or `B2` for `thin` and may be null
 * otherwise.
 *
 * # Safety
 * String arguments are null or nul-terminated; `out` is writable.
 */
enum ChamberlabStatus chamberlab_model_load(const char *kind,
                                            uint32_t q,
                                            const char *thin_type,
                                            struct ChamberlabModel **out);

/**
 * # Safety
 * `model` is null or a live handle from [`chamberlab_model_load`].
 */
void chamberlab_model_free(struct ChamberlabModel *model);

/**
 * # Safety
 * `model` is a live handle; `out` is writable.
 */
enum ChamberlabStatus chamberlab_model_map_count(const struct ChamberlabModel *model, size_t *out);

/**
 * Model name such as `pg3`. Free with [`chamberlab_string_free`].
 *
 * # Safety
 * `model` is a live handle; `out` is writable.
 */
enum ChamberlabStatus chamberlab_model_name(const struct ChamberlabModel *model, char **out);

/**
 * Runs `check` (`main0`, `main0-local`, `main1`, `main2`, `main3`, `axioms`
 * or `beukjeeven`) on every map of the model. Returns `Ok` or `CheckFailed`
 * with a report in both cases.
 *
 * # Safety
 * `model` is a live handle; `check` is nul-terminated; `out` is writable.
 */
enum ChamberlabStatus chamberlab_verify(const struct ChamberlabModel *model,
                                        const char *check,
                                        struct ChamberlabReport **out);

/**
 * Absolute points of every duality of PG(2,q), `q ≤ 5`.
 *
 * # Safety
 * `out` is writable.
 */
enum ChamberlabStatus chamberlab_scan_dualities(uint32_t q, struct ChamberlabReport **out);

/**
 * Absolute point counts and collinearity for the polarities of PG(2,q).
 *
 * # Safety
 * `out` is writable.
 */
enum ChamberlabStatus chamberlab_verify_polarities(uint32_t q, struct ChamberlabReport **out);

/**
 * # Safety
 * `report` is null or a live handle.
 */
void chamberlab_report_free(struct ChamberlabReport *report);

/**
 * # Safety
 * `report` is a live handle; `out` is writable.
 */
enum ChamberlabStatus chamberlab_report_total(const struct ChamberlabReport *report, uint64_t *out);

/**
 * # Safety
 * `report` is a live handle; `out` is writable.
 */
enum ChamberlabStatus chamberlab_report_failure_count(const struct ChamberlabReport *report,
                                                      size_t *out);

/**
 * The report as JSON. Free with [`chamberlab_string_free`].
 *
 * # Safety
 * `report` is a live handle; `out` is writable.
 */
enum ChamberlabStatus chamberlab_report_json(const struct ChamberlabReport *report, char **out);

/**
 * Normal form of `word` in the Coxeter system given by `matrix` (the text of
 * a matrix file). Free the result with [`chamberlab_string_free`].
 *
 * # Safety
 * `matrix` and `word` are nul-terminated; `out` is writable.
 */
enum ChamberlabStatus chamberlab_coxeter_reduce(const char *matrix, const char *word, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHAMBERLAB_H */
