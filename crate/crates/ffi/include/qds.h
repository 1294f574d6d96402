#ifndef QDS_H
#define QDS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QdsStatus {
  QDS_STATUS_OK = 0,
  QDS_STATUS_NULL_POINTER = 1,
  QDS_STATUS_INVALID_UTF8 = 2,
  QDS_STATUS_PARSE = 3,
  QDS_STATUS_CONFIG = 4,
  QDS_STATUS_ENGINE = 5,
  QDS_STATUS_IO = 6,
  QDS_STATUS_PANIC = 7,
} QdsStatus;

// Opaque element of the quantum phase space.
typedef struct QdsElement QdsElement;

// Opaque verification report.
typedef struct QdsReport QdsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer stays
// valid until the next library call on the same thread.
const char *qds_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void qds_string_free(char *s);

// Parses an element from its canonical text form.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum QdsStatus qds_element_parse(const char *text, struct QdsElement **out);

// # Safety
// `e` must be NULL or a live handle from this library.
void qds_element_free(struct QdsElement *e);

// Canonical text form; release with `qds_string_free`.
//
// # Safety
// `e` must be a live handle; `out` must be writable.
enum QdsStatus qds_element_to_string(const struct QdsElement *e, char **out);

// # Safety
// `e` must be a live handle; `out` must be writable.
enum QdsStatus qds_element_is_zero(const struct QdsElement *e, bool *out);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum QdsStatus qds_element_add(const struct QdsElement *a,
                               const struct QdsElement *b,
                               struct QdsElement **out);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum QdsStatus qds_element_sub(const struct QdsElement *a,
                               const struct QdsElement *b,
                               struct QdsElement **out);

// Product in normal order.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum QdsStatus qds_element_mul(const struct QdsElement *a,
                               const struct QdsElement *b,
                               struct QdsElement **out);

// Image of the generator `u_i` (`which = 0`) or `m_i` (`which = 1`).
//
// # Safety
// `out` must be writable.
enum QdsStatus qds_generator_image(uint32_t which, uint32_t i, struct QdsElement **out);

// `ad(I_n)(x)`.
//
// # Safety
// `x` must be a live handle; `out` must be writable.
enum QdsStatus qds_ad_integral(uint32_t n, const struct QdsElement *x, struct QdsElement **out);

// Runs the verification suites described by a JSON object with optional keys
// `suites` (array of names), `n_max`, `order`, `rtt_n`, `flow_n`, `flow_j`,
// `cache_dir`. Failing checks are part of the report, not an error status.
//
// # Safety
// `config_json` must be a NUL-terminated string; `out` must be writable.
enum QdsStatus qds_run(const char *config_json, struct QdsReport **out);

// # Safety
// `r` must be NULL or a live handle from this library.
void qds_report_free(struct QdsReport *r);

// # Safety
// `r` must be a live handle; `out` must be writable.
enum QdsStatus qds_report_all_passed(const struct QdsReport *r, bool *out);

// Counts of checks: total, passed, failed.
//
// # Safety
// `r` must be a live handle; the three outputs must be writable.
enum QdsStatus qds_report_counts(const struct QdsReport *r,
                                 size_t *total,
                                 size_t *passed,
                                 size_t *failed);

// The report as JSON; release with `qds_string_free`.
//
// # Safety
// `r` must be a live handle; `out` must be writable.
enum QdsStatus qds_report_json(const struct QdsReport *r, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDS_H */
