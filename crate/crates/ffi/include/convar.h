#ifndef CONVAR_H
#define CONVAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CvStatus {
  CV_STATUS_OK = 0,
  CV_STATUS_NULL_POINTER = 1,
  CV_STATUS_INVALID_UTF8 = 2,
  CV_STATUS_PARSE = 3,
  CV_STATUS_VALIDATION = 4,
  CV_STATUS_UNKNOWN_BUILTIN = 5,
  CV_STATUS_INVALID_ARGUMENT = 6,
  CV_STATUS_IO = 7,
  CV_STATUS_PANIC = 8,
} CvStatus;

// Outcome of a single check in a report.
typedef enum CvCheckStatus {
  CV_CHECK_STATUS_PASS = 0,
  CV_CHECK_STATUS_FAIL = 1,
  CV_CHECK_STATUS_NOT_APPLICABLE = 2,
  CV_CHECK_STATUS_ERROR = 3,
  CV_CHECK_STATUS_INFORMATIONAL = 4,
} CvCheckStatus;

// An enumerated permutation group.
typedef struct CvGroup CvGroup;

// The result of running a scenario.
typedef struct CvReport CvReport;

// A parsed scenario.
typedef struct CvScenario CvScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent failure on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *cv_last_error(void);

// Parses a scenario from JSON text.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum CvStatus cv_scenario_parse(const char *json, struct CvScenario **out);

// Loads a built-in scenario by name.
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum CvStatus cv_scenario_builtin(const char *name, struct CvScenario **out);

// Serializes a scenario to JSON. Free the result with [`cv_string_free`].
//
// # Safety
// `scenario` must come from this library; `out` must be writable.
enum CvStatus cv_scenario_to_json(const struct CvScenario *scenario, char **out);

// Runs every check of a scenario. `tolerance_scale` multiplies all
// tolerances; pass 1.0 for the defaults.
//
// # Safety
// `scenario` must come from this library; `out` must be writable.
enum CvStatus cv_scenario_run(const struct CvScenario *scenario,
                              double tolerance_scale,
                              struct CvReport **out);

// # Safety
// `scenario` must come from this library or be NULL, and not be used afterwards.
void cv_scenario_free(struct CvScenario *scenario);

// 0 when no check failed or errored, 1 otherwise, -1 for NULL.
//
// # Safety
// `report` must come from this library or be NULL.
int32_t cv_report_exit_code(const struct CvReport *report);

// # Safety
// `report` must come from this library or be NULL.
size_t cv_report_check_count(const struct CvReport *report);

// # Safety
// `report` must come from this library; `out` must be writable.
enum CvStatus cv_report_check_status(const struct CvReport *report,
                                     size_t index,
                                     enum CvCheckStatus *out);

// Serializes a report to JSON. Free the result with [`cv_string_free`].
//
// # Safety
// `report` must come from this library; `out` must be writable.
enum CvStatus cv_report_to_json(const struct CvReport *report, char **out);

// # Safety
// `report` must come from this library or be NULL, and not be used afterwards.
void cv_report_free(struct CvReport *report);

// # Safety
// `s` must be a string returned by this library or NULL.
void cv_string_free(char *s);

// Closes `count` generators on `degree` points. `images` holds the
// generators back to back as image arrays, `count * degree` entries.
//
// # Safety
// `images` must point to `count * degree` readable values (may be NULL
// when `count` is 0); `out` must be writable.
enum CvStatus cv_group_generate(size_t degree,
                                const size_t *images,
                                size_t count,
                                struct CvGroup **out);

// # Safety
// `group` must come from this library or be NULL.
size_t cv_group_order(const struct CvGroup *group);

// # Safety
// `group` must come from this library or be NULL.
bool cv_group_is_transitive(const struct CvGroup *group);

// # Safety
// `group` must come from this library or be NULL.
bool cv_group_has_trivial_isotropy(const struct CvGroup *group);

// # Safety
// `group` must come from this library or be NULL, and not be used afterwards.
void cv_group_free(struct CvGroup *group);

// Whether the variable with value labels `assignment` (one per point,
// `len` must equal the group degree) is permissible under `group`.
//
// # Safety
// `group` must come from this library; `assignment` must point to `len`
// readable values; `out` must be writable.
enum CvStatus cv_is_permissible(const struct CvGroup *group,
                                const size_t *assignment,
                                size_t len,
                                bool *out);

// Number of built-in scenario names.
size_t cv_builtin_count(void);

// Name of the built-in at `index` as a static string, or NULL.
const char *cv_builtin_name(size_t index);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONVAR_H */
