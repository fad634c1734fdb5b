/* C interface to the su22 verification library.
 *
 * Usage pattern:
 *   su22_campaign* c = NULL;
 *   if (su22_campaign_from_file("config.json", &c) != SU22_OK) { ... }
 *   su22_campaign_set_mode(c, "verify-periodic");
 *   su22_campaign_set_seed(c, 20240817u);
 *   int exit_code = 0;
 *   su22_campaign_run(c, &exit_code);
 *   puts(su22_campaign_report_json(c));
 *   su22_campaign_free(c);
 *
 * All functions are thread-compatible: distinct handles may be used from
 * distinct threads, one handle must not be shared without synchronisation.
 */
#ifndef SU22_H
#define SU22_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct su22_campaign su22_campaign;

typedef enum su22_status {
    SU22_OK = 0,
    SU22_ERR_USAGE = 1,    /* malformed config or argument */
    SU22_ERR_INTERNAL = 2, /* unexpected failure */
} su22_status;

const char* su22_version(void);

/* Construction; *out owns the handle on success. */
su22_status su22_campaign_new(su22_campaign** out);
su22_status su22_campaign_from_file(const char* path, su22_campaign** out);
su22_status su22_campaign_from_json(const char* json_text, su22_campaign** out);
void su22_campaign_free(su22_campaign* c);

/* Last error message for this handle (empty string when none). */
const char* su22_campaign_error(const su22_campaign* c);

/* Configuration. Mode is one of: verify-periodic, verify-open, spectrum,
 * solve-bae, match, audit-typos. Branch is plus, minus or both. */
su22_status su22_campaign_set_mode(su22_campaign* c, const char* mode);
su22_status su22_campaign_set_seed(su22_campaign* c, uint64_t seed);
su22_status su22_campaign_set_tolerance_scale(su22_campaign* c, double scale);
su22_status su22_campaign_set_branch(su22_campaign* c, const char* branch);
su22_status su22_campaign_set_output_dir(su22_campaign* c, const char* dir);

/* Runs the campaign. *exit_code receives 0 when every check passed, 1 when a
 * residual exceeded its threshold, 2 on usage errors. Returns SU22_OK when
 * the campaign executed (even with failing checks). */
su22_status su22_campaign_run(su22_campaign* c, int* exit_code);

/* Reports, valid until the next run or free. Also written to the output
 * directory when one is configured. */
const char* su22_campaign_report_json(const su22_campaign* c);
const char* su22_campaign_report_csv(const su22_campaign* c);

/* Row-level access after a run. */
size_t su22_campaign_num_checks(const su22_campaign* c);
su22_status su22_campaign_check(const su22_campaign* c, size_t index, const char** id,
                                double* residual, double* threshold, int* pass);

#ifdef __cplusplus
}
#endif

#endif /* SU22_H */
