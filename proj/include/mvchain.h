/* C interface to the mvchain engine: opaque job handles, integer status
 * codes, JSON in and out. All strings returned by accessors are owned by the
 * job and stay valid until mvc_job_destroy. */
#ifndef MVCHAIN_H
#define MVCHAIN_H

#ifdef __cplusplus
extern "C" {
#endif

#define MVC_OK 0       /* success / positive verdict */
#define MVC_NEGATIVE 1 /* negative verdict */
#define MVC_EPARSE 2   /* parse or validation error */
#define MVC_ECAP 3     /* resource cap exceeded */

typedef struct mvc_job mvc_job;

/* Creates a job from a JSON specification; the text is copied. Returns NULL
 * only on allocation failure. Parsing happens in mvc_job_run. */
mvc_job* mvc_job_create_from_json(const char* spec_text);

/* Reads the file and creates a job from its contents. Returns NULL when the
 * file cannot be read. */
mvc_job* mvc_job_create_from_file(const char* path);

/* Runs the job and returns a status code (MVC_*). Idempotent. */
int mvc_job_run(mvc_job* job);

/* Canonical JSON report; empty string before a successful run or after a
 * parse failure. */
const char* mvc_job_report(const mvc_job* job);

/* Human-readable report, same availability as mvc_job_report. */
const char* mvc_job_report_text(const mvc_job* job);

/* Last error message; empty string when the run succeeded. */
const char* mvc_job_last_error(const mvc_job* job);

void mvc_job_destroy(mvc_job* job);

const char* mvc_version(void);

#ifdef __cplusplus
}
#endif

#endif
