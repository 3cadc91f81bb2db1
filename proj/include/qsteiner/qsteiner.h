#ifndef QSTEINER_QSTEINER_H
#define QSTEINER_QSTEINER_H

/* C interface to libqsteiner. Strings returned through char** are owned by
   the caller and released with qs_string_free. On any status other than
   QS_OK, qs_last_error() describes the failure (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(QSTEINER_BUILDING_LIBRARY)
#define QS_API __attribute__((visibility("default")))
#else
#define QS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qs_status {
    QS_OK = 0,
    QS_ERR_INVALID_ARGUMENT = 1,
    QS_ERR_INADMISSIBLE = 2,
    QS_ERR_GUARD = 3,
    QS_ERR_PARSE = 4,
    QS_ERR_IO = 5,
    QS_ERR_CHECK_FAILED = 6,
    QS_ERR_INTERNAL = 7
} qs_status;

typedef struct qs_params qs_params;
typedef struct qs_design_set qs_design_set;

QS_API const char* qs_version(void);
QS_API const char* qs_last_error(void);
QS_API const char* qs_status_name(qs_status status);
QS_API void qs_string_free(char* s);

/* Gaussian binomial [n k]_q as a decimal string (0 outside 0 <= k <= n). */
QS_API qs_status qs_gauss_binom(long n, long k, unsigned long q, char** out);

QS_API qs_status qs_params_create(unsigned t, unsigned k, unsigned n, unsigned long q, qs_params** out);
QS_API void qs_params_destroy(qs_params* p);
/* *admissible is 1 or 0; *reason (optional, may be NULL) explains a 0. */
QS_API qs_status qs_params_admissible(const qs_params* p, unsigned long lambda, int* admissible, char** reason);
/* [n k]_q - [n t]_q + 1 as a decimal string. */
QS_API qs_status qs_dimension_formula(const qs_params* p, char** out);

/* All labeled systems S_q(t,k,n), or up to `count` sampled ones. */
QS_API qs_status qs_design_set_enumerate(const qs_params* p, size_t max_designs, qs_design_set** out);
QS_API qs_status qs_design_set_sample(const qs_params* p, uint64_t seed, size_t count, qs_design_set** out);
QS_API void qs_design_set_destroy(qs_design_set* s);
QS_API size_t qs_design_set_size(const qs_design_set* s);
/* Design file text for the whole set. */
QS_API qs_status qs_design_set_to_json(const qs_design_set* s, char** out);
/* Exact rank of the incidence matrix (k-spaces x designs). */
QS_API qs_status qs_design_set_rank(const qs_design_set* s, size_t* rank);

/* Runners behind the command line tool. Options are JSON objects; the report
   is a JSON document. QS_ERR_CHECK_FAILED means the run finished and the
   report holds at least one failed check. */

/* options: {"q":[...], "max_n":N, "format":"json"|"csv"}. Rows are written to
   rows_path; the report is the summary. */
QS_API qs_status qs_run_identities(const char* options_json, const char* rows_path, char** report);
/* options: {"n":N, "k":K, "q":Q} */
QS_API qs_status qs_run_scheme(const char* options_json, char** report);
/* options: {"t","k","n","q", "sample":bool, "seed":S, "count":C} */
QS_API qs_status qs_run_dimension(const char* options_json, char** report);
/* Same options; *designs receives the design file text. */
QS_API qs_status qs_run_enumerate(const char* options_json, char** designs, char** report);
QS_API qs_status qs_verify_design_text(const char* design_file_text, char** report);

#ifdef __cplusplus
}
#endif

#endif
