/* slipns: half-plane Navier-Stokes solver with Navier-slip boundary
 * conditions, vorticity formulation, Green-function semigroup. C API over
 * opaque handles; all functions return a status code and never throw. */
#ifndef SLIPNS_H
#define SLIPNS_H

#include <stddef.h>

#if defined(_WIN32)
#define SLIPNS_API __declspec(dllexport)
#else
#define SLIPNS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct slipns_run slipns_run; /* opaque run handle */

typedef enum slipns_status {
    SLIPNS_OK = 0,
    SLIPNS_ERR_INVALID_ARGUMENT = 1,
    SLIPNS_ERR_DOMAIN = 2,
    SLIPNS_ERR_BRANCH_CUT = 3,
    SLIPNS_ERR_NOT_CONVERGED = 4,
    SLIPNS_ERR_IO = 5,
    SLIPNS_ERR_INTERNAL = 6
} slipns_status;

SLIPNS_API const char* slipns_version(void);

SLIPNS_API slipns_status slipns_run_create(slipns_run** out);
SLIPNS_API void slipns_run_destroy(slipns_run* run);

/* flat key = value configuration file; later calls override earlier keys */
SLIPNS_API slipns_status slipns_load_config(slipns_run* run, const char* path);
SLIPNS_API slipns_status slipns_set_option(slipns_run* run, const char* key, const char* value);

/* experiment: kernel-check | stokes-run | ns-run | inviscid-rate |
 * bound-check | oracle-check. out_dir (optional) receives manifest, CSV and
 * curve files. */
SLIPNS_API slipns_status slipns_execute(slipns_run* run, const char* experiment,
                                        const char* out_dir);

SLIPNS_API int slipns_row_count(const slipns_run* run);
SLIPNS_API int slipns_row_quantity(const slipns_run* run, int idx, char* buf, size_t cap);
SLIPNS_API int slipns_row_verdict(const slipns_run* run, int idx, char* buf, size_t cap);
SLIPNS_API slipns_status slipns_row_values(const slipns_run* run, int idx, double* value,
                                           double* tolerance, double* nu, double* beta, double* t);

/* 1 if every verdict row passed, 0 otherwise */
SLIPNS_API int slipns_passed(const slipns_run* run);
SLIPNS_API const char* slipns_last_error(const slipns_run* run);

#ifdef __cplusplus
}
#endif

#endif /* SLIPNS_H */
