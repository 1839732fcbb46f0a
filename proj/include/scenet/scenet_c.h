/* C interface to the networked scenario-optimization library. All entry
 * points return a status code; handles are opaque and must be released with
 * the matching destroy call. The last error message is kept per thread. */
#ifndef SCENET_C_H
#define SCENET_C_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SCENET_API __declspec(dllexport)
#else
#define SCENET_API __attribute__((visibility("default")))
#endif

typedef enum scenet_status {
  SCENET_OK = 0,
  SCENET_ERR_INVALID_ARG = 1,
  SCENET_ERR_CONFIG = 2,
  SCENET_ERR_CONNECTIVITY = 3,
  SCENET_ERR_IO = 4,
  SCENET_ERR_NUMERIC = 5,
  SCENET_ERR_CHECKPOINT = 6,
  SCENET_ERR_INTERNAL = 7
} scenet_status;

SCENET_API const char* scenet_status_name(scenet_status status);

/* Message describing the most recent failure on the calling thread. */
SCENET_API const char* scenet_last_error(void);

/* Sample-complexity bounds for violation level eps, confidence delta and
 * decision dimension n. Outputs may be NULL when not wanted. */
SCENET_API scenet_status scenet_complexity(double eps, double delta, int n,
                                           long long* closed_form,
                                           long long* minimal_search,
                                           int* tail_holds_at_closed_form);

/* --- simulation runs ---------------------------------------------------- */

typedef struct scenet_run scenet_run_t;

SCENET_API scenet_status scenet_run_create(const char* config_path, scenet_run_t** out);
SCENET_API scenet_status scenet_run_execute(scenet_run_t* run);
SCENET_API scenet_status scenet_run_rounds(const scenet_run_t* run, long long* out);
SCENET_API scenet_status scenet_run_tolerance_met(const scenet_run_t* run, int* out);
/* final-round metrics: consensus spread, feasibility, objective, zeta sum */
SCENET_API scenet_status scenet_run_final_metrics(const scenet_run_t* run, double out[4]);
SCENET_API scenet_status scenet_run_write_trace(const scenet_run_t* run, const char* path);
SCENET_API scenet_status scenet_run_write_states(const scenet_run_t* run, const char* path);
SCENET_API scenet_status scenet_run_save_checkpoint(const scenet_run_t* run, const char* path);
SCENET_API scenet_status scenet_run_load_checkpoint(scenet_run_t* run, const char* path);
SCENET_API void scenet_run_destroy(scenet_run_t* run);

/* --- robust identification experiment ----------------------------------- */

typedef struct scenet_ident_params {
  const double* u; /* impulse response input, length n */
  const double* y; /* observed output, length n */
  int n;
  int nodes;
  int samples_per_node;
  uint64_t seed;
  const double* rho_grid;
  int rho_count;
  long long pd_rounds;
  long long rp_rounds;
} scenet_ident_params;

/* Fills rows with rho_count rows of (rho, r_ls, r_sc_pd, r_sc_rp). */
SCENET_API scenet_status scenet_ident_table(const scenet_ident_params* params,
                                            double* rows /* rho_count x 4 */);

#ifdef __cplusplus
}
#endif

#endif /* SCENET_C_H */
