#ifndef ORACLAB_H
#define ORACLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(ORACLAB_BUILDING)
#define ORACLAB_API __attribute__((visibility("default")))
#else
#define ORACLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oraclab_status {
    ORACLAB_OK = 0,
    ORACLAB_E_INVALID_ARGUMENT = 1,
    ORACLAB_E_UNSUPPORTED_CASE = 2,
    ORACLAB_E_DOMAIN = 3,
    ORACLAB_E_BUDGET = 4,
    ORACLAB_E_NOT_CONVERGED = 5,
    ORACLAB_E_SUBSPACE_EXHAUSTED = 6,
    ORACLAB_E_IO = 7,
    ORACLAB_E_INTERNAL = 8
} oraclab_status;

/* Message of the last failing call on this thread ("" if none). */
ORACLAB_API const char* oraclab_last_error(void);
ORACLAB_API const char* oraclab_status_name(oraclab_status s);
ORACLAB_API const char* oraclab_version(void);
/* Frees strings returned through char** out-parameters. */
ORACLAB_API void oraclab_free_string(char* s);

/* ------------------------------------------------------------ parameters */

typedef struct oraclab_params {
    int p;
    double nu;
    int q;
    double sigma;
    double holder_h;
    int dim;
} oraclab_params;

typedef enum oraclab_case { ORACLAB_HIGH_Q = 1, ORACLAB_LOW_Q = 2 } oraclab_case;

typedef struct oraclab_schedule {
    double rho;
    double beta;
    double delta;
    double c_q;
    double cap_d;
    double cap_c;
    int budget_t;
} oraclab_schedule;

ORACLAB_API oraclab_status oraclab_classify(const oraclab_params* params, oraclab_case* out);
ORACLAB_API oraclab_status oraclab_sigma_tilde(const oraclab_params* params, double* out);
ORACLAB_API oraclab_status oraclab_domain_radius(const oraclab_params* params, double* out);
ORACLAB_API oraclab_status oraclab_schedule_case1(const oraclab_params* params, int budget_t, oraclab_schedule* out);
ORACLAB_API oraclab_status oraclab_lower_bound_case1(const oraclab_params* params, double eps, double* out);
ORACLAB_API oraclab_status oraclab_lower_bound_case2(const oraclab_params* params, double eps, double* kappa_term,
                                                     double* loglog_term);
/* out = {num, den} of the exponent on H/sigma, then {num, den} on sigma/eps */
ORACLAB_API oraclab_status oraclab_case1_exponents(int p, double nu, int q, long long out[4]);
ORACLAB_API oraclab_status oraclab_case2_exponent(int p, double nu, long long out[2]);
ORACLAB_API oraclab_status oraclab_min_r(double beta, double sigma, int q, int budget_t, double* out);
ORACLAB_API oraclab_status oraclab_gap_lower_bound(const oraclab_params* params, int budget_t, double* out);
/* least-squares slope of log T against log(1/eps) */
ORACLAB_API oraclab_status oraclab_fit_scaling(const double* eps, const double* steps, size_t n, double* slope,
                                               double* stderr_slope);

/* ------------------------------------------------------ truncated normal */

ORACLAB_API oraclab_status oraclab_box_mass(int dim, double* out);
ORACLAB_API double oraclab_marginal_cdf(double t);
ORACLAB_API oraclab_status oraclab_ks_statistic(const double* samples, size_t n, double* out);

typedef struct oraclab_sampler oraclab_sampler;
ORACLAB_API oraclab_status oraclab_sampler_create(int dim, double scale, uint64_t seed, uint64_t stream,
                                                  oraclab_sampler** out);
ORACLAB_API void oraclab_sampler_destroy(oraclab_sampler* s);
/* writes dim values */
ORACLAB_API oraclab_status oraclab_sampler_draw(oraclab_sampler* s, double* out);

/* -------------------------------------------------- case-1 hard instance */

typedef struct oraclab_case1 oraclab_case1;
ORACLAB_API oraclab_status oraclab_case1_create(const oraclab_params* params, int budget_t, int samples,
                                                uint64_t seed, oraclab_case1** out);
ORACLAB_API void oraclab_case1_destroy(oraclab_case1* h);
/* Advances the adversary on x, then answers; grad receives dim values. */
ORACLAB_API oraclab_status oraclab_case1_query(oraclab_case1* h, const double* x, double* value, double* value_se,
                                               double* grad, double* grad_se);
/* current F_t without advancing */
ORACLAB_API oraclab_status oraclab_case1_value(const oraclab_case1* h, const double* x, double* value,
                                               double* value_se);
ORACLAB_API int oraclab_case1_step(const oraclab_case1* h);
/* 0-based coordinates and signs committed so far; each array holds step() entries */
ORACLAB_API oraclab_status oraclab_case1_pieces(const oraclab_case1* h, int* alpha, int* xi);
ORACLAB_API oraclab_status oraclab_case1_schedule(const oraclab_case1* h, oraclab_schedule* out);
ORACLAB_API oraclab_status oraclab_case1_surrogate_optimum(const oraclab_case1* h, double* out);

/* --------------------------------------------------------- chain instance */

typedef struct oraclab_chain oraclab_chain;
typedef enum oraclab_solver { ORACLAB_SOLVER_NEWTON = 0, ORACLAB_SOLVER_RECURRENCE = 1 } oraclab_solver;

typedef struct oraclab_check {
    char name[48];
    int status; /* 0 pass, 1 fail, 2 not applicable */
    double slack;
} oraclab_check;

ORACLAB_API oraclab_status oraclab_chain_create(const oraclab_params* params, double gamma, int chain_len,
                                                uint64_t seed, oraclab_chain** out);
ORACLAB_API oraclab_status oraclab_chain_create_tilde(int p, double nu, int q, double gamma, double sigma_t,
                                                      int chain_len, int dim, uint64_t seed, oraclab_chain** out);
ORACLAB_API void oraclab_chain_destroy(oraclab_chain* h);
ORACLAB_API int oraclab_chain_len(const oraclab_chain* h);
ORACLAB_API int oraclab_chain_dim(const oraclab_chain* h);
/* y and grad have chain_len entries */
ORACLAB_API oraclab_status oraclab_chain_tilde_value(const oraclab_chain* h, const double* y, double* out);
ORACLAB_API oraclab_status oraclab_chain_tilde_gradient(const oraclab_chain* h, const double* y, double* out);
/* y receives chain_len entries; residual may be NULL */
ORACLAB_API oraclab_status oraclab_chain_solve(const oraclab_chain* h, oraclab_solver solver, double* y,
                                               double* residual);
/* runs the coordinate-structure checks on the solver's optimum */
ORACLAB_API oraclab_status oraclab_chain_verify(const oraclab_chain* h, oraclab_solver solver, oraclab_check* out,
                                                int capacity, int* count, int* all_passed);
/* queried is n_queried x dim row-major; out receives the new unit vector (dim entries) */
ORACLAB_API oraclab_status oraclab_chain_basis_next(oraclab_chain* h, const double* queried, int n_queried,
                                                    double* out);
ORACLAB_API oraclab_status oraclab_chain_use_identity_basis(oraclab_chain* h);
/* full function, needs the complete basis */
ORACLAB_API oraclab_status oraclab_chain_value(const oraclab_chain* h, const double* x, double* out);
ORACLAB_API oraclab_status oraclab_chain_gradient(const oraclab_chain* h, const double* x, double* out);
ORACLAB_API oraclab_status oraclab_chain_save(const oraclab_chain* h, const char* path);
ORACLAB_API oraclab_status oraclab_chain_load(const char* path, oraclab_chain** out);

/* ---------------------------------------------------------------- suites */

typedef struct oraclab_check_row {
    const char* name;
    int passed;
    double worst_ratio;
    double slack_used;
    long samples;
    uint64_t seed;
    const char* regime;
} oraclab_check_row;

typedef void (*oraclab_row_callback)(const oraclab_check_row* row, void* user);

typedef struct oraclab_suite_config {
    uint64_t seed;
    /* sample-check */
    long draws;
    long box_draws;
    int sample_dim;
    /* verify-case1 */
    int p;
    double nu;
    int q;
    double sigma;
    double holder_h;
    int dim;
    int samples;
    /* verify-case1 and verify-case2 */
    int pairs;
    /* verify-case2 */
    int instances;
    int max_len;
} oraclab_suite_config;

ORACLAB_API void oraclab_suite_defaults(oraclab_suite_config* cfg);
ORACLAB_API const char* oraclab_check_csv_header(void);
/* Each call reports every row through cb (may be NULL) and sets all_passed. */
ORACLAB_API oraclab_status oraclab_run_sample_check(const oraclab_suite_config* cfg, oraclab_row_callback cb,
                                                    void* user, int* all_passed);
ORACLAB_API oraclab_status oraclab_run_verify_case1(const oraclab_suite_config* cfg, oraclab_row_callback cb,
                                                    void* user, int* all_passed);
ORACLAB_API oraclab_status oraclab_run_verify_case2(const oraclab_suite_config* cfg, oraclab_row_callback cb,
                                                    void* user, int* all_passed);

/* ------------------------------------------------------------------ race */

typedef enum oraclab_instance { ORACLAB_INSTANCE_CASE1 = 0, ORACLAB_INSTANCE_CASE2 = 1 } oraclab_instance;

typedef struct oraclab_race_config {
    oraclab_instance instance;
    const char* algorithms; /* comma-separated names, or "all" / NULL */
    int p;
    double nu;
    int q;
    double sigma;
    double holder_h;
    int dim;
    int steps;     /* 0: case1 uses dim, case2 uses 8 */
    int samples;
    double gamma;  /* case2 */
    int chain_len; /* case2, 0: steps + 1 */
    uint64_t seed;
} oraclab_race_config;

ORACLAB_API void oraclab_race_defaults(oraclab_race_config* cfg);
/* Run records as CSV in *csv; per-step points in *trajectory if non-NULL.
   Release both with oraclab_free_string. */
ORACLAB_API oraclab_status oraclab_race(const oraclab_race_config* cfg, char** csv, char** trajectory);

#ifdef __cplusplus
}
#endif

#endif
