/* Compiles the public header as C and exercises handles and error codes. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "oraclab/oraclab.h"

static int failures = 0;

#define EXPECT(cond)                                                 \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                              \
        }                                                            \
    } while (0)

static void count_row(const oraclab_check_row* row, void* user) {
    (void)row;
    ++*(int*)user;
}

int main(void) {
    oraclab_params bad = {1, 1.0, 2, 1.0, 1.0, 4};
    oraclab_case c;
    EXPECT(oraclab_classify(&bad, &c) == ORACLAB_E_UNSUPPORTED_CASE);
    EXPECT(strlen(oraclab_last_error()) > 0);
    EXPECT(oraclab_classify(NULL, &c) == ORACLAB_E_INVALID_ARGUMENT);

    oraclab_params hq = {1, 1.0, 3, 1.0, 1000.0, 9};
    EXPECT(oraclab_classify(&hq, &c) == ORACLAB_OK && c == ORACLAB_HIGH_Q);
    EXPECT(strcmp(oraclab_last_error(), "") == 0);

    long long e[4];
    EXPECT(oraclab_case1_exponents(1, 1.0, 3, e) == ORACLAB_OK);
    EXPECT(e[0] == 1 && e[1] == 2 && e[2] == 1 && e[3] == 6);
    EXPECT(oraclab_case2_exponent(2, 1.0, e) == ORACLAB_OK && e[0] == 2 && e[1] == 7);

    double v;
    EXPECT(oraclab_box_mass(1, &v) == ORACLAB_OK && fabs(v - 0.68268949213708590) < 1e-15);
    EXPECT(fabs(oraclab_marginal_cdf(0.5) - 0.78045321259400155) < 1e-14);
    EXPECT(oraclab_min_r(1, 1, 2, 4, &v) == ORACLAB_OK && fabs(v + 0.125) < 1e-15);

    oraclab_schedule s;
    EXPECT(oraclab_schedule_case1(&hq, 9, &s) == ORACLAB_OK);
    EXPECT(fabs(s.cap_d - 500.0) < 1e-9 && s.delta == 2 * s.rho);
    EXPECT(oraclab_schedule_case1(&hq, 10, &s) == ORACLAB_E_INVALID_ARGUMENT);

    oraclab_sampler* smp = NULL;
    EXPECT(oraclab_sampler_create(3, 0.5, 1, 0, &smp) == ORACLAB_OK);
    double draw[3];
    EXPECT(oraclab_sampler_draw(smp, draw) == ORACLAB_OK);
    EXPECT(fabs(draw[0]) <= 0.5 && fabs(draw[1]) <= 0.5 && fabs(draw[2]) <= 0.5);
    oraclab_sampler_destroy(smp);

    oraclab_case1* h1 = NULL;
    EXPECT(oraclab_case1_create(&hq, 9, 256, 3, &h1) == ORACLAB_OK);
    double x[9] = {0.5, -0.9, 0.2, 0, 0, 0, 0, 0, 0}, grad[9], val, se, gse;
    EXPECT(oraclab_case1_query(h1, x, &val, &se, grad, &gse) == ORACLAB_OK);
    EXPECT(oraclab_case1_step(h1) == 1);
    int alpha[9], xi[9];
    EXPECT(oraclab_case1_pieces(h1, alpha, xi) == ORACLAB_OK && alpha[0] == 1 && xi[0] == -1);
    double far[9] = {1000};
    EXPECT(oraclab_case1_query(h1, far, &val, NULL, NULL, NULL) == ORACLAB_E_DOMAIN);
    oraclab_case1_destroy(h1);

    oraclab_chain* ch = NULL;
    EXPECT(oraclab_chain_create_tilde(2, 1.0, 2, 1.0, 1.0, 2, 4, 0, &ch) == ORACLAB_OK);
    double y[2], res;
    EXPECT(oraclab_chain_solve(ch, ORACLAB_SOLVER_RECURRENCE, y, &res) == ORACLAB_OK);
    EXPECT(fabs(y[0] - 0.75) < 1e-10 && fabs(y[1] - 0.25) < 1e-10);
    EXPECT(oraclab_chain_solve(ch, ORACLAB_SOLVER_NEWTON, y, NULL) == ORACLAB_OK);
    EXPECT(fabs(y[0] - 0.75) < 1e-10 && fabs(y[1] - 0.25) < 1e-10);
    oraclab_check checks[16];
    int n = 0, all = 0;
    EXPECT(oraclab_chain_verify(ch, ORACLAB_SOLVER_RECURRENCE, checks, 16, &n, &all) == ORACLAB_OK);
    EXPECT(n > 5 && all == 1);
    double basis[4];
    EXPECT(oraclab_chain_basis_next(ch, NULL, 0, basis) == ORACLAB_OK);
    EXPECT(oraclab_chain_basis_next(ch, NULL, 0, basis) == ORACLAB_OK);
    EXPECT(oraclab_chain_basis_next(ch, NULL, 0, basis) == ORACLAB_E_BUDGET);
    EXPECT(oraclab_chain_save(ch, "capi_snapshot.txt") == ORACLAB_OK);
    oraclab_chain* back = NULL;
    EXPECT(oraclab_chain_load("capi_snapshot.txt", &back) == ORACLAB_OK);
    EXPECT(oraclab_chain_len(back) == 2 && oraclab_chain_dim(back) == 4);
    double z[4] = {0.1, 0.2, 0.3, 0.4}, f1, f2;
    EXPECT(oraclab_chain_value(ch, z, &f1) == ORACLAB_OK && oraclab_chain_value(back, z, &f2) == ORACLAB_OK);
    EXPECT(f1 == f2);
    oraclab_chain_destroy(back);
    oraclab_chain_destroy(ch);
    EXPECT(oraclab_chain_load("/nonexistent/snapshot", &back) == ORACLAB_E_IO);

    oraclab_suite_config cfg;
    oraclab_suite_defaults(&cfg);
    cfg.draws = 20000;
    cfg.box_draws = 20000;
    int rows = 0;
    EXPECT(oraclab_run_sample_check(&cfg, count_row, &rows, &all) == ORACLAB_OK);
    EXPECT(rows == 9 && all == 1);
    cfg.draws = 0;
    EXPECT(oraclab_run_sample_check(&cfg, NULL, NULL, &all) == ORACLAB_E_INVALID_ARGUMENT);

    oraclab_race_config rc;
    oraclab_race_defaults(&rc);
    rc.dim = 9;
    rc.samples = 256;
    rc.algorithms = "subgradient,agd";
    char *csv = NULL, *traj = NULL, *csv2 = NULL;
    EXPECT(oraclab_race(&rc, &csv, &traj) == ORACLAB_OK);
    EXPECT(oraclab_race(&rc, &csv2, NULL) == ORACLAB_OK);
    EXPECT(csv && csv2 && strcmp(csv, csv2) == 0);
    EXPECT(strncmp(csv, "run_id,instance,algorithm,step,x_norm,value,value_se,gap,gap_se,seed\n", 69) == 0);
    EXPECT(traj && strncmp(traj, "run_id,algorithm,step,alpha,xi", 30) == 0);
    oraclab_free_string(csv);
    oraclab_free_string(csv2);
    oraclab_free_string(traj);
    rc.algorithms = "simplex";
    EXPECT(oraclab_race(&rc, &csv, NULL) == ORACLAB_E_INVALID_ARGUMENT);

    EXPECT(strcmp(oraclab_status_name(ORACLAB_E_DOMAIN), "domain_violation") == 0);
    EXPECT(strcmp(oraclab_version(), "1.0.0") == 0);

    if (failures) fprintf(stderr, "%d failures\n", failures);
    return failures ? 1 : 0;
}
