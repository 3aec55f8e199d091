#include "oraclab/oraclab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "oraclab/chain.hpp"
#include "oraclab/error.hpp"
#include "oraclab/lab.hpp"
#include "oraclab/nemirovski.hpp"
#include "oraclab/params.hpp"
#include "oraclab/suites.hpp"
#include "oraclab/truncnorm.hpp"

using namespace oraclab;

struct oraclab_sampler {
    TruncatedBoxGaussian gen;
};

struct oraclab_case1 {
    std::unique_ptr<HardInstanceCase1> inst;
};

struct oraclab_chain {
    ChainInstance inst;
};

namespace {

thread_local std::string g_last_error;

oraclab_status status_of(Errc c) {
    switch (c) {
        case Errc::invalid_argument: return ORACLAB_E_INVALID_ARGUMENT;
        case Errc::unsupported_case: return ORACLAB_E_UNSUPPORTED_CASE;
        case Errc::domain_violation: return ORACLAB_E_DOMAIN;
        case Errc::budget_exhausted: return ORACLAB_E_BUDGET;
        case Errc::not_converged: return ORACLAB_E_NOT_CONVERGED;
        case Errc::subspace_exhausted: return ORACLAB_E_SUBSPACE_EXHAUSTED;
        case Errc::io_error: return ORACLAB_E_IO;
    }
    return ORACLAB_E_INTERNAL;
}

template <class F>
oraclab_status guarded(F&& f) {
    try {
        g_last_error.clear();
        f();
        return ORACLAB_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return ORACLAB_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ORACLAB_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return ORACLAB_E_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) fail(Errc::invalid_argument, std::string(what) + " must not be null");
}

ProblemParams to_params(const oraclab_params* p) {
    need(p, "params");
    return ProblemParams(p->p, p->nu, p->q, p->sigma, p->holder_h, p->dim);
}

Vector view(const double* x, int n) {
    need(x, "input vector");
    return Eigen::Map<const Vector>(x, n);
}

void put(const Vector& v, double* out) {
    need(out, "output vector");
    std::memcpy(out, v.data(), sizeof(double) * std::size_t(v.size()));
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ChainOptimum solve(const ChainInstance& inst, oraclab_solver s) {
    switch (s) {
        case ORACLAB_SOLVER_NEWTON: return solve_opt_bruteforce(inst);
        case ORACLAB_SOLVER_RECURRENCE: return solve_opt_recurrence(inst);
    }
    fail(Errc::invalid_argument, "unknown solver");
}

oraclab_status run_suite(const std::vector<CheckReport>& rows, oraclab_row_callback cb, void* user,
                         int* all) {
    if (cb) {
        for (const auto& r : rows) {
            oraclab_check_row row{r.name.c_str(), r.passed ? 1 : 0, r.worst_ratio, r.slack_used,
                                  r.samples,      r.seed,          to_string(r.regime)};
            cb(&row, user);
        }
    }
    if (all) *all = all_passed(rows) ? 1 : 0;
    return ORACLAB_OK;
}

}  // namespace

extern "C" {

const char* oraclab_last_error(void) { return g_last_error.c_str(); }

const char* oraclab_status_name(oraclab_status s) {
    switch (s) {
        case ORACLAB_OK: return "ok";
        case ORACLAB_E_INVALID_ARGUMENT: return "invalid_argument";
        case ORACLAB_E_UNSUPPORTED_CASE: return "unsupported_case";
        case ORACLAB_E_DOMAIN: return "domain_violation";
        case ORACLAB_E_BUDGET: return "budget_exhausted";
        case ORACLAB_E_NOT_CONVERGED: return "not_converged";
        case ORACLAB_E_SUBSPACE_EXHAUSTED: return "subspace_exhausted";
        case ORACLAB_E_IO: return "io_error";
        case ORACLAB_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* oraclab_version(void) { return "1.0.0"; }

void oraclab_free_string(char* s) { std::free(s); }

oraclab_status oraclab_classify(const oraclab_params* params, oraclab_case* out) {
    return guarded([&] {
        need(out, "out");
        *out = classify_case(to_params(params)) == CaseLabel::high_q ? ORACLAB_HIGH_Q : ORACLAB_LOW_Q;
    });
}

oraclab_status oraclab_sigma_tilde(const oraclab_params* params, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = sigma_tilde(to_params(params));
    });
}

oraclab_status oraclab_domain_radius(const oraclab_params* params, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = domain_radius(to_params(params));
    });
}

oraclab_status oraclab_schedule_case1(const oraclab_params* params, int budget_t, oraclab_schedule* out) {
    return guarded([&] {
        need(out, "out");
        Case1Schedule s = schedule_case1(to_params(params), budget_t);
        *out = {s.rho, s.beta, s.delta, s.c_q, s.cap_d, s.cap_c, s.budget_t};
    });
}

oraclab_status oraclab_lower_bound_case1(const oraclab_params* params, double eps, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = lower_bound_case1(to_params(params), eps);
    });
}

oraclab_status oraclab_lower_bound_case2(const oraclab_params* params, double eps, double* kappa_term,
                                         double* loglog_term) {
    return guarded([&] {
        need(kappa_term, "kappa_term");
        need(loglog_term, "loglog_term");
        Case2Bound b = lower_bound_case2(to_params(params), eps);
        *kappa_term = b.kappa_term;
        *loglog_term = b.loglog_term;
    });
}

oraclab_status oraclab_case1_exponents(int p, double nu, int q, long long out[4]) {
    return guarded([&] {
        need(out, "out");
        Case1Exponents e = case1_exponents(p, rational_from(nu), q);
        out[0] = e.h_over_sigma.numerator();
        out[1] = e.h_over_sigma.denominator();
        out[2] = e.sigma_over_eps.numerator();
        out[3] = e.sigma_over_eps.denominator();
    });
}

oraclab_status oraclab_case2_exponent(int p, double nu, long long out[2]) {
    return guarded([&] {
        need(out, "out");
        Rational r = case2_exponent(p, rational_from(nu));
        out[0] = r.numerator();
        out[1] = r.denominator();
    });
}

oraclab_status oraclab_min_r(double beta, double sigma, int q, int budget_t, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = min_r_closed_form(beta, sigma, q, budget_t);
    });
}

oraclab_status oraclab_gap_lower_bound(const oraclab_params* params, int budget_t, double* out) {
    return guarded([&] {
        need(out, "out");
        ProblemParams pp = to_params(params);
        *out = gap_lower_bound(schedule_case1(pp, budget_t), pp);
    });
}

oraclab_status oraclab_fit_scaling(const double* eps, const double* steps, size_t n, double* slope,
                                   double* stderr_slope) {
    return guarded([&] {
        need(eps, "eps");
        need(steps, "steps");
        need(slope, "slope");
        std::vector<std::pair<double, double>> pts;
        for (size_t i = 0; i < n; ++i) pts.emplace_back(eps[i], steps[i]);
        ScalingFit f = fit_scaling_exponent(pts);
        *slope = f.slope;
        if (stderr_slope) *stderr_slope = f.stderr_slope;
    });
}

oraclab_status oraclab_box_mass(int dim, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = box_mass(dim);
    });
}

double oraclab_marginal_cdf(double t) { return marginal_cdf(t); }

oraclab_status oraclab_ks_statistic(const double* samples, size_t n, double* out) {
    return guarded([&] {
        need(samples, "samples");
        need(out, "out");
        *out = ks_statistic(std::span<const double>(samples, n));
    });
}

oraclab_status oraclab_sampler_create(int dim, double scale, uint64_t seed, uint64_t stream, oraclab_sampler** out) {
    return guarded([&] {
        need(out, "out");
        *out = new oraclab_sampler{TruncatedBoxGaussian(dim, scale, seed, stream)};
    });
}

void oraclab_sampler_destroy(oraclab_sampler* s) { delete s; }

oraclab_status oraclab_sampler_draw(oraclab_sampler* s, double* out) {
    return guarded([&] {
        need(s, "sampler");
        put(s->gen.draw(), out);
    });
}

oraclab_status oraclab_case1_create(const oraclab_params* params, int budget_t, int samples, uint64_t seed,
                                    oraclab_case1** out) {
    return guarded([&] {
        need(out, "out");
        auto inst = std::make_unique<HardInstanceCase1>(to_params(params), budget_t, samples, seed);
        *out = new oraclab_case1{std::move(inst)};
    });
}

void oraclab_case1_destroy(oraclab_case1* h) { delete h; }

oraclab_status oraclab_case1_query(oraclab_case1* h, const double* x, double* value, double* value_se, double* grad,
                                   double* grad_se) {
    return guarded([&] {
        need(h, "handle");
        Case1Answer a = h->inst->query(view(x, h->inst->params().dim()));
        if (value) *value = a.value;
        if (value_se) *value_se = a.value_se;
        if (grad) put(a.grad, grad);
        if (grad_se) *grad_se = a.grad_se;
    });
}

oraclab_status oraclab_case1_value(const oraclab_case1* h, const double* x, double* value, double* value_se) {
    return guarded([&] {
        need(h, "handle");
        ScalarEstimate e = h->inst->f_value(view(x, h->inst->params().dim()));
        if (value) *value = e.value;
        if (value_se) *value_se = e.std_err;
    });
}

int oraclab_case1_step(const oraclab_case1* h) { return h ? h->inst->state().step() : -1; }

oraclab_status oraclab_case1_pieces(const oraclab_case1* h, int* alpha, int* xi) {
    return guarded([&] {
        need(h, "handle");
        const auto& s = h->inst->state();
        if (alpha) std::copy(s.alpha().begin(), s.alpha().end(), alpha);
        if (xi) std::copy(s.xi().begin(), s.xi().end(), xi);
    });
}

oraclab_status oraclab_case1_schedule(const oraclab_case1* h, oraclab_schedule* out) {
    return guarded([&] {
        need(h, "handle");
        need(out, "out");
        const Case1Schedule& s = h->inst->schedule();
        *out = {s.rho, s.beta, s.delta, s.c_q, s.cap_d, s.cap_c, s.budget_t};
    });
}

oraclab_status oraclab_case1_surrogate_optimum(const oraclab_case1* h, double* out) {
    return guarded([&] {
        need(h, "handle");
        need(out, "out");
        *out = h->inst->surrogate_optimum();
    });
}

oraclab_status oraclab_chain_create(const oraclab_params* params, double gamma, int chain_len, uint64_t seed,
                                    oraclab_chain** out) {
    return guarded([&] {
        need(out, "out");
        *out = new oraclab_chain{ChainInstance(to_params(params), gamma, chain_len, seed)};
    });
}

oraclab_status oraclab_chain_create_tilde(int p, double nu, int q, double gamma, double sigma_t, int chain_len,
                                          int dim, uint64_t seed, oraclab_chain** out) {
    return guarded([&] {
        need(out, "out");
        *out = new oraclab_chain{ChainInstance::from_tilde(p, nu, q, gamma, sigma_t, chain_len, dim, seed)};
    });
}

void oraclab_chain_destroy(oraclab_chain* h) { delete h; }

int oraclab_chain_len(const oraclab_chain* h) { return h ? h->inst.chain_len() : -1; }

int oraclab_chain_dim(const oraclab_chain* h) { return h ? h->inst.dim() : -1; }

oraclab_status oraclab_chain_tilde_value(const oraclab_chain* h, const double* y, double* out) {
    return guarded([&] {
        need(h, "handle");
        need(out, "out");
        *out = h->inst.tilde_value(view(y, h->inst.chain_len()));
    });
}

oraclab_status oraclab_chain_tilde_gradient(const oraclab_chain* h, const double* y, double* out) {
    return guarded([&] {
        need(h, "handle");
        put(h->inst.tilde_gradient(view(y, h->inst.chain_len())), out);
    });
}

oraclab_status oraclab_chain_solve(const oraclab_chain* h, oraclab_solver solver, double* y, double* residual) {
    return guarded([&] {
        need(h, "handle");
        ChainOptimum o = solve(h->inst, solver);
        put(o.y, y);
        if (residual) *residual = o.residual;
    });
}

oraclab_status oraclab_chain_verify(const oraclab_chain* h, oraclab_solver solver, oraclab_check* out, int capacity,
                                    int* count, int* all) {
    return guarded([&] {
        need(h, "handle");
        LemmaReport rep = verify_chain_optimum(h->inst, solve(h->inst, solver));
        int n = int(rep.checks.size());
        if (count) *count = n;
        if (all) *all = rep.all_passed() ? 1 : 0;
        if (out) {
            for (int i = 0; i < n && i < capacity; ++i) {
                const LemmaCheck& c = rep.checks[std::size_t(i)];
                std::memset(out[i].name, 0, sizeof out[i].name);
                std::strncpy(out[i].name, c.name.c_str(), sizeof out[i].name - 1);
                out[i].status = c.status == LemmaStatus::pass ? 0 : c.status == LemmaStatus::fail ? 1 : 2;
                out[i].slack = c.slack;
            }
        }
    });
}

oraclab_status oraclab_chain_basis_next(oraclab_chain* h, const double* queried, int n_queried, double* out) {
    return guarded([&] {
        need(h, "handle");
        require(n_queried >= 0, "n_queried must be nonnegative");
        const int d = h->inst.dim();
        std::vector<Vector> qs;
        for (int i = 0; i < n_queried; ++i) qs.push_back(view(queried + std::size_t(i) * d, d));
        const Vector& v = h->inst.adversarial_basis_next(qs);
        if (out) put(v, out);
    });
}

oraclab_status oraclab_chain_use_identity_basis(oraclab_chain* h) {
    return guarded([&] {
        need(h, "handle");
        h->inst.use_identity_basis();
    });
}

oraclab_status oraclab_chain_value(const oraclab_chain* h, const double* x, double* out) {
    return guarded([&] {
        need(h, "handle");
        need(out, "out");
        *out = h->inst.value(view(x, h->inst.dim()));
    });
}

oraclab_status oraclab_chain_gradient(const oraclab_chain* h, const double* x, double* out) {
    return guarded([&] {
        need(h, "handle");
        put(h->inst.gradient(view(x, h->inst.dim())), out);
    });
}

oraclab_status oraclab_chain_save(const oraclab_chain* h, const char* path) {
    return guarded([&] {
        need(h, "handle");
        need(path, "path");
        std::ofstream os(path);
        if (!os) fail(Errc::io_error, std::string("cannot open ") + path + " for writing");
        save_snapshot(h->inst, os);
        if (!os) fail(Errc::io_error, std::string("write failed: ") + path);
    });
}

oraclab_status oraclab_chain_load(const char* path, oraclab_chain** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        std::ifstream is(path);
        if (!is) fail(Errc::io_error, std::string("cannot open ") + path);
        *out = new oraclab_chain{load_snapshot(is)};
    });
}

void oraclab_suite_defaults(oraclab_suite_config* cfg) {
    if (!cfg) return;
    SampleCheckConfig s;
    Case1SuiteConfig c1;
    Case2SuiteConfig c2;
    *cfg = {};
    cfg->seed = s.seed;
    cfg->draws = s.draws;
    cfg->box_draws = s.box_draws;
    cfg->sample_dim = s.dim;
    cfg->p = c1.p;
    cfg->nu = c1.nu;
    cfg->q = c1.q;
    cfg->sigma = c1.sigma;
    cfg->holder_h = c1.holder_h;
    cfg->dim = c1.dim;
    cfg->samples = c1.samples;
    cfg->pairs = c1.pairs;
    cfg->instances = c2.instances;
    cfg->max_len = c2.max_len;
}

const char* oraclab_check_csv_header(void) {
    static const std::string h = check_csv_header();
    return h.c_str();
}

oraclab_status oraclab_run_sample_check(const oraclab_suite_config* cfg, oraclab_row_callback cb, void* user,
                                        int* all) {
    std::vector<CheckReport> rows;
    oraclab_status st = guarded([&] {
        need(cfg, "config");
        require(cfg->draws > 0 && cfg->box_draws > 0 && cfg->sample_dim > 0, "sample counts must be positive");
        rows = run_sample_check({cfg->seed, cfg->draws, cfg->box_draws, cfg->sample_dim});
    });
    return st == ORACLAB_OK ? run_suite(rows, cb, user, all) : st;
}

oraclab_status oraclab_run_verify_case1(const oraclab_suite_config* cfg, oraclab_row_callback cb, void* user,
                                        int* all) {
    std::vector<CheckReport> rows;
    oraclab_status st = guarded([&] {
        need(cfg, "config");
        require(cfg->pairs > 0 && cfg->samples > 0, "pairs and samples must be positive");
        rows = run_case1_suite({cfg->seed, cfg->p, cfg->nu, cfg->q, cfg->sigma, cfg->holder_h, cfg->dim, cfg->pairs,
                                cfg->samples});
    });
    return st == ORACLAB_OK ? run_suite(rows, cb, user, all) : st;
}

oraclab_status oraclab_run_verify_case2(const oraclab_suite_config* cfg, oraclab_row_callback cb, void* user,
                                        int* all) {
    std::vector<CheckReport> rows;
    oraclab_status st = guarded([&] {
        need(cfg, "config");
        require(cfg->instances > 0 && cfg->pairs > 0, "instances and pairs must be positive");
        require(cfg->max_len >= 2, "max_len must be at least 2");
        rows = run_case2_suite({cfg->seed, cfg->instances, cfg->pairs, cfg->max_len});
    });
    return st == ORACLAB_OK ? run_suite(rows, cb, user, all) : st;
}

void oraclab_race_defaults(oraclab_race_config* cfg) {
    if (!cfg) return;
    RaceConfig r;
    *cfg = {};
    cfg->instance = ORACLAB_INSTANCE_CASE1;
    cfg->algorithms = nullptr;
    cfg->p = r.p;
    cfg->nu = r.nu;
    cfg->q = r.q;
    cfg->sigma = r.sigma;
    cfg->holder_h = r.holder_h;
    cfg->dim = r.dim;
    cfg->steps = r.steps;
    cfg->samples = r.samples;
    cfg->gamma = r.gamma;
    cfg->chain_len = r.chain_len;
    cfg->seed = r.seed;
}

oraclab_status oraclab_race(const oraclab_race_config* cfg, char** csv, char** trajectory) {
    return guarded([&] {
        need(cfg, "config");
        need(csv, "csv");
        RaceConfig r;
        r.instance = cfg->instance == ORACLAB_INSTANCE_CASE2 ? InstanceKind::case2 : InstanceKind::case1;
        require(cfg->instance == ORACLAB_INSTANCE_CASE1 || cfg->instance == ORACLAB_INSTANCE_CASE2,
                "unknown instance kind");
        std::string algos = cfg->algorithms ? cfg->algorithms : "all";
        if (algos != "all") {
            r.algorithms.clear();
            std::stringstream ss(algos);
            std::string name;
            while (std::getline(ss, name, ',')) r.algorithms.push_back(parse_algorithm(name));
            require(!r.algorithms.empty(), "no algorithm selected");
        }
        r.p = cfg->p;
        r.nu = cfg->nu;
        r.q = cfg->q;
        r.sigma = cfg->sigma;
        r.holder_h = cfg->holder_h;
        r.dim = cfg->dim;
        r.steps = cfg->steps;
        r.samples = cfg->samples;
        r.gamma = cfg->gamma;
        r.chain_len = cfg->chain_len;
        r.seed = cfg->seed;
        RaceOutput out = run_race(r);

        std::ostringstream os;
        os << run_csv_header() << "\n";
        for (const auto& run : out.runs) write_run_csv(os, run.records, false);
        std::string traj;
        if (trajectory) {
            std::ostringstream ts;
            int dim = out.runs.empty() || out.runs[0].trajectory.empty() ? 0 : int(out.runs[0].trajectory[0].x.size());
            ts << trajectory_csv_header(dim) << "\n";
            for (std::size_t i = 0; i < out.runs.size(); ++i) {
                const auto& run = out.runs[i];
                int run_id = run.records.empty() ? int(i) : run.records.front().run_id;
                write_trajectory_csv(ts, run.trajectory, run_id, to_string(r.algorithms[i]));
            }
            traj = ts.str();
        }
        char* c = dup(os.str());
        char* t = nullptr;
        if (trajectory) {
            try {
                t = dup(traj);
            } catch (...) {
                std::free(c);
                throw;
            }
            *trajectory = t;
        }
        *csv = c;
    });
}

}  // extern "C"
