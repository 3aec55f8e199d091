#include "oraclab/lab.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "oraclab/error.hpp"

namespace oraclab {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::subgradient: return "subgradient";
        case Algorithm::gradient_descent: return "gradient_descent";
        case Algorithm::agd: return "agd";
        case Algorithm::restarted_agd: return "restarted_agd";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : all_algorithms())
        if (name == to_string(a)) return a;
    fail(Errc::invalid_argument, "unknown algorithm '" + std::string(name) + "'");
}

std::vector<Algorithm> all_algorithms() {
    return {Algorithm::subgradient, Algorithm::gradient_descent, Algorithm::agd, Algorithm::restarted_agd};
}

// ---------------------------------------------------------------- oracles

Case1Oracle::Case1Oracle(const ProblemParams& params, int budget_t, int samples, std::uint64_t seed)
    : inst_(std::make_unique<HardInstanceCase1>(params, budget_t, samples, seed)) {}

std::string Case1Oracle::descriptor() const {
    const auto& p = inst_->params();
    return "case1:p=" + std::to_string(p.p()) + ":nu=" + fmt_param(p.nu()) + ":q=" + std::to_string(p.q())
           + ":d=" + std::to_string(p.dim()) + ":T=" + std::to_string(inst_->schedule().budget_t);
}

StepHints Case1Oracle::hints() const {
    const auto& s = inst_->schedule();
    const auto& p = inst_->params();
    double smooth = 2.0 / s.rho * s.beta + p.sigma() * (p.q() - 1) * std::pow(s.cap_d, p.q() - 2);
    return {p.sigma(), p.q(), s.beta, smooth, s.cap_d};
}

OracleAnswer Case1Oracle::query(const Vector& x) {
    Case1Answer a = inst_->query(x);
    return {a.value, a.value_se, std::move(a.grad), a.grad_se, hints().smoothness};
}

Vector Case1Oracle::project(const Vector& x) const {
    double n = x.norm(), r = inst_->schedule().cap_d;
    return n > r ? Vector(x * (r / n)) : x;
}

int Case1Oracle::last_alpha() const {
    const auto& a = inst_->state().alpha();
    return a.empty() ? -1 : a.back();
}

int Case1Oracle::last_xi() const {
    const auto& x = inst_->state().xi();
    return x.empty() ? 0 : x.back();
}

ChainOracle::ChainOracle(ChainInstance inst) : inst_(std::move(inst)) {
    ChainOptimum opt = solve_opt_bruteforce(inst_);
    f_star_ = inst_.scale() * inst_.tilde_value(opt.y);
}

std::string ChainOracle::descriptor() const {
    const auto& p = inst_.params();
    return "case2:p=" + std::to_string(p.p()) + ":nu=" + fmt_param(p.nu()) + ":q=" + std::to_string(p.q())
           + ":d=" + std::to_string(p.dim()) + ":len=" + std::to_string(inst_.chain_len());
}

OracleAnswer ChainOracle::query(const Vector& x) {
    require(x.size() == inst_.dim(), "query has the wrong dimension");
    queried_.push_back(x);
    // once every basis vector is drawn the function is fixed
    if (inst_.basis_size() < inst_.chain_len()) inst_.adversarial_basis_next(queried_);
    OracleAnswer a;
    a.value = inst_.value_available(x);
    a.grad = inst_.gradient_available(x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(inst_.hessian_available(x), Eigen::EigenvaluesOnly);
    a.curvature = es.eigenvalues().maxCoeff();
    return a;
}

StepHints ChainOracle::hints() const {
    const auto& p = inst_.params();
    return {p.sigma(), p.q(), inst_.scale() * inst_.gamma(), 0.0, std::numeric_limits<double>::infinity()};
}

// ---------------------------------------------------------------- algorithms

namespace {

class Recorder {
public:
    Recorder(ResistingOracle& o, Algorithm algo, std::uint64_t seed, int run_id, RunResult& out)
        : oracle_(o), out_(out), optimum_(o.optimum_estimate()), start_(std::chrono::steady_clock::now()) {
        proto_.run_id = run_id;
        proto_.instance = o.descriptor();
        proto_.algorithm = to_string(algo);
        proto_.seed = seed;
    }

    OracleAnswer ask(const Vector& x) {
        OracleAnswer a = oracle_.query(x);
        RunRecord r = proto_;
        r.step = int(out_.records.size()) + 1;
        r.x_norm = x.norm();
        r.value = a.value;
        r.value_se = a.value_se;
        r.gap = a.value - optimum_;
        r.gap_se = a.value_se;
        r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        out_.records.push_back(r);
        out_.trajectory.push_back({r.step, x, oracle_.last_alpha(), oracle_.last_xi(), a.value, a.grad.norm()});
        return a;
    }

    double optimum() const { return optimum_; }

private:
    ResistingOracle& oracle_;
    RunResult& out_;
    double optimum_;
    RunRecord proto_;
    std::chrono::steady_clock::time_point start_;
};

double step_smoothness(const StepHints& h, const OracleAnswer& a) {
    double l = std::max(h.smoothness, a.curvature);
    return l > 0.0 ? l : 1.0;
}

void run_subgradient(ResistingOracle& o, Recorder& rec, int steps, Vector x) {
    const StepHints h = o.hints();
    for (int t = 1; t <= steps; ++t) {
        OracleAnswer a = rec.ask(x);
        double gn = a.grad.norm();
        if (gn == 0.0) continue;
        // uniformly convex schedule: eta_t = (G / (sigma t))^{1/(q-1)}
        double eta = std::pow(h.lipschitz / (h.sigma * t), 1.0 / (h.q - 1));
        x = o.project(x - eta * a.grad / gn);
    }
}

void run_gradient_descent(ResistingOracle& o, Recorder& rec, int steps, Vector x) {
    const StepHints h = o.hints();
    for (int t = 1; t <= steps; ++t) {
        OracleAnswer a = rec.ask(x);
        x = o.project(x - a.grad / step_smoothness(h, a));
    }
}

// Nesterov momentum (t-1)/(t+2); queries are made at the extrapolated point.
// Returns the best queried point and its value.
std::pair<Vector, double> agd_epoch(ResistingOracle& o, Recorder& rec, int steps, const Vector& start,
                                    double factor) {
    const StepHints h = o.hints();
    Vector x = start, y = start;
    Vector best = start;
    double best_val = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= steps; ++t) {
        OracleAnswer a = rec.ask(y);
        if (a.value < best_val) {
            best_val = a.value;
            best = y;
        }
        Vector next = o.project(y - factor * a.grad / step_smoothness(h, a));
        y = o.project(next + (double(t - 1) / (t + 2)) * (next - x));
        x = std::move(next);
    }
    return {best, best_val};
}

void run_restarted_agd(ResistingOracle& o, Recorder& rec, int steps, const Vector& init, RunResult& out) {
    const int epoch = std::max(3, int(std::ceil(std::sqrt(double(steps)))));
    Vector best = init;
    double best_val = std::numeric_limits<double>::infinity();
    double factor = 1.0;
    int used = 0;
    while (used < steps) {
        int len = std::min(epoch, steps - used);
        auto [cand, val] = agd_epoch(o, rec, len, best, factor);
        used += len;
        if (val < best_val) {
            best = cand;
            best_val = val;
        } else {
            factor *= 0.5;  // no progress: shorten the step
        }
        out.restart_gaps.push_back(best_val - rec.optimum());
    }
}

}  // namespace

RunResult run_algorithm(ResistingOracle& oracle, Algorithm algo, int steps, const Vector& init, std::uint64_t seed,
                        int run_id) {
    require(steps >= 1, "steps must be >= 1");
    Vector x0 = init.size() == 0 ? Vector::Zero(oracle.dim()) : init;
    require(x0.size() == oracle.dim(), "initial point has the wrong dimension");
    RunResult out;
    Recorder rec(oracle, algo, seed, run_id, out);
    switch (algo) {
        case Algorithm::subgradient: run_subgradient(oracle, rec, steps, x0); break;
        case Algorithm::gradient_descent: run_gradient_descent(oracle, rec, steps, x0); break;
        case Algorithm::agd: agd_epoch(oracle, rec, steps, x0, 1.0); break;
        case Algorithm::restarted_agd: run_restarted_agd(oracle, rec, steps, x0, out); break;
    }
    return out;
}

// ---------------------------------------------------------------- races

int worker_count(int tasks) {
    int n = int(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("ORACLAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) n = int(std::min<long>(v, 1024));
    }
    return std::max(1, std::min(n, tasks));
}

static std::unique_ptr<ResistingOracle> make_oracle(const RaceConfig& cfg, int steps) {
    if (cfg.instance == InstanceKind::case1) {
        ProblemParams params(cfg.p, cfg.nu, cfg.q, cfg.sigma, cfg.holder_h, cfg.dim);
        return std::make_unique<Case1Oracle>(params, steps, cfg.samples, cfg.seed);
    }
    int len = cfg.chain_len > 0 ? cfg.chain_len : steps + 1;
    int dim = std::max(cfg.dim, 2 * len + 1);
    ProblemParams params(cfg.p, cfg.nu, cfg.q, cfg.sigma, cfg.holder_h, dim);
    return std::make_unique<ChainOracle>(ChainInstance(params, cfg.gamma, len, cfg.seed));
}

RaceOutput run_race(const RaceConfig& cfg) {
    require(!cfg.algorithms.empty(), "race needs at least one algorithm");
    int steps = cfg.steps > 0 ? cfg.steps : (cfg.instance == InstanceKind::case1 ? cfg.dim : 8);
    const int n = int(cfg.algorithms.size());
    RaceOutput out;
    out.runs.resize(n);
    std::vector<std::exception_ptr> errors(n);

    auto task = [&](int i) {
        try {
            auto oracle = make_oracle(cfg, steps);
            out.runs[i] = run_algorithm(*oracle, cfg.algorithms[i], steps, Vector(), cfg.seed, i + 1);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const int workers = worker_count(n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) task(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int i = w; i < n; i += workers) task(i);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

// ---------------------------------------------------------------- csv

std::string run_csv_header() { return "run_id,instance,algorithm,step,x_norm,value,value_se,gap,gap_se,seed"; }

void write_run_csv(std::ostream& os, const std::vector<RunRecord>& records, bool header) {
    if (header) os << run_csv_header() << "\n";
    for (const auto& r : records) {
        os << r.run_id << ',' << r.instance << ',' << r.algorithm << ',' << r.step << ',' << fmt17(r.x_norm) << ','
           << fmt17(r.value) << ',' << fmt17(r.value_se) << ',' << fmt17(r.gap) << ',' << fmt17(r.gap_se) << ','
           << r.seed << "\n";
    }
}

std::string trajectory_csv_header(int dim) {
    std::string h = "run_id,algorithm,step,alpha,xi,value,grad_norm";
    for (int i = 1; i <= dim; ++i) h += ",x" + std::to_string(i);
    return h;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRecord>& traj, int run_id,
                          const std::string& algorithm) {
    for (const auto& t : traj) {
        // alpha is written 1-based; 0 marks "no coordinate choice"
        os << run_id << ',' << algorithm << ',' << t.step << ',' << (t.alpha + 1) << ',' << t.xi << ','
           << fmt17(t.value) << ',' << fmt17(t.grad_norm);
        for (int i = 0; i < t.x.size(); ++i) os << ',' << fmt17(t.x[i]);
        os << "\n";
    }
}

// ---------------------------------------------------------------- fits

ScalingFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& eps_t) {
    if (eps_t.size() < 4) fail(Errc::invalid_argument, "scaling fit needs at least 4 (eps, T) points");
    const double n = double(eps_t.size());
    double mx = 0.0, my = 0.0;
    for (auto [e, t] : eps_t) {
        require(e > 0.0 && t > 0.0, "eps and T must be positive");
        mx += std::log(1.0 / e);
        my += std::log(t);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (auto [e, t] : eps_t) {
        double dx = std::log(1.0 / e) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(t) - my);
    }
    require(sxx > 0.0, "scaling fit needs at least two distinct eps values");
    double slope = sxy / sxx;
    double ssr = 0.0;
    for (auto [e, t] : eps_t) {
        double res = std::log(t) - (my + slope * (std::log(1.0 / e) - mx));
        ssr += res * res;
    }
    return {slope, std::sqrt(ssr / (n - 2.0) / sxx)};
}

}  // namespace oraclab
