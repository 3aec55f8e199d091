#include "oraclab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oraclab/chain.hpp"
#include "oraclab/error.hpp"
#include "oraclab/nemirovski.hpp"
#include "oraclab/special.hpp"
#include "oraclab/truncnorm.hpp"

namespace oraclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CheckReport make(std::string name, double worst, double slack, long samples, std::uint64_t seed, SlackRegime regime) {
    CheckReport r;
    r.name = std::move(name);
    r.worst_ratio = worst;
    r.slack_used = slack;
    r.samples = samples;
    r.seed = seed;
    r.regime = regime;
    r.passed = worst <= 1.0 + slack;
    return r;
}

// A complete adversary state for g_T built from random queries.
ResistingState random_full_state(int dim, int budget, double delta, std::uint64_t seed) {
    Rng rng(seed, 11);
    ResistingState s(dim, budget, delta);
    Vector x(dim);
    while (s.step() < budget) {
        for (int i = 0; i < dim; ++i) x[i] = rng.normal();
        s.advance(x);
    }
    return s;
}

}  // namespace

bool all_passed(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

CheckReport boolean_report(std::string name, bool ok, long samples, std::uint64_t seed, SlackRegime regime) {
    return make(std::move(name), ok ? 0.0 : kInf, 0.0, samples, seed, regime);
}

CheckReport ks_report(std::string name, const std::vector<double>& samples, std::uint64_t seed) {
    double ks = ks_statistic(samples);
    return make(std::move(name), ks / ks_critical_1pct(samples.size()), 0.0, long(samples.size()), seed,
                SlackRegime::monte_carlo);
}

CheckReport box_mass_report(int dim, long draws, std::uint64_t seed) {
    Rng rng(seed, 100 + std::uint64_t(dim));
    long inside = 0;
    for (long n = 0; n < draws; ++n) {
        bool in = true;
        for (int i = 0; i < dim; ++i)
            if (std::abs(rng.normal()) > 1.0) in = false;
        inside += in;
    }
    double z = box_mass(dim);
    double est = double(inside) / draws;
    double se = std::sqrt(z * (1.0 - z) / draws);
    return make("box_mass_d" + std::to_string(dim), std::abs(est - z) / (kSeMultiplier * se), 0.0, draws, seed,
                SlackRegime::monte_carlo);
}

CheckReport indistinguishability_report(std::string name, const std::vector<Vector>& queries, int dim, int budget,
                                        double delta, int probes, std::uint64_t seed) {
    ResistingState final_state = replay_trajectory(queries, dim, budget, delta);
    Rng rng(seed, 21);
    long tested = 0, mismatches = 0;
    for (std::size_t s = 0; s < queries.size(); ++s) {
        ResistingState prefix = final_state.prefix(int(s) + 1);
        for (int j = 0; j <= probes; ++j) {
            Vector x = queries[s];
            if (j > 0)
                for (int i = 0; i < dim; ++i) x[i] += rng.uniform(-0.5 * delta, 0.5 * delta);
            ++tested;
            if (!check_indistinguishable(prefix, final_state, x)) ++mismatches;
        }
    }
    return make(std::move(name), mismatches == 0 ? 0.0 : kInf, 0.0, tested, seed, SlackRegime::exact);
}

CheckReport gap_report(std::string name, const RunResult& run, double bound, std::uint64_t seed) {
    require(!run.records.empty(), "gap report needs a nonempty run");
    const RunRecord& last = run.records.back();
    double need = bound - kSeMultiplier * last.gap_se;
    double ratio = last.gap > 0.0 ? need / last.gap : (need > 0.0 ? kInf : 0.0);
    return make(std::move(name), ratio, 0.0, long(run.records.size()), seed, SlackRegime::monte_carlo);
}

ChainInstance random_chain_instance(Rng& rng, int max_len) {
    int p = 2 + int(rng.index(2));
    double nu = rng.index(2) ? 1.0 : 0.5;
    int len = 2 + int(rng.index(std::size_t(max_len - 1)));
    double gamma = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    double st = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    return ChainInstance::from_tilde(p, nu, 2, gamma, st, len, 2 * len, rng.bits());
}

std::vector<CheckReport> run_sample_check(const SampleCheckConfig& cfg) {
    std::vector<CheckReport> out;
    const double rho = 0.37;  // arbitrary scale; statistics are taken on v / rho
    TruncatedBoxGaussian gen(cfg.dim, rho, cfg.seed);
    std::vector<std::vector<double>> coords(cfg.dim);
    for (auto& c : coords) c.reserve(cfg.draws);
    double worst_support = 0.0;
    Vector v(cfg.dim);
    for (long n = 0; n < cfg.draws; ++n) {
        gen.draw_into(v);
        worst_support = std::max(worst_support, v.lpNorm<Eigen::Infinity>() / rho);
        for (int i = 0; i < cfg.dim; ++i) coords[i].push_back(v[i] / rho);
    }
    out.push_back(make("support", worst_support, 0.0, cfg.draws, cfg.seed, SlackRegime::exact));
    for (int i = 0; i < cfg.dim; ++i) out.push_back(ks_report("ks_coord" + std::to_string(i + 1), coords[i], cfg.seed));

    // first coordinate: mean and variance against the closed forms
    const auto& c0 = coords[0];
    const double n = double(c0.size());
    double m = 0.0, m2 = 0.0, m4 = 0.0;
    for (double t : c0) m += t;
    m /= n;
    for (double t : c0) {
        m2 += (t - m) * (t - m);
        m4 += std::pow(t - m, 4);
    }
    m2 /= n;
    m4 /= n;
    double var = marginal_variance();
    out.push_back(make("mean", std::abs(m) / (kSeMultiplier * std::sqrt(var / n)), 0.0, long(n), cfg.seed,
                       SlackRegime::monte_carlo));
    double se_var = std::sqrt(std::max(m4 - m2 * m2, 1e-300) / n);
    out.push_back(make("variance", std::abs(m2 - var) / (kSeMultiplier * se_var), 0.0, long(n), cfg.seed,
                       SlackRegime::monte_carlo));

    for (int d : {1, 3, 5}) out.push_back(box_mass_report(d, cfg.box_draws, cfg.seed));
    return out;
}

std::vector<CheckReport> run_case1_suite(const Case1SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    ProblemParams params(cfg.p, cfg.nu, cfg.q, cfg.sigma, cfg.holder_h, cfg.dim);
    const int budget = cfg.dim;
    const std::uint64_t seed = cfg.seed;

    HardInstanceCase1 inst(params, budget, cfg.samples, seed);
    const Case1Schedule& s = inst.schedule();
    out.push_back(make("schedule_consistency", schedule_holder_mismatch(params, s) / kScheduleTolerance, 0.0, 1, seed,
                       SlackRegime::exact));
    out.push_back(boolean_report("schedule_delta", s.delta == 2.0 * params.p() * s.rho, 1, seed, SlackRegime::exact));

    // fill the adversary so F is the final function
    inst.state() = random_full_state(params.dim(), budget, s.delta, seed);
    const ResistingState& g = inst.state();

    auto near = ball_sampler(params.dim(), 20.0 * s.rho * std::sqrt(double(params.dim())));
    auto whole = ball_sampler(params.dim(), s.cap_d);

    out.push_back(check_lipschitz(
        "g_lipschitz_linf", [&](const Vector& x) { return ScalarEstimate{g.value(x), 0.0}; }, 1.0, near, 10000,
        1e-12, NormKind::linf, seed));
    out.push_back(check_sandwich("sandwich", inst.smoothed(), near, 100, kSeMultiplier, seed));
    out.push_back(make("smoothness",
                       empirical_smoothness(inst.smoothed(), cfg.pairs, 2.0 * s.rho, seed) / (2.0 / s.rho), kSupremumSlack,
                       cfg.pairs, seed, SlackRegime::empirical_supremum));

    auto grad = [&](const Vector& x) { return inst.f_gradient(x); };
    for (auto& [tag, dom] : {std::pair{"near", near}, std::pair{"ball", whole}}) {
        out.push_back(check_uniform_convexity(std::string("uniform_convexity_") + tag, grad, params.sigma(), params.q(),
                                              dom, cfg.pairs, kExactSlack, seed));
        // the gradient-monotone form of (sigma/q)||x||^q only holds with modulus sigma 2^{2-q}
        if (params.q() > 2)
            out.push_back(check_uniform_convexity(std::string("uniform_convexity_sharp_") + tag, grad,
                                                  params.sigma() * std::pow(2.0, 2 - params.q()), params.q(), dom,
                                                  cfg.pairs, kExactSlack, seed));
    }
    if (params.p() == 1) {
        auto d1 = [&](const Vector& x) { return Matrix(inst.f_gradient(x).value); };
        out.push_back(check_holder("holder_near", 1, d1, params.holder_h(), params.nu(), near, cfg.pairs,
                                   kSupremumSlack, seed));
        out.push_back(check_holder("holder_ball", 1, d1, params.holder_h(), params.nu(), whole, cfg.pairs,
                                   kSupremumSlack, seed));
    }

    // races: gap bound and adversary soundness on each trajectory
    double bound = gap_lower_bound(s, params);
    for (Algorithm a : all_algorithms()) {
        Case1Oracle oracle(params, budget, cfg.samples, seed);
        RunResult run = run_algorithm(oracle, a, budget, Vector(), seed);
        out.push_back(gap_report(std::string("gap_bound_") + to_string(a), run, bound, seed));
        std::vector<Vector> qs;
        for (const auto& t : run.trajectory) qs.push_back(t.x);
        out.push_back(indistinguishability_report(std::string("indistinguishable_") + to_string(a), qs,
                                                  params.dim(), budget, s.delta, 8, seed));
        ResistingState replay = replay_trajectory(qs, params.dim(), budget, s.delta);
        bool same = replay.alpha() == oracle.instance().state().alpha() && replay.xi() == oracle.instance().state().xi();
        out.push_back(boolean_report(std::string("replay_") + to_string(a), same, long(qs.size()), seed,
                                     SlackRegime::exact));
    }
    return out;
}

std::vector<CheckReport> run_case2_suite(const Case2SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const std::uint64_t seed = cfg.seed;

    {
        auto ref = ChainInstance::from_tilde(2, 1.0, 2, 1.0, 1.0, 2, 4);
        ChainOptimum a = solve_opt_bruteforce(ref, 1e-12), b = solve_opt_recurrence(ref, 1e-12);
        Vector want(2);
        want << 0.75, 0.25;
        double err = std::max((a.y - want).lpNorm<Eigen::Infinity>(), (b.y - want).lpNorm<Eigen::Infinity>());
        err = std::max(err, (a.y - b.y).lpNorm<Eigen::Infinity>());
        out.push_back(make("reference_optimum", err / 1e-8, 0.0, 1, seed, SlackRegime::exact));
    }

    // random instances: both solvers and the structure checks that hold generally
    const char* required[] = {"monotone_coordinates", "sum_identity", "coordinate_drop", "norm_bound",
                              "backward_recurrence"};
    Rng rng(seed, 31);
    double worst_agree = 0.0;
    long failures = 0;
    for (int i = 0; i < cfg.instances; ++i) {
        ChainInstance inst = random_chain_instance(rng, cfg.max_len);
        ChainOptimum a = solve_opt_bruteforce(inst, 1e-12), b = solve_opt_recurrence(inst, 1e-12);
        worst_agree = std::max(worst_agree, (a.y - b.y).lpNorm<Eigen::Infinity>() / 1e-11);
        for (const ChainOptimum* o : {&a, &b}) {
            LemmaReport rep = verify_chain_optimum(inst, *o);
            for (const char* name : required)
                if (rep.get(name).status == LemmaStatus::fail) ++failures;
        }
    }
    out.push_back(make("solver_agreement", worst_agree, 0.0, cfg.instances, seed, SlackRegime::exact));
    out.push_back(boolean_report("structure_checks", failures == 0, cfg.instances, seed, SlackRegime::exact));

    // regularity of the assembled f on a fully built basis
    ProblemParams params(2, 1.0, 2, 1.0, 96.0, 13);
    ChainInstance chain(params, 1.0, 6, seed);
    for (int i = 0; i < chain.chain_len(); ++i) chain.adversarial_basis_next({});
    double r = 2.0 * std::max(solve_opt_bruteforce(chain).norm_y, 1.0);
    auto dom = ball_sampler(params.dim(), r);
    out.push_back(check_uniform_convexity(
        "uniform_convexity", [&](const Vector& x) { return VectorEstimate{chain.gradient(x), 0.0}; }, params.sigma(),
        params.q(), dom, cfg.pairs, kExactSlack, seed));
    out.push_back(check_holder(
        "holder", 2, [&](const Vector& x) { return chain.hessian(x); }, params.holder_h(), params.nu(), dom, cfg.pairs,
        1e-6, seed));

    // zero-respecting: answers at earlier queries do not depend on later basis vectors
    {
        ChainInstance a(params, 1.0, 6, seed), b(params, 1.0, 6, seed);
        ChainOracle oracle(ChainInstance(params, 1.0, 6, seed));
        RunResult run = run_algorithm(oracle, Algorithm::gradient_descent, 3, Vector(), seed);
        const auto& qs = oracle.queried();
        a = oracle.instance();
        b = oracle.instance();
        b.reseed(seed + 1);
        while (a.basis_size() < a.chain_len()) a.adversarial_basis_next(qs);
        while (b.basis_size() < b.chain_len()) b.adversarial_basis_next(qs);
        bool same = true;
        for (std::size_t t = 0; t < qs.size(); ++t) {
            same = same && a.value(qs[t]) == b.value(qs[t]) && a.gradient(qs[t]) == b.gradient(qs[t]);
        }
        bool differ = (a.basis().back() - b.basis().back()).norm() > 1e-3;
        out.push_back(boolean_report("zero_respecting", same && differ, long(qs.size()), seed, SlackRegime::exact));
    }

    // restarted AGD makes strict progress at every restart
    {
        ChainOracle oracle(ChainInstance(params.with_dim(51), 1.0, 25, seed));
        RunResult run = run_algorithm(oracle, Algorithm::restarted_agd, 24, Vector(), seed);
        bool strict = run.restart_gaps.size() >= 2;
        for (std::size_t i = 1; i < run.restart_gaps.size(); ++i)
            strict = strict && run.restart_gaps[i] < run.restart_gaps[i - 1];
        out.push_back(boolean_report("restart_progress", strict, long(run.restart_gaps.size()), seed,
                                     SlackRegime::exact));
    }
    return out;
}

}  // namespace oraclab
