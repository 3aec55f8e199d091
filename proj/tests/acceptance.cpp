// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oraclab/chain.hpp"
#include "oraclab/lab.hpp"
#include "oraclab/nemirovski.hpp"
#include "oraclab/suites.hpp"
#include "oraclab/truncnorm.hpp"

using namespace oraclab;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
    bool ok = true;
    std::string detail;
    void add(bool pass, const std::string& what) {
        ok = ok && pass;
        if (!pass || detail.size() < 1200) {
            if (!detail.empty()) detail += "; ";
            detail += what + (pass ? "" : " [fail]");
        }
    }
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

ResistingState full_state(int dim, int budget, double delta, std::uint64_t seed) {
    Rng rng(seed, 11);
    ResistingState s(dim, budget, delta);
    Vector x(dim);
    while (s.step() < budget) {
        for (int i = 0; i < dim; ++i) x[i] = rng.normal();
        s.advance(x);
    }
    return s;
}

Outcome marginal_law() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    const int d = 3, n = 100000;
    TruncatedBoxGaussian gen(d, 1.0, kSeed);
    std::vector<std::vector<double>> cols(d);
    Vector v(d);
    for (int i = 0; i < n; ++i) {
        gen.draw_into(v);
        for (int j = 0; j < d; ++j) cols[j].push_back(v[j]);
    }
    for (int j = 0; j < d; ++j) {
        double ks = ks_statistic(cols[j]);
        o.add(ks < 0.00516, "KS coord " + std::to_string(j + 1) + " = " + num(ks));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.add(secs < 5.0, "runtime " + num(secs) + " s");
    return o;
}

Outcome box_mass_match() {
    Outcome o;
    for (int d : {1, 3, 5}) {
        CheckReport r = box_mass_report(d, 1000000, kSeed);
        o.add(r.passed, "d=" + std::to_string(d) + " |est-Z|/3SE = " + num(r.worst_ratio));
    }
    o.add(std::abs(box_mass(1) - 0.68269) < 5e-5, "Z(1) = " + num(box_mass(1)));
    return o;
}

Outcome sandwich() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (int p : {1, 2})
        for (int d : {4, 16}) {
            ProblemParams params(p, 1.0, p + 2, 1.0, 1000.0, d);
            HardInstanceCase1 inst(params, d, 4096, kSeed);
            inst.state() = full_state(d, d, inst.schedule().delta, kSeed);
            CheckReport r = check_sandwich("sandwich", inst.smoothed(), ball_sampler(d, inst.schedule().cap_d), 100,
                                           kSeMultiplier, kSeed);
            o.add(r.passed, "p=" + std::to_string(p) + " d=" + std::to_string(d) + " ratio " + num(r.worst_ratio));
        }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.add(secs < 30.0, "runtime " + num(secs) + " s");
    return o;
}

Outcome smoothness() {
    Outcome o;
    const int d = 16;
    for (double rho : {0.05, 0.2}) {
        ResistingState g = full_state(d, d, 2 * rho, kSeed);
        SmoothedOracle s(g, rho, 1, 4096, kSeed);
        double l = empirical_smoothness(s, 10000, 4 * rho, kSeed);
        o.add(l <= 2.0 / rho * 1.05, "rho=" + num(rho) + " sup/(2/rho) = " + num(l * rho / 2));
    }
    return o;
}

struct GridRun {
    int t;
    std::vector<RunResult> runs;
    double bound;
    double seconds;
};

std::vector<GridRun> case1_grid() {
    std::vector<GridRun> out;
    for (int t : {9, 16, 25}) {
        auto t0 = std::chrono::steady_clock::now();
        RaceConfig cfg;
        cfg.p = 1;
        cfg.nu = 1.0;
        cfg.q = 3;
        cfg.dim = t;
        cfg.seed = kSeed;
        RaceOutput race = run_race(cfg);
        ProblemParams params(1, 1.0, 3, 1.0, cfg.holder_h, t);
        double bound = gap_lower_bound(schedule_case1(params, t), params);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back({t, std::move(race.runs), bound, secs});
    }
    return out;
}

Outcome oracle_exactness(const std::vector<GridRun>& grid) {
    Outcome o;
    long total = 0;
    for (const auto& g : grid) {
        ProblemParams params(1, 1.0, 3, 1.0, 1000.0, g.t);
        double delta = schedule_case1(params, g.t).delta;
        for (const auto& run : g.runs) {
            std::vector<Vector> qs;
            for (const auto& tr : run.trajectory) qs.push_back(tr.x);
            CheckReport r = indistinguishability_report("x", qs, g.t, g.t, delta, 16, kSeed);
            total += r.samples;
            if (!r.passed) o.add(false, "T=" + std::to_string(g.t) + " " + run.records.front().algorithm);
            // recorded choices match a replay of the recorded queries
            ResistingState replay = replay_trajectory(qs, g.t, g.t, delta);
            for (std::size_t s = 0; s < run.trajectory.size(); ++s) {
                const auto& tr = run.trajectory[s];
                if (tr.alpha != replay.alpha()[s] || tr.xi != replay.xi()[s]) {
                    o.add(false, "replay mismatch T=" + std::to_string(g.t));
                    break;
                }
            }
        }
    }
    o.add(true, std::to_string(total) + " points checked bitwise");
    return o;
}

Outcome gap_bound(const std::vector<GridRun>& grid) {
    Outcome o;
    for (const auto& g : grid) {
        double worst = INFINITY;
        for (const auto& run : g.runs) {
            const RunRecord& last = run.records.back();
            bool ok = last.gap >= g.bound - 3 * last.gap_se;
            worst = std::min(worst, last.gap / g.bound);
            if (!ok) o.add(false, "T=" + std::to_string(g.t) + " " + last.algorithm + " gap " + num(last.gap));
        }
        o.add(g.seconds < 120.0, "T=d=" + std::to_string(g.t) + " min gap/bound " + num(worst) + " in " +
                                     num(g.seconds) + " s");
    }
    return o;
}

Outcome chain_reference() {
    Outcome o;
    auto inst = ChainInstance::from_tilde(2, 1.0, 2, 1.0, 1.0, 2, 4);
    ChainOptimum a = solve_opt_bruteforce(inst), b = solve_opt_recurrence(inst);
    Vector want(2);
    want << 0.75, 0.25;
    double ea = (a.y - want).lpNorm<Eigen::Infinity>(), eb = (b.y - want).lpNorm<Eigen::Infinity>();
    double ab = (a.y - b.y).lpNorm<Eigen::Infinity>();
    o.add(ea <= 1e-8, "newton error " + num(ea));
    o.add(eb <= 1e-8, "recurrence error " + num(eb));
    o.add(ab <= 1e-8, "solver difference " + num(ab));
    return o;
}

Outcome chain_structure() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(kSeed, 31);
    const char* asserted[] = {"monotone_coordinates", "sum_identity", "coordinate_drop", "norm_bound",
                              "backward_recurrence"};
    int checked = 0;
    for (int i = 0; i < 20; ++i) {
        ChainInstance inst = random_chain_instance(rng, 12);
        for (auto solver : {&solve_opt_bruteforce, &solve_opt_recurrence}) {
            LemmaReport rep = verify_chain_optimum(inst, solver(inst, 1e-12));
            for (const char* name : asserted) {
                const LemmaCheck& c = rep.get(name);
                if (c.status == LemmaStatus::not_applicable) continue;
                ++checked;
                if (c.status == LemmaStatus::fail)
                    o.add(false, std::string(name) + " instance " + std::to_string(i) + " slack " + num(c.slack));
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.add(true, std::to_string(checked) + " inequalities on 20 instances x 2 solvers");
    o.add(secs < 60.0, "runtime " + num(secs) + " s");
    return o;
}

Outcome exponents() {
    Outcome o;
    Rational e2 = case2_exponent(2, Rational(1));
    o.add(e2 == Rational(2, 7), "case-2 (p=2,nu=1) exponent " + std::to_string(e2.numerator()) + "/" +
                                    std::to_string(e2.denominator()));
    bool family = true;
    for (int p = 1; p <= 10; ++p) family = family && case2_exponent(p, Rational(1)) == Rational(2, 3 * p + 1);
    o.add(family, "nu=1 family equals 2/(3p+1) for p=1..10");
    Case1Exponents e1 = case1_exponents(1, Rational(1), 3);
    o.add(e1.h_over_sigma == Rational(1, 2) && e1.sigma_over_eps == Rational(1, 6), "case-1 (1,1,3) exponents (1/2, 1/6)");
    return o;
}

Outcome regularity(std::vector<std::string>& notes) {
    Outcome o;
    const int pairs = 1000;

    // smoothed max-function instance, q = 2 so the modulus is exact
    ProblemParams p1(1, 0.5, 2, 1.0, 1000.0, 16);
    HardInstanceCase1 inst(p1, 16, 4096, kSeed);
    const auto& s = inst.schedule();
    inst.state() = full_state(16, 16, s.delta, kSeed);
    auto near = ball_sampler(16, 20.0 * s.rho * 4.0);
    auto whole = ball_sampler(16, s.cap_d);
    auto grad1 = [&](const Vector& x) { return inst.f_gradient(x); };
    auto d1 = [&](const Vector& x) { return Matrix(inst.f_gradient(x).value); };
    auto lin = [](const Vector& x) { return VectorEstimate{Vector::Ones(x.size()), 0.0}; };

    std::vector<std::pair<CheckReport, bool>> rows;  // (report, expected to pass)
    for (const auto& dom : {near, whole}) {
        rows.push_back({check_uniform_convexity("case1_uniform_convexity", grad1, 1.0, 2, dom, pairs, kExactSlack, kSeed), true});
        rows.push_back({check_holder("case1_holder", 1, d1, p1.holder_h(), p1.nu(), dom, pairs, kSupremumSlack, kSeed), true});
    }
    rows.push_back({check_lipschitz(
                        "g_lipschitz", [&](const Vector& x) { return ScalarEstimate{inst.state().value(x), 0.0}; },
                        1.0, near, pairs, 1e-12, NormKind::linf, kSeed),
                    true});

    // chain instance (p=2, nu=1, q=2)
    ProblemParams p2(2, 1.0, 2, 1.0, 96.0, 13);
    ChainInstance chain(p2, 1.0, 6, kSeed);
    for (int i = 0; i < 6; ++i) chain.adversarial_basis_next({});
    auto cdom = ball_sampler(13, 2.0 * std::max(1.0, solve_opt_bruteforce(chain).norm_y));
    auto cgrad = [&](const Vector& x) { return VectorEstimate{chain.gradient(x), 0.0}; };
    auto chess = [&](const Vector& x) { return chain.hessian(x); };
    rows.push_back({check_uniform_convexity("chain_uniform_convexity", cgrad, p2.sigma(), 2, cdom, pairs, kExactSlack, kSeed), true});
    rows.push_back({check_holder("chain_holder", 2, chess, p2.holder_h(), 1.0, cdom, pairs, 1e-6, kSeed), true});

    // negative controls
    rows.push_back({check_uniform_convexity("neg_linear_uniform_convexity", lin, 1.0, 2, near, pairs, kExactSlack, kSeed), false});
    rows.push_back({check_uniform_convexity("neg_case1_double_sigma", grad1, 2.0, 2, whole, pairs, kExactSlack, kSeed), false});
    rows.push_back({check_uniform_convexity("neg_chain_double_sigma", cgrad, 2.0 * p2.sigma(), 2, cdom, pairs, kExactSlack, kSeed), false});
    rows.push_back({check_holder("neg_case1_half_h", 1, d1, 0.5 * p1.holder_h(), p1.nu(), whole, pairs, kSupremumSlack, kSeed), false});
    rows.push_back({check_holder("neg_chain_h_over_20", 2, chess, p2.holder_h() / 20, 1.0, cdom, pairs, 1e-6, kSeed), false});
    rows.push_back({check_lipschitz(
                        "neg_g_half_lipschitz",
                        [&](const Vector& x) { return ScalarEstimate{inst.state().value(x), 0.0}; }, 0.5, near, pairs,
                        1e-12, NormKind::linf, kSeed),
                    false});
    // sandwich control calibrated at half the largest measured gap
    double gap = max_sandwich_gap(inst.smoothed(), near, 100, kSeed);
    rows.push_back({check_sandwich("neg_sandwich_calibrated", inst.smoothed(), near, 100, kSeMultiplier, kSeed, 0.5 * gap), false});

    for (const auto& [r, expect] : rows) {
        bool ok = r.passed == expect;
        o.add(ok, r.name + (expect ? " passes " : " fails ") + num(r.worst_ratio));
    }

    // informational: the cubic modulus in gradient-monotone form
    ProblemParams p3(1, 1.0, 3, 1.0, 1000.0, 16);
    HardInstanceCase1 inst3(p3, 16, 4096, kSeed);
    inst3.state() = full_state(16, 16, inst3.schedule().delta, kSeed);
    auto grad3 = [&](const Vector& x) { return inst3.f_gradient(x); };
    auto dom3 = ball_sampler(16, inst3.schedule().cap_d);
    CheckReport a = check_uniform_convexity("q3_sigma", grad3, 1.0, 3, dom3, pairs, kExactSlack, kSeed);
    CheckReport b = check_uniform_convexity("q3_half_sigma", grad3, 0.5, 3, dom3, pairs, kExactSlack, kSeed);
    notes.push_back("info: q=3 uniform convexity with sigma " + std::string(a.passed ? "passes" : "fails") + " (ratio " +
                    num(a.worst_ratio) + "), with sigma/2 " + (b.passed ? "passes" : "fails") + " (ratio " +
                    num(b.worst_ratio) + ")");
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* title, const Outcome& o) {
        std::printf("criterion %d %s: %s (%s)\n", id, title, o.ok ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        if (!o.ok) ++failures;
    };
    report(1, "marginal law", marginal_law());
    report(2, "box mass", box_mass_match());
    report(3, "sandwich", sandwich());
    report(4, "smoothness", smoothness());
    std::vector<GridRun> grid = case1_grid();
    report(5, "resisting-oracle exactness", oracle_exactness(grid));
    report(6, "gap bound", gap_bound(grid));
    report(7, "chain reference optimum", chain_reference());
    report(8, "chain structure", chain_structure());
    report(9, "exponent reductions", exponents());
    std::vector<std::string> notes;
    report(10, "regularity audits", regularity(notes));
    for (const auto& n : notes) std::printf("%s\n", n.c_str());
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures ? 1 : 0;
}
