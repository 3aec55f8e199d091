// oraclab command line: thin layer over the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oraclab/oraclab.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

const std::vector<std::string> kSubcommands = {"sample-check", "verify-case1", "verify-case2",
                                               "race",         "predict",      "solve-chain"};

struct LibError {
    oraclab_status status;
    std::string message;
};

void check(oraclab_status s) {
    if (s != ORACLAB_OK) throw LibError{s, oraclab_last_error()};
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Flat "key = value" file; '#' starts a comment. Keys are flag names without dashes.
std::vector<std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::FileError::Missing(path);
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ConversionError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config")
            throw CLI::ConversionError(path + ":" + std::to_string(lineno) + ": bad key '" + key + "'");
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

// Find --config before parsing so its entries can be spliced in ahead of the
// command-line flags (the last occurrence of an option wins).
std::vector<std::string> expand_argv(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
    }
    if (config.empty()) return args;
    std::vector<std::string> extra = read_config(config);
    std::size_t at = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (std::find(kSubcommands.begin(), kSubcommands.end(), args[i]) != kSubcommands.end()) {
            at = i + 1;
            break;
        }
    }
    args.insert(args.begin() + std::ptrdiff_t(at), extra.begin(), extra.end());
    return args;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw LibError{ORACLAB_E_IO, "cannot open " + path + " for writing"};
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void print_row(const oraclab_check_row* r, void* user) {
    auto& os = *static_cast<std::ostream*>(user);
    os << r->name << ',' << (r->passed ? "true" : "false") << ',' << fmt(r->worst_ratio) << ','
       << fmt(r->slack_used) << ',' << r->samples << ',' << r->seed << ',' << r->regime << "\n";
}

using SuiteFn = oraclab_status (*)(const oraclab_suite_config*, oraclab_row_callback, void*, int*);

int run_suite(SuiteFn fn, const oraclab_suite_config& cfg, const std::string& out) {
    Output o(out);
    o.os() << oraclab_check_csv_header() << "\n";
    int all = 0;
    check(fn(&cfg, print_row, &o.os(), &all));
    o.os().flush();
    return all ? kExitPass : kExitFail;
}

std::string rational(const long long* r) {
    return r[1] == 1 ? std::to_string(r[0]) : std::to_string(r[0]) + "/" + std::to_string(r[1]);
}

struct ProblemFlags {
    int p = 1;
    double nu = 1.0;
    int q = 3;
    double sigma = 1.0;
    double h = 1000.0;

    void add(CLI::App* app) {
        app->add_option("--p", p, "derivative order of the smooth part")->capture_default_str();
        app->add_option("--nu", nu, "Holder exponent in (0, 1]")->capture_default_str();
        app->add_option("--q", q, "uniform convexity degree")->capture_default_str();
        app->add_option("--sigma", sigma, "uniform convexity modulus")->capture_default_str();
        app->add_option("--H", h, "Holder constant")->capture_default_str();
    }
};

int predict(const ProblemFlags& f, double eps, int dim, std::ostream& os) {
    oraclab_params params{f.p, f.nu, f.q, f.sigma, f.h, dim};
    oraclab_case c;
    check(oraclab_classify(&params, &c));
    os << "case," << (c == ORACLAB_HIGH_Q ? "high_q" : "low_q") << "\n";
    if (c == ORACLAB_HIGH_Q) {
        long long e[4];
        double lb;
        check(oraclab_case1_exponents(f.p, f.nu, f.q, e));
        check(oraclab_lower_bound_case1(&params, eps, &lb));
        os << "exponent_h_over_sigma," << rational(e) << "\n";
        os << "exponent_sigma_over_eps," << rational(e + 2) << "\n";
        os << "lower_bound," << fmt(lb) << "\n";
    } else {
        long long e[2];
        double kappa, loglog;
        check(oraclab_case2_exponent(f.p, f.nu, e));
        check(oraclab_lower_bound_case2(&params, eps, &kappa, &loglog));
        os << "exponent_h_over_sigma," << rational(e) << "\n";
        os << "kappa_term," << fmt(kappa) << "\n";
        os << "loglog_term," << fmt(loglog) << "\n";
        os << "lower_bound," << fmt(kappa + loglog) << "\n";
    }
    return kExitPass;
}

struct ChainFlags {
    int p = 2;
    double nu = 1.0;
    int q = 2;
    double gamma = 1.0;
    double sigma_t = 1.0;
    int len = 2;
    int dim = 0;
    std::string snapshot;
};

int solve_chain(const ChainFlags& f, std::uint64_t seed, std::ostream& os) {
    oraclab_chain* h = nullptr;
    check(oraclab_chain_create_tilde(f.p, f.nu, f.q, f.gamma, f.sigma_t, f.len, f.dim > 0 ? f.dim : 2 * f.len, seed,
                                     &h));
    std::unique_ptr<oraclab_chain, void (*)(oraclab_chain*)> guard(h, oraclab_chain_destroy);
    std::vector<double> a(std::size_t(f.len)), b(std::size_t(f.len));
    double ra = 0, rb = 0;
    check(oraclab_chain_solve(h, ORACLAB_SOLVER_NEWTON, a.data(), &ra));
    check(oraclab_chain_solve(h, ORACLAB_SOLVER_RECURRENCE, b.data(), &rb));
    double diff = 0;
    os << "i,y_newton,y_recurrence\n";
    for (int i = 0; i < f.len; ++i) {
        os << i + 1 << ',' << fmt(a[i]) << ',' << fmt(b[i]) << "\n";
        diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    os << "residual," << fmt(ra) << ',' << fmt(rb) << "\n";
    os << "solver_difference," << fmt(diff) << "\n";

    std::vector<oraclab_check> checks(32);
    int n = 0, all = 0;
    check(oraclab_chain_verify(h, ORACLAB_SOLVER_RECURRENCE, checks.data(), int(checks.size()), &n, &all));
    static const char* status[] = {"pass", "fail", "not_applicable"};
    os << "check,status,slack\n";
    for (int i = 0; i < n && i < int(checks.size()); ++i)
        os << checks[i].name << ',' << status[checks[i].status] << ',' << fmt(checks[i].slack) << "\n";
    if (!f.snapshot.empty()) check(oraclab_chain_save(h, f.snapshot.c_str()));
    bool agree = diff <= 1e-8 * std::max(1.0, std::abs(a[0]));
    return agree && all ? kExitPass : kExitFail;
}

// Final gap of each case-1 run against the lower bound, with 3 standard errors.
bool race_gaps_hold(const std::string& csv, double bound, std::ostream& err) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::map<std::string, std::pair<double, double>> last;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
        if (cols.size() < 10) continue;
        last[cols[0] + "," + cols[2]] = {std::stod(cols[7]), std::stod(cols[8])};
    }
    bool ok = true;
    for (const auto& [key, g] : last) {
        if (g.first < bound - 3.0 * g.second) {
            err << "gap below lower bound for run " << key << ": " << fmt(g.first) << " < " << fmt(bound) << "\n";
            ok = false;
        }
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oraclab: resisting-oracle lower-bound laboratory"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::uint64_t seed = 42;
    std::string out, config;
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--out", out, "output file (default stdout)");
    app.add_option("--config", config, "flat key = value file; flags override it");
    app.fallthrough();

    oraclab_suite_config suite;
    oraclab_suite_defaults(&suite);

    auto* sample = app.add_subcommand("sample-check", "truncated-normal sampler statistics");
    sample->add_option("--draws", suite.draws, "sampler draws")->capture_default_str();
    sample->add_option("--box-draws", suite.box_draws, "normal draws per box-mass estimate")->capture_default_str();
    sample->add_option("--dim", suite.sample_dim, "sampler dimension")->capture_default_str();

    auto* v1 = app.add_subcommand("verify-case1", "checks on the smoothed max-function instance");
    v1->add_option("--p", suite.p)->capture_default_str();
    v1->add_option("--nu", suite.nu)->capture_default_str();
    v1->add_option("--q", suite.q)->capture_default_str();
    v1->add_option("--sigma", suite.sigma)->capture_default_str();
    v1->add_option("--H", suite.holder_h)->capture_default_str();
    v1->add_option("--dim", suite.dim, "dimension and step budget")->capture_default_str();
    v1->add_option("--pairs", suite.pairs)->capture_default_str();
    v1->add_option("--samples", suite.samples, "smoothing draws")->capture_default_str();

    auto* v2 = app.add_subcommand("verify-case2", "checks on the chain instance");
    v2->add_option("--instances", suite.instances, "random chain instances")->capture_default_str();
    v2->add_option("--pairs", suite.pairs)->capture_default_str();
    v2->add_option("--max-len", suite.max_len, "longest random chain")->capture_default_str();

    oraclab_race_config race;
    oraclab_race_defaults(&race);
    std::string instance = "case1", algorithm = "all", trajectory;
    auto* rc = app.add_subcommand("race", "run algorithms against the adversary and write run records");
    rc->add_option("--instance", instance)->check(CLI::IsMember({"case1", "case2"}))->capture_default_str();
    rc->add_option("--algorithm", algorithm, "name, comma list or all")->capture_default_str();
    // case2 falls back to p=2, nu=1, q=2 unless these are given
    auto* race_p = rc->add_option("--p", race.p)->capture_default_str();
    auto* race_nu = rc->add_option("--nu", race.nu)->capture_default_str();
    auto* race_q = rc->add_option("--q", race.q)->capture_default_str();
    rc->add_option("--sigma", race.sigma)->capture_default_str();
    rc->add_option("--H", race.holder_h)->capture_default_str();
    rc->add_option("--dim", race.dim)->capture_default_str();
    rc->add_option("--steps", race.steps, "0 picks the instance default")->capture_default_str();
    rc->add_option("--samples", race.samples)->capture_default_str();
    rc->add_option("--gamma", race.gamma)->capture_default_str();
    rc->add_option("--len", race.chain_len, "chain length, 0 picks steps + 1")->capture_default_str();
    rc->add_option("--trajectory", trajectory, "also write per-step points here");

    ProblemFlags pf;
    double eps = 1e-6;
    int pdim = 1;
    auto* pr = app.add_subcommand("predict", "lower-bound formulas");
    pf.add(pr);
    pr->add_option("--eps", eps, "target accuracy")->capture_default_str();
    pr->add_option("--dim", pdim)->capture_default_str();

    ChainFlags cf;
    auto* sc = app.add_subcommand("solve-chain", "chain optimum from both solvers plus structure checks");
    sc->add_option("--p", cf.p)->capture_default_str();
    sc->add_option("--nu", cf.nu)->capture_default_str();
    sc->add_option("--q", cf.q)->capture_default_str();
    sc->add_option("--gamma", cf.gamma)->capture_default_str();
    sc->add_option("--sigma-tilde", cf.sigma_t)->capture_default_str();
    sc->add_option("--len", cf.len)->capture_default_str();
    sc->add_option("--dim", cf.dim, "0 picks 2 len")->capture_default_str();
    sc->add_option("--snapshot", cf.snapshot, "save the instance here");

    try {
        std::vector<std::string> args = expand_argv(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int rc_code = app.exit(e);
        return rc_code == 0 ? kExitPass : kExitUsage;
    }

    try {
        suite.seed = seed;
        if (*sample) return run_suite(oraclab_run_sample_check, suite, out);
        if (*v1) return run_suite(oraclab_run_verify_case1, suite, out);
        if (*v2) return run_suite(oraclab_run_verify_case2, suite, out);
        if (*pr) {
            Output o(out);
            return predict(pf, eps, pdim, o.os());
        }
        if (*sc) {
            Output o(out);
            return solve_chain(cf, seed, o.os());
        }
        if (*rc) {
            race.instance = instance == "case2" ? ORACLAB_INSTANCE_CASE2 : ORACLAB_INSTANCE_CASE1;
            if (race.instance == ORACLAB_INSTANCE_CASE2) {
                if (!race_p->count()) race.p = 2;
                if (!race_nu->count()) race.nu = 1.0;
                if (!race_q->count()) race.q = 2;
            }
            race.algorithms = algorithm.c_str();
            race.seed = seed;
            char* csv = nullptr;
            char* traj = nullptr;
            check(oraclab_race(&race, &csv, trajectory.empty() ? nullptr : &traj));
            std::string text(csv), ttext(traj ? traj : "");
            oraclab_free_string(csv);
            oraclab_free_string(traj);
            {
                Output o(out);
                o.os() << text;
            }
            if (!trajectory.empty()) {
                Output t(trajectory);
                t.os() << ttext;
            }
            int budget = race.steps > 0 ? race.steps : race.dim;
            if (race.instance == ORACLAB_INSTANCE_CASE1 && budget == race.dim) {
                oraclab_params params{race.p, race.nu, race.q, race.sigma, race.holder_h, race.dim};
                double bound;
                check(oraclab_gap_lower_bound(&params, budget, &bound));
                return race_gaps_hold(text, bound, std::cerr) ? kExitPass : kExitFail;
            }
            return kExitPass;
        }
    } catch (const LibError& e) {
        std::cerr << "error (" << oraclab_status_name(e.status) << "): " << e.message << "\n";
        bool usage = e.status == ORACLAB_E_INVALID_ARGUMENT || e.status == ORACLAB_E_UNSUPPORTED_CASE;
        return usage ? kExitUsage : kExitFail;
    }
    return kExitUsage;
}
