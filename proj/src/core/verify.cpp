#include "oraclab/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "oraclab/error.hpp"

namespace oraclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double distance(const Vector& x, const Vector& y, NormKind norm) {
    return norm == NormKind::l2 ? (x - y).norm() : (x - y).lpNorm<Eigen::Infinity>();
}

CheckReport finish(std::string name, double worst, double slack, long samples, std::uint64_t seed,
                   SlackRegime regime) {
    if (samples == 0) fail(Errc::invalid_argument, "degenerate sampler: every pair had zero distance");
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

Vector random_unit(int d, Rng& rng) {
    Vector u(d);
    do {
        for (int i = 0; i < d; ++i) u[i] = rng.normal();
    } while (u.norm() == 0.0);
    return u / u.norm();
}

}  // namespace

const char* to_string(SlackRegime r) {
    switch (r) {
        case SlackRegime::exact: return "exact";
        case SlackRegime::monte_carlo: return "monte_carlo";
        case SlackRegime::empirical_supremum: return "empirical_supremum";
    }
    return "?";
}

std::string check_csv_header() { return "name,passed,worst_ratio,slack_used,samples,seed,regime"; }

std::string to_csv_row(const CheckReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%ld,%llu,%s", r.name.c_str(), r.passed ? "true" : "false",
                  r.worst_ratio, r.slack_used, r.samples, static_cast<unsigned long long>(r.seed),
                  to_string(r.regime));
    return buf;
}

DomainSampler ball_sampler(int dim, double radius, Vector center) {
    require(dim >= 1, "dim must be >= 1");
    require(radius > 0.0, "ball radius must be positive");
    if (center.size() == 0) center = Vector::Zero(dim);
    require(center.size() == dim, "ball center has the wrong dimension");
    return [dim, radius, center](Rng& rng) {
        Vector u = random_unit(dim, rng);
        double r = radius * std::pow(rng.uniform(), 1.0 / dim);
        return Vector(center + r * u);
    };
}

double symmetric_operator_norm(const Matrix& a, int max_iter, double tol) {
    require(a.rows() == a.cols(), "operator norm needs a square matrix");
    const int d = int(a.rows());
    if (d == 0 || a.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    Rng start(0x5eedULL);
    Vector v = random_unit(d, start);
    double lam = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        // iterate on A^2 so +lambda and -lambda do not make the estimate oscillate
        Vector w = a * (a * v);
        double n = w.norm();
        if (n == 0.0) return 0.0;
        double next = std::sqrt(n);
        v = w / n;
        if (it > 2 && std::abs(next - lam) <= tol * next) return next;
        lam = next;
    }
    fail(Errc::not_converged, "power iteration did not converge");
}

CheckReport check_lipschitz(std::string name, const ValueOracle& f, double l_bound, const DomainSampler& sampler,
                            int pairs, double slack, NormKind norm, std::uint64_t seed, double se_mult) {
    require(pairs >= 1, "pairs must be >= 1");
    require(l_bound > 0.0, "Lipschitz bound must be positive");
    Rng rng(seed);
    double worst = 0.0;
    long used = 0;
    bool noisy = false;
    for (int i = 0; i < pairs; ++i) {
        Vector x = sampler(rng), y = sampler(rng);
        double dist = distance(x, y, norm);
        if (dist == 0.0) continue;
        ScalarEstimate fx = f(x), fy = f(y);
        noisy = noisy || fx.std_err > 0.0 || fy.std_err > 0.0;
        double allowed = l_bound * dist + se_mult * (fx.std_err + fy.std_err);
        worst = std::max(worst, std::abs(fx.value - fy.value) / allowed);
        ++used;
    }
    return finish(std::move(name), worst, slack, used, seed, noisy ? SlackRegime::monte_carlo : SlackRegime::exact);
}

CheckReport check_uniform_convexity(std::string name, const GradientOracle& grad, double sigma, int q,
                                    const DomainSampler& sampler, int pairs, double slack, std::uint64_t seed,
                                    double se_mult) {
    require(pairs >= 1, "pairs must be >= 1");
    require(sigma > 0.0 && q >= 2, "need sigma > 0 and q >= 2");
    Rng rng(seed);
    double worst = 0.0;
    long used = 0;
    bool noisy = false;
    for (int i = 0; i < pairs; ++i) {
        Vector x = sampler(rng), y = sampler(rng);
        Vector d = x - y;
        double dist = d.norm();
        if (dist == 0.0) continue;
        VectorEstimate gx = grad(x), gy = grad(y);
        noisy = noisy || gx.std_err > 0.0 || gy.std_err > 0.0;
        double inner = (gx.value - gy.value).dot(d) + se_mult * (gx.std_err + gy.std_err) * dist;
        double need = sigma * std::pow(dist, q);
        double ratio = inner > 0.0 ? need / inner : kInf;
        worst = std::max(worst, ratio);
        ++used;
    }
    return finish(std::move(name), worst, slack, used, seed, noisy ? SlackRegime::monte_carlo : SlackRegime::exact);
}

CheckReport check_holder(std::string name, int order, const DerivativeOracle& deriv, double h_bound, double nu,
                         const DomainSampler& sampler, int pairs, double slack, std::uint64_t seed) {
    require(order == 1 || order == 2, "check_holder evaluates orders 1 and 2; use check_holder_directional");
    require(pairs >= 1, "pairs must be >= 1");
    require(h_bound > 0.0 && nu > 0.0 && nu <= 1.0, "need H > 0 and nu in (0, 1]");
    Rng rng(seed);
    double worst = 0.0;
    long used = 0;
    for (int i = 0; i < pairs; ++i) {
        Vector x = sampler(rng), y = sampler(rng);
        double dist = (x - y).norm();
        if (dist == 0.0) continue;
        Matrix diff = deriv(x) - deriv(y);
        double num = order == 1 ? diff.norm() : symmetric_operator_norm(diff);
        worst = std::max(worst, num / (h_bound * std::pow(dist, nu)));
        ++used;
    }
    SlackRegime regime = slack <= kExactSlack ? SlackRegime::exact : SlackRegime::empirical_supremum;
    return finish(std::move(name), worst, slack, used, seed, regime);
}

CheckReport check_holder_directional(std::string name, const DirectionalOracle& deriv, double h_bound, double nu,
                                     const DomainSampler& sampler, int pairs, int probes, double slack,
                                     std::uint64_t seed) {
    require(pairs >= 1 && probes >= 1, "pairs and probes must be >= 1");
    Rng rng(seed);
    double worst = 0.0;
    long used = 0;
    for (int i = 0; i < pairs; ++i) {
        Vector x = sampler(rng), y = sampler(rng);
        double dist = (x - y).norm();
        if (dist == 0.0) continue;
        for (int j = 0; j < probes; ++j) {
            Vector u = random_unit(int(x.size()), rng);
            double num = std::abs(deriv(x, u) - deriv(y, u));
            worst = std::max(worst, num / (h_bound * std::pow(dist, nu)));
        }
        ++used;
    }
    SlackRegime regime = slack <= kExactSlack ? SlackRegime::exact : SlackRegime::empirical_supremum;
    return finish(std::move(name), worst, slack, used, seed, regime);
}

CheckReport check_sandwich(std::string name, const SmoothedOracle& smoothed, const DomainSampler& sampler,
                           int points, double se_mult, std::uint64_t seed, double upper_constant) {
    require(points >= 1, "points must be >= 1");
    if (upper_constant < 0.0) upper_constant = 1.25 * smoothed.iterations();
    const double width = upper_constant * smoothed.lipschitz_l() * smoothed.rho() * std::sqrt(double(smoothed.dim()));
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        Vector x = sampler(rng);
        double b = smoothed.base().value(x);
        ScalarEstimate s = smoothed.value(x);
        // rounding allowance so an exact oracle with zero error does not fail on ties
        double tiny = 1e-12 * (1.0 + std::abs(b));
        double low = (b - s.value) / (se_mult * s.std_err + tiny);
        double high = (s.value - b) / (width + se_mult * s.std_err + tiny);
        worst = std::max({worst, low, high});
    }
    return finish(std::move(name), worst, 0.0, points, seed, SlackRegime::monte_carlo);
}

double max_sandwich_gap(const SmoothedOracle& smoothed, const DomainSampler& sampler, int points,
                        std::uint64_t seed) {
    const double unit = smoothed.lipschitz_l() * smoothed.rho() * std::sqrt(double(smoothed.dim()));
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        Vector x = sampler(rng);
        worst = std::max(worst, (smoothed.value(x).value - smoothed.base().value(x)) / unit);
    }
    return worst;
}

}  // namespace oraclab
