#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "oraclab/linalg.hpp"
#include "oraclab/rng.hpp"
#include "oraclab/smoothing.hpp"

namespace oraclab {

enum class NormKind { l2, linf };

// Slack regimes: exact oracles get 1e-9, Monte-Carlo oracles get a multiple of
// their standard error, empirical suprema get 5%.
enum class SlackRegime { exact, monte_carlo, empirical_supremum };
const char* to_string(SlackRegime r);

inline constexpr double kExactSlack = 1e-9;
inline constexpr double kSupremumSlack = 0.05;
inline constexpr double kSeMultiplier = 3.0;

struct CheckReport {
    std::string name;
    bool passed = false;
    double worst_ratio = 0.0;
    double slack_used = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
    SlackRegime regime = SlackRegime::exact;
};

std::string check_csv_header();
std::string to_csv_row(const CheckReport& r);

using DomainSampler = std::function<Vector(Rng&)>;
// uniform in the l2 ball
DomainSampler ball_sampler(int dim, double radius, Vector center = Vector());

using ValueOracle = std::function<ScalarEstimate(const Vector&)>;
using GradientOracle = std::function<VectorEstimate(const Vector&)>;
// p-th derivative as a matrix: p = 1 a d x 1 column, p = 2 the d x d Hessian
using DerivativeOracle = std::function<Matrix(const Vector&)>;
// p-th directional derivative D^p f(x)[u, ..., u]
using DirectionalOracle = std::function<double(const Vector& x, const Vector& u)>;

// Largest |eigenvalue| of a symmetric matrix by power iteration.
double symmetric_operator_norm(const Matrix& a, int max_iter = 20000, double tol = 1e-13);

CheckReport check_lipschitz(std::string name, const ValueOracle& f, double l_bound, const DomainSampler& sampler,
                            int pairs, double slack, NormKind norm, std::uint64_t seed,
                            double se_mult = kSeMultiplier);

CheckReport check_uniform_convexity(std::string name, const GradientOracle& grad, double sigma, int q,
                                    const DomainSampler& sampler, int pairs, double slack, std::uint64_t seed,
                                    double se_mult = kSeMultiplier);

// order 1 compares gradients in l2, order 2 compares Hessians in operator norm
CheckReport check_holder(std::string name, int order, const DerivativeOracle& deriv, double h_bound, double nu,
                         const DomainSampler& sampler, int pairs, double slack, std::uint64_t seed);

// Any order: random unit probe directions, so the result only lower-bounds the
// true tensor-norm ratio.
CheckReport check_holder_directional(std::string name, const DirectionalOracle& deriv, double h_bound, double nu,
                                     const DomainSampler& sampler, int pairs, int probes, double slack,
                                     std::uint64_t seed);

// base - k se <= S(x) <= base + c L rho sqrt(d) + k se. c defaults to 5p/4.
CheckReport check_sandwich(std::string name, const SmoothedOracle& smoothed, const DomainSampler& sampler,
                           int points, double se_mult, std::uint64_t seed, double upper_constant = -1.0);

// largest observed S(x) - base(x), in units of L rho sqrt(d); used to calibrate
// negative controls for the sandwich check
double max_sandwich_gap(const SmoothedOracle& smoothed, const DomainSampler& sampler, int points,
                        std::uint64_t seed);

}  // namespace oraclab
