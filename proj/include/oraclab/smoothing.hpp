#pragma once

#include <cstdint>
#include <vector>

#include "oraclab/linalg.hpp"

namespace oraclab {

// Convex function with an exact value and a deterministic subgradient selection.
class BaseFunction {
public:
    virtual ~BaseFunction() = default;
    virtual int dim() const = 0;
    virtual double value(const Vector& x) const = 0;
    virtual Vector subgradient(const Vector& x) const = 0;
    // allocation-free variant for the smoothing loop; out is already sized
    virtual void subgradient_into(const Vector& x, Vector& out) const { out = subgradient(x); }
};

struct ScalarEstimate {
    double value;
    double std_err;
};

struct VectorEstimate {
    Vector value;
    double std_err;  // per-coordinate standard errors combined in l2
};

inline constexpr int kDefaultSmoothingSamples = 4096;

// Monte-Carlo estimate of the p-fold truncated Gaussian smoothing of `base`
// with a frozen draw set: every draw is the sum of p independent box draws of
// radius rho. Because the draws never change, the estimator is itself a convex,
// L-Lipschitz, deterministic function of x.
//
// The base is borrowed and must outlive the oracle.
class SmoothedOracle {
public:
    SmoothedOracle(const BaseFunction& base, double rho, int iterations, int samples, std::uint64_t seed,
                   double lipschitz_l = 1.0);

    ScalarEstimate value(const Vector& x) const;
    VectorEstimate gradient(const Vector& x) const;

    const BaseFunction& base() const { return *base_; }
    double rho() const { return rho_; }
    int iterations() const { return iterations_; }
    int samples() const { return int(draws_.cols()); }
    std::uint64_t seed() const { return seed_; }
    double lipschitz_l() const { return lipschitz_l_; }
    int dim() const { return int(draws_.rows()); }
    // column k is the k-th frozen perturbation
    const Matrix& frozen_draws() const { return draws_; }

private:
    const BaseFunction* base_;
    double rho_;
    int iterations_;
    std::uint64_t seed_;
    double lipschitz_l_;
    Matrix draws_;
};

// max over sampled pairs in the ball of ||grad(x) - grad(y)|| / ||x - y||
double empirical_smoothness(const SmoothedOracle& oracle, int pairs, double radius, std::uint64_t seed,
                            const Vector* center = nullptr);

}  // namespace oraclab
