#include "oraclab/smoothing.hpp"

#include <cmath>

#include "oraclab/error.hpp"
#include "oraclab/rng.hpp"
#include "oraclab/truncnorm.hpp"
#include "oraclab/verify.hpp"

namespace oraclab {

SmoothedOracle::SmoothedOracle(const BaseFunction& base, double rho, int iterations, int samples,
                               std::uint64_t seed, double lipschitz_l)
    : base_(&base), rho_(rho), iterations_(iterations), seed_(seed), lipschitz_l_(lipschitz_l) {
    require(rho > 0.0 && std::isfinite(rho), "rho must be positive");
    require(iterations >= 1, "smoothing iterations must be >= 1");
    require(samples >= 2, "need at least two smoothing samples");
    const int d = base.dim();
    draws_ = Matrix::Zero(d, samples);
    // one generator stream per smoothing layer
    Vector tmp(d);
    for (int layer = 0; layer < iterations; ++layer) {
        TruncatedBoxGaussian gen(d, rho, seed, std::uint64_t(layer));
        for (int k = 0; k < samples; ++k) {
            gen.draw_into(tmp);
            draws_.col(k) += tmp;
        }
    }
}

ScalarEstimate SmoothedOracle::value(const Vector& x) const {
    require(x.size() == dim(), "dimension mismatch in smoothed value");
    const int n = samples();
    Vector shifted(x.size());
    // Welford keeps the variance stable when values sit far from zero
    double mean = 0.0, m2 = 0.0;
    for (int k = 0; k < n; ++k) {
        shifted = x + draws_.col(k);
        double v = base_->value(shifted);
        double delta = v - mean;
        mean += delta / (k + 1);
        m2 += delta * (v - mean);
    }
    double var = m2 / (n - 1);
    return {mean, std::sqrt(var / n)};
}

VectorEstimate SmoothedOracle::gradient(const Vector& x) const {
    require(x.size() == dim(), "dimension mismatch in smoothed gradient");
    const int n = samples();
    const int d = dim();
    Vector shifted(d), g(d), delta(d), mean = Vector::Zero(d), m2 = Vector::Zero(d);
    for (int k = 0; k < n; ++k) {
        shifted = x + draws_.col(k);
        base_->subgradient_into(shifted, g);
        delta = g - mean;
        mean += delta / double(k + 1);
        m2.array() += delta.array() * (g - mean).array();
    }
    double se2 = m2.sum() / (double(n - 1) * n);
    return {mean, std::sqrt(std::max(se2, 0.0))};
}

double empirical_smoothness(const SmoothedOracle& oracle, int pairs, double radius, std::uint64_t seed,
                            const Vector* center) {
    require(pairs >= 1, "pairs must be >= 1");
    const int d = oracle.dim();
    Vector c = center ? *center : Vector::Zero(d);
    auto sampler = ball_sampler(d, radius, c);
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        Vector x = sampler(rng), y = sampler(rng);
        double dist = (x - y).norm();
        if (dist == 0.0) continue;
        Vector gx = oracle.gradient(x).value, gy = oracle.gradient(y).value;
        worst = std::max(worst, (gx - gy).norm() / dist);
    }
    return worst;
}

}  // namespace oraclab
