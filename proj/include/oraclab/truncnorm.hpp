#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oraclab/linalg.hpp"
#include "oraclab/rng.hpp"

namespace oraclab {

// Z(d) = (Phi(1) - Phi(-1))^d
double box_mass(int dim);
// CDF of a standard normal truncated to [-1, 1]
double marginal_cdf(double t);
double marginal_quantile(double u);
// variance of the unit truncated normal, 1 - 2 phi(1) / Z(1)
double marginal_variance();

double ks_statistic(std::span<const double> samples);
// 1% critical value 1.63/sqrt(n)
double ks_critical_1pct(std::size_t n);

// Standard MVN conditioned on the unit l-inf box, scaled by `scale`.
// Coordinates are drawn independently by inverse CDF.
class TruncatedBoxGaussian {
public:
    TruncatedBoxGaussian(int dim, double scale, std::uint64_t seed, std::uint64_t stream = 0);

    int dim() const { return dim_; }
    double scale() const { return scale_; }
    std::uint64_t seed() const { return seed_; }

    Vector draw();
    void draw_into(Eigen::Ref<Vector> out);
    std::vector<Vector> sample(std::size_t count);

private:
    int dim_;
    double scale_;
    std::uint64_t seed_;
    Rng rng_;
};

}  // namespace oraclab
