#include "oraclab/truncnorm.hpp"

#include <algorithm>
#include <cmath>

#include "oraclab/error.hpp"
#include "oraclab/special.hpp"

namespace oraclab {

namespace {
const double kPhiM1 = normal_cdf(-1.0);
const double kZ1 = std::erf(1.0 / std::sqrt(2.0));
}  // namespace

double box_mass(int dim) {
    require(dim >= 1, "dim must be >= 1");
    return std::pow(kZ1, dim);
}

double marginal_cdf(double t) {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return std::clamp((normal_cdf(t) - kPhiM1) / kZ1, 0.0, 1.0);
}

double marginal_quantile(double u) {
    double x = normal_quantile(kPhiM1 + u * kZ1);
    return std::clamp(x, -1.0, 1.0);
}

double marginal_variance() { return 1.0 - 2.0 * normal_pdf(1.0) / kZ1; }

double ks_statistic(std::span<const double> samples) {
    require(!samples.empty(), "ks_statistic needs at least one sample");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    const double n = double(s.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double f = marginal_cdf(s[i]);
        worst = std::max({worst, (i + 1) / n - f, f - i / n});
    }
    return worst;
}

double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(double(n)); }

TruncatedBoxGaussian::TruncatedBoxGaussian(int dim, double scale, std::uint64_t seed, std::uint64_t stream)
    : dim_(dim), scale_(scale), seed_(seed), rng_(seed, stream) {
    require(dim >= 1, "dim must be >= 1");
    require(scale > 0.0 && std::isfinite(scale), "scale must be positive");
}

void TruncatedBoxGaussian::draw_into(Eigen::Ref<Vector> out) {
    for (int i = 0; i < dim_; ++i) {
        double v = scale_ * marginal_quantile(rng_.uniform());
        out[i] = std::clamp(v, -scale_, scale_);
    }
}

Vector TruncatedBoxGaussian::draw() {
    Vector v(dim_);
    draw_into(v);
    return v;
}

std::vector<Vector> TruncatedBoxGaussian::sample(std::size_t count) {
    require(count >= 1, "count must be >= 1");
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(draw());
    return out;
}

}  // namespace oraclab
