#pragma once

namespace oraclab {

double normal_pdf(double t);
double normal_cdf(double t);
// Inverse of normal_cdf on (0,1). Acklam's rational approximation followed by
// one Halley step; absolute error below 1e-12 over (1e-300, 1 - 1e-16).
double normal_quantile(double u);

inline constexpr double kQuantileAccuracy = 1e-9;  // documented guarantee

}  // namespace oraclab
