#pragma once

#include <boost/rational.hpp>

namespace oraclab {

using Rational = boost::rational<long long>;

enum class CaseLabel { high_q, low_q };

const char* to_string(CaseLabel c);

// Regularity parameters of a problem class. Construction validates everything,
// including rejection of the boundary q == p + nu.
class ProblemParams {
public:
    ProblemParams(int p, double nu, int q, double sigma, double holder_h, int dim);

    int p() const { return p_; }
    double nu() const { return nu_; }
    int q() const { return q_; }
    double sigma() const { return sigma_; }
    double holder_h() const { return holder_h_; }
    int dim() const { return dim_; }

    // p + nu - 1, the exponent that keeps showing up
    double k() const { return p_ + nu_ - 1.0; }

    ProblemParams with_dim(int d) const { return {p_, nu_, q_, sigma_, holder_h_, d}; }
    ProblemParams with_holder(double h) const { return {p_, nu_, q_, sigma_, h, dim_}; }

private:
    int p_;
    double nu_;
    int q_;
    double sigma_;
    double holder_h_;
    int dim_;
};

CaseLabel classify_case(const ProblemParams& params);
CaseLabel classify_case(int p, double nu, int q);

struct Case1Schedule {
    double rho;
    double beta;
    double delta;
    double c_q;
    double cap_d;
    double cap_c;
    int budget_t;
};

Case1Schedule schedule_case1(const ProblemParams& params, int budget_t);
// |H - 2^(p+1) beta / rho^(p+nu-1)| / H
double schedule_holder_mismatch(const ProblemParams& params, const Case1Schedule& s);

inline constexpr double kScheduleTolerance = 1e-12;

double sigma_tilde(const ProblemParams& params);

// C = sigma (q-1)(q-2)...(q-p)
double regularizer_constant(const ProblemParams& params);
double domain_radius(const ProblemParams& params);

double lower_bound_case1(const ProblemParams& params, double eps);

struct Case2Bound {
    double kappa_term;   // (H/sigma)^(2/(3(p+nu)-2))
    double loglog_term;  // 0 when the loglog argument is too small
    double total() const { return kappa_term + loglog_term; }
};

Case2Bound lower_bound_case2(const ProblemParams& params, double eps);
// Same shape with an explicit constant in front of the loglog term. The constant
// grows with the step count, so this is only used by verification code.
double lower_bound_case2_with_constant(const ProblemParams& params, double eps, double loglog_constant);

// Exact exponents. nu must be representable as a small rational.
Rational rational_from(double x, long long max_den = 1000);

struct Case1Exponents {
    Rational h_over_sigma;
    Rational sigma_over_eps;
};

Case1Exponents case1_exponents(int p, Rational nu, int q);
Rational case2_exponent(int p, Rational nu);

}  // namespace oraclab
