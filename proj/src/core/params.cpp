#include "oraclab/params.hpp"

#include <cmath>
#include <sstream>

#include "oraclab/error.hpp"

namespace oraclab {

const char* to_string(CaseLabel c) { return c == CaseLabel::high_q ? "HighQ" : "LowQ"; }

ProblemParams::ProblemParams(int p, double nu, int q, double sigma, double holder_h, int dim)
    : p_(p), nu_(nu), q_(q), sigma_(sigma), holder_h_(holder_h), dim_(dim) {
    require(p >= 1, "p must be >= 1");
    require(nu > 0.0 && nu <= 1.0, "nu must lie in (0, 1]");
    require(q >= 2, "q must be >= 2");
    require(sigma > 0.0 && std::isfinite(sigma), "sigma must be positive");
    require(holder_h > 0.0 && std::isfinite(holder_h), "H must be positive");
    require(dim >= 1, "dim must be >= 1");
    classify_case(p, nu, q);
}

CaseLabel classify_case(int p, double nu, int q) {
    double s = p + nu;
    if (q == s) fail(Errc::unsupported_case, "unsupported boundary case q = p + nu");
    return q > s ? CaseLabel::high_q : CaseLabel::low_q;
}

CaseLabel classify_case(const ProblemParams& params) {
    return classify_case(params.p(), params.nu(), params.q());
}

static void expect_case(const ProblemParams& params, CaseLabel want, const char* op) {
    if (classify_case(params) != want) {
        std::ostringstream os;
        os << op << " needs a " << to_string(want) << " instance";
        fail(Errc::unsupported_case, os.str());
    }
}

double regularizer_constant(const ProblemParams& params) {
    double c = params.sigma();
    for (int j = 1; j <= params.p(); ++j) c *= double(params.q() - j);
    return c;
}

double domain_radius(const ProblemParams& params) {
    expect_case(params, CaseLabel::high_q, "domain_radius");
    double c = regularizer_constant(params);
    if (c <= 0.0) fail(Errc::unsupported_case, "unsupported geometry: C <= 0 (q <= p)");
    double e = 1.0 / (params.q() - params.p() - params.nu());
    return std::pow(params.holder_h() / (std::pow(2.0, 1.0 - params.nu()) * c), e);
}

Case1Schedule schedule_case1(const ProblemParams& params, int budget_t) {
    expect_case(params, CaseLabel::high_q, "schedule_case1");
    const int p = params.p(), q = params.q();
    const double nu = params.nu(), sigma = params.sigma(), h = params.holder_h();
    const double d = params.dim();
    if (budget_t < 1 || budget_t < std::sqrt(d) - 1.0 || budget_t > d) {
        std::ostringstream os;
        os << "budget T=" << budget_t << " outside [sqrt(d)-1, d] for d=" << params.dim();
        fail(Errc::invalid_argument, os.str());
    }
    const double k = p + nu - 1.0;
    const double denom = p - q + nu;  // negative in this case
    const double t = budget_t;

    Case1Schedule s{};
    s.budget_t = budget_t;
    s.c_q = double(q - 1) / (8.0 * p * q);
    double inner = h * std::pow(s.c_q, k) * std::pow(sigma, -k / (q - 1)) / std::pow(2.0, p + 1);
    s.beta = std::pow(inner, -(q - 1) / denom) * std::pow(t, k * (3.0 * q - 2.0) / (2.0 * denom));
    s.rho = s.c_q * std::pow(sigma, -1.0 / (q - 1)) * std::pow(s.beta, 1.0 / (q - 1))
            * std::pow(t, (2.0 - 3.0 * q) / (2.0 * (q - 1)));
    s.delta = 2.0 * p * s.rho;
    s.cap_c = regularizer_constant(params);
    s.cap_d = domain_radius(params);
    return s;
}

double schedule_holder_mismatch(const ProblemParams& params, const Case1Schedule& s) {
    double h = std::pow(2.0, params.p() + 1) * s.beta / std::pow(s.rho, params.k());
    return std::abs(h - params.holder_h()) / params.holder_h();
}

double sigma_tilde(const ProblemParams& params) {
    expect_case(params, CaseLabel::low_q, "sigma_tilde");
    double s = params.p() + params.nu();
    return std::pow(2.0, s + 1.0) * std::tgamma(s) * params.sigma() / params.holder_h();
}

double lower_bound_case1(const ProblemParams& params, double eps) {
    expect_case(params, CaseLabel::high_q, "lower_bound_case1");
    require(eps > 0.0, "eps must be positive");
    const double p = params.p(), nu = params.nu(), q = params.q();
    const double s = p + nu;
    const double m = 3.0 * s - 2.0;
    const double c_q = (q - 1.0) / (8.0 * p * q);
    double r = std::pow(std::pow(2.0, (2.0 * p + 2.0 * nu + p * q - q) / q), -2.0 / m);
    r *= std::pow(p, 2.0 * (q - s) / (q * m));
    r *= std::pow(c_q, 2.0 * s * (q - 1.0) / (q * m));
    r *= std::pow(params.holder_h() / params.sigma(), 2.0 / m);
    r *= std::pow(params.sigma() / eps, 2.0 * (q - s) / (q * m));
    return r;
}

// ln of the loglog argument (sigma^(p+nu)/H^q)^(1/(p+nu-q)) / eps
static double log_loglog_argument(const ProblemParams& params, double eps) {
    const double s = params.p() + params.nu();
    return (s * std::log(params.sigma()) - params.q() * std::log(params.holder_h())) / (s - params.q())
           - std::log(eps);
}

Case2Bound lower_bound_case2(const ProblemParams& params, double eps) {
    expect_case(params, CaseLabel::low_q, "lower_bound_case2");
    require(eps > 0.0, "eps must be positive");
    const double s = params.p() + params.nu();
    double lz = log_loglog_argument(params, eps);
    return {std::pow(params.holder_h() / params.sigma(), 2.0 / (3.0 * s - 2.0)), lz > 1.0 ? std::log(lz) : 0.0};
}

double lower_bound_case2_with_constant(const ProblemParams& params, double eps, double loglog_constant) {
    Case2Bound b = lower_bound_case2(params, eps);
    return b.kappa_term + loglog_constant * b.loglog_term;
}

Rational rational_from(double x, long long max_den) {
    require(std::isfinite(x), "non-finite value has no rational form");
    // continued fraction convergents
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int i = 0; i < 64; ++i) {
        double a = std::floor(r);
        long long ai = static_cast<long long>(a);
        long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        double frac = r - a;
        if (std::abs(double(h1) / double(k1) - x) <= 1e-12 * std::max(1.0, std::abs(x))) break;
        if (frac == 0.0) break;
        r = 1.0 / frac;
    }
    if (k1 == 0 || std::abs(double(h1) / double(k1) - x) > 1e-12 * std::max(1.0, std::abs(x))) {
        std::ostringstream os;
        os << "value " << x << " is not a rational with denominator <= " << max_den;
        fail(Errc::invalid_argument, os.str());
    }
    return Rational(h1, k1);
}

Case1Exponents case1_exponents(int p, Rational nu, int q) {
    Rational s = Rational(p) + nu;
    require(Rational(q) > s, "case-1 exponents need q > p + nu");
    Rational m = Rational(3) * s - Rational(2);
    return {Rational(2) / m, Rational(2) * (Rational(q) - s) / (Rational(q) * m)};
}

Rational case2_exponent(int p, Rational nu) {
    Rational s = Rational(p) + nu;
    return Rational(2) / (Rational(3) * s - Rational(2));
}

}  // namespace oraclab
