#include <doctest.h>

#include <cmath>

#include "oraclab/verify.hpp"

using namespace oraclab;

TEST_CASE("lipschitz checker") {
    auto inf = [](const Vector& x) { return ScalarEstimate{x.lpNorm<Eigen::Infinity>(), 0.0}; };
    auto twice = [](const Vector& x) { return ScalarEstimate{2 * x.norm(), 0.0}; };
    auto dom = ball_sampler(5, 3.0);
    CheckReport a = check_lipschitz("inf", inf, 1.0, dom, 1000, kExactSlack, NormKind::linf, 1);
    CHECK(a.passed);
    CHECK(a.worst_ratio <= 1.0 + 1e-12);
    CheckReport b = check_lipschitz("twice", twice, 1.0, dom, 1000, kExactSlack, NormKind::l2, 1);
    CHECK_FALSE(b.passed);
    CHECK(b.worst_ratio > 1.5);
    CHECK(b.worst_ratio <= 2.0 + 1e-12);
    CHECK(b.samples == 1000);
    CHECK(b.regime == SlackRegime::exact);
}

TEST_CASE("uniform convexity checker") {
    auto quad = [](const Vector& x) { return VectorEstimate{x, 0.0}; };  // (1/2)||x||^2
    auto lin = [](const Vector& x) { return VectorEstimate{Vector::Ones(x.size()), 0.0}; };
    auto cubic = [](const Vector& x) { return VectorEstimate{x.norm() * x, 0.0}; };  // (1/3)||x||^3
    auto dom = ball_sampler(4, 2.0);
    CheckReport a = check_uniform_convexity("quad", quad, 1.0, 2, dom, 1000, kExactSlack, 2);
    CHECK(a.passed);
    CHECK(a.worst_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(check_uniform_convexity("lin", lin, 1.0, 2, dom, 100, kExactSlack, 2).passed);
    CHECK_FALSE(check_uniform_convexity("quad2", quad, 2.0, 2, dom, 100, kExactSlack, 2).passed);
    // the monotone-gradient form of a cubic only holds with half the modulus
    CHECK(check_uniform_convexity("cubic_half", cubic, 0.5, 3, dom, 2000, kExactSlack, 2).passed);
    CHECK_FALSE(check_uniform_convexity("cubic", cubic, 1.0, 3, dom, 2000, kExactSlack, 2).passed);
}

TEST_CASE("holder checker") {
    auto dom = ball_sampler(3, 1.0);
    auto const_hess = [](const Vector&) { return Matrix(Matrix::Identity(3, 3)); };
    CheckReport a = check_holder("quad", 2, const_hess, 1.0, 1.0, dom, 200, kExactSlack, 1);
    CHECK(a.passed);
    CHECK(a.worst_ratio == 0.0);

    // t -> |t|^(1+nu)/(1+nu): derivative |t|^nu sign t has constant 2^(1-nu)
    const double nu = 0.5;
    auto d1 = [&](const Vector& x) {
        Matrix m(1, 1);
        m(0, 0) = std::copysign(std::pow(std::abs(x[0]), nu), x[0]);
        return m;
    };
    auto line = ball_sampler(1, 1.0);
    CheckReport b = check_holder("power", 1, d1, std::pow(2.0, 1 - nu), nu, line, 20000, kExactSlack, 3);
    CHECK(b.passed);
    CHECK(b.worst_ratio > 0.99);
    CHECK_FALSE(check_holder("power_tight", 1, d1, 0.9 * std::pow(2.0, 1 - nu), nu, line, 20000, kExactSlack, 3).passed);
}

TEST_CASE("directional holder probe") {
    auto dom = ball_sampler(3, 1.0);
    // third derivative of (1/6)||x||^3-like sum of cubes: constant tensor, ratio 0
    auto deriv = [](const Vector&, const Vector& u) { return u.array().cube().sum(); };
    CHECK(check_holder_directional("cubes", deriv, 1.0, 1.0, dom, 100, 4, kExactSlack, 1).worst_ratio == 0.0);
}

TEST_CASE("operator norm") {
    Matrix a(2, 2);
    a << 2, 1, 1, -3;
    double want = std::max(std::abs((-1 + std::sqrt(29.0)) / 2), std::abs((-1 - std::sqrt(29.0)) / 2));
    CHECK(symmetric_operator_norm(a) == doctest::Approx(want).epsilon(1e-10));
    CHECK(symmetric_operator_norm(Matrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("csv rows") {
    CHECK(check_csv_header() == "name,passed,worst_ratio,slack_used,samples,seed,regime");
    CheckReport r{"x", true, 0.5, 1e-9, 10, 3, SlackRegime::monte_carlo};
    CHECK(to_csv_row(r) == "x,true,0.5,1.0000000000000001e-09,10,3,monte_carlo");
}
