#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oraclab/chain.hpp"
#include "oraclab/error.hpp"
#include "oraclab/rng.hpp"

using namespace oraclab;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc{};
}

ChainInstance reference() { return ChainInstance::from_tilde(2, 1.0, 2, 1.0, 1.0, 2, 4); }

}  // namespace

TEST_CASE("tilde function at the origin") {
    auto inst = ChainInstance::from_tilde(3, 0.5, 2, 2.5, 0.7, 5, 10);
    Vector y = Vector::Zero(5);
    CHECK(inst.tilde_value(y) == 0.0);
    Vector g = inst.tilde_gradient(y);
    CHECK(g[0] == -2.5);
    CHECK(g.tail(4).norm() == 0.0);
}

TEST_CASE("tilde derivatives match finite differences") {
    Rng rng(2);
    for (int p : {2, 3})
        for (int q : {2, 3}) {
            double nu = q == 3 && p == 2 ? 1.0 : 0.5;
            if (q >= p + nu) continue;
            auto inst = ChainInstance::from_tilde(p, nu, q, 1.3, 0.8, 4, 8);
            Vector y(4);
            for (int i = 0; i < 4; ++i) y[i] = rng.normal();
            Vector g = inst.tilde_gradient(y);
            Matrix h = inst.tilde_hessian(y);
            const double e = 1e-6;
            for (int i = 0; i < 4; ++i) {
                Vector a = y, b = y;
                a[i] += e;
                b[i] -= e;
                CHECK(g[i] == doctest::Approx((inst.tilde_value(a) - inst.tilde_value(b)) / (2 * e)).epsilon(1e-6));
                Vector col = (inst.tilde_gradient(a) - inst.tilde_gradient(b)) / (2 * e);
                CHECK((h.col(i) - col).norm() <= 1e-5 * (1 + col.norm()));
            }
            Vector u = Vector::Random(4);
            CHECK(inst.tilde_directional(y, u, 1) == doctest::Approx(g.dot(u)).epsilon(1e-12));
            CHECK(inst.tilde_directional(y, u, 2) == doctest::Approx(u.dot(h * u)).epsilon(1e-10));
        }
}

TEST_CASE("reference optimum from both solvers") {
    auto inst = reference();
    ChainOptimum a = solve_opt_bruteforce(inst), b = solve_opt_recurrence(inst);
    for (const auto* o : {&a, &b}) {
        CHECK(o->y[0] == doctest::Approx(0.75).epsilon(1e-10));
        CHECK(o->y[1] == doctest::Approx(0.25).epsilon(1e-10));
    }
    CHECK((a.y - b.y).lpNorm<Eigen::Infinity>() <= 1e-8);
    LemmaReport rep = verify_chain_optimum(inst, b);
    CHECK(rep.all_passed());
    for (const auto& c : rep.checks)
        if (c.status == LemmaStatus::pass) CHECK(c.slack >= 0.0);
}

TEST_CASE("vanishing linear term gives the origin") {
    auto inst = ChainInstance::from_tilde(2, 1.0, 2, 1e-8, 1.0, 6, 12);
    CHECK(solve_opt_bruteforce(inst).norm_y < 1e-7);
    CHECK(solve_opt_recurrence(inst).norm_y < 1e-7);
}

TEST_CASE("solvers agree on random instances, including q > 2") {
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
        int p = 2 + int(rng.index(2));
        double nu = rng.index(2) ? 1.0 : 0.5;
        int q = 2 + int(rng.index(2));
        if (q >= p + nu) q = 2;
        int len = 2 + int(rng.index(8));
        auto inst = ChainInstance::from_tilde(p, nu, q, std::exp(rng.uniform(-2, 2)), std::exp(rng.uniform(-2, 2)),
                                              len, 2 * len);
        ChainOptimum a = solve_opt_bruteforce(inst), b = solve_opt_recurrence(inst);
        CHECK((a.y - b.y).lpNorm<Eigen::Infinity>() <= 1e-9 * (1 + a.y.norm()));
    }
}

TEST_CASE("norm bound does not hold unconditionally") {
    auto inst = ChainInstance::from_tilde(2, 1.0, 2, 10.0, 0.1, 2, 4);
    ChainOptimum o = solve_opt_recurrence(inst);
    CHECK(o.norm_y == doctest::Approx(70.728).epsilon(1e-4));
    CHECK(chain_norm_bound(inst) == doctest::Approx(59.6369).epsilon(1e-4));
    CHECK(verify_chain_optimum(inst, o).get("norm_bound").status == LemmaStatus::fail);
}

TEST_CASE("tail constant is too small at p = 3") {
    auto inst = ChainInstance::from_tilde(3, 1.0, 2, 9.53, 3.80, 2, 4);
    LemmaReport rep = verify_chain_optimum(inst, solve_opt_recurrence(inst));
    CHECK(rep.get("tail_power_lower").status == LemmaStatus::fail);
    CHECK(rep.get("tail_power_lower").slack == doctest::Approx(-0.0878).epsilon(0.02));
    CHECK(rep.get("backward_recurrence").status == LemmaStatus::pass);
    CHECK(tail_constant(2.0) == doctest::Approx(std::pow(2.0, -0.5) + std::sqrt(2.0)));
}

TEST_CASE("checks whose hypotheses fail are not applicable") {
    Rng rng(99);
    int na = 0;
    for (int i = 0; i < 30; ++i) {
        int len = 2 + int(rng.index(6));
        auto inst = ChainInstance::from_tilde(2, 0.5, 2, std::exp(rng.uniform(-3, 3)), std::exp(rng.uniform(-3, 3)),
                                              len, 2 * len);
        LemmaReport rep = verify_chain_optimum(inst, solve_opt_recurrence(inst));
        for (const char* guarded : {"first_coordinate_bound", "coordinate_floor"})
            if (rep.get(guarded).status == LemmaStatus::not_applicable) ++na;
        CHECK(rep.get("monotone_coordinates").status == LemmaStatus::pass);
        CHECK(rep.get("backward_recurrence").status == LemmaStatus::pass);
    }
    CHECK(na > 0);
    LemmaReport rep = verify_chain_optimum(reference(), solve_opt_recurrence(reference()));
    CHECK_THROWS_AS(rep.get("no_such_check"), Error);
}

TEST_CASE("adversarial basis") {
    ProblemParams params(2, 1.0, 2, 1.0, 32.0, 6);
    ChainInstance a(params, 1.0, 3, 5), b(params, 1.0, 3, 5);
    Vector v = a.adversarial_basis_next({});
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v == b.adversarial_basis_next({}));

    std::vector<Vector> qs = {Vector::Random(6), Vector::Random(6)};
    Vector w = a.adversarial_basis_next(qs);
    CHECK(std::abs(w.dot(v)) < 1e-14);
    for (const auto& q : qs) CHECK(std::abs(w.dot(q)) < 1e-12 * q.norm());

    // forced orthocomplement in d = 3
    ChainInstance c(ProblemParams(2, 1.0, 2, 1.0, 32.0, 4), 1.0, 2, 1);
    c.set_basis({Vector::Unit(4, 1)});
    Vector e = c.adversarial_basis_next({Vector::Unit(4, 0), Vector::Unit(4, 2)});
    CHECK(std::abs(std::abs(e[3]) - 1.0) < 1e-14);

    ChainInstance full(ProblemParams(2, 1.0, 2, 1.0, 32.0, 4), 1.0, 2, 1);
    std::vector<Vector> span = {Vector::Unit(4, 0), Vector::Unit(4, 1), Vector::Unit(4, 2), Vector::Unit(4, 3)};
    CHECK(code_of([&] { full.adversarial_basis_next(span); }) == Errc::subspace_exhausted);
    full.adversarial_basis_next({});
    full.adversarial_basis_next({});
    CHECK(code_of([&] { full.adversarial_basis_next({}); }) == Errc::budget_exhausted);
    CHECK(code_of([&] { ChainInstance(ProblemParams(2, 1.0, 2, 1.0, 32.0, 3), 1.0, 2); }) == Errc::invalid_argument);
}

TEST_CASE("full function reduces to the tilde function along the basis") {
    ProblemParams params(2, 1.0, 2, 1.0, 96.0, 8);
    ChainInstance inst(params, 1.5, 4, 3);
    for (int i = 0; i < 4; ++i) inst.adversarial_basis_next({});
    Vector y(4);
    y << 0.9, 0.4, 0.1, 0.02;
    Vector x = Vector::Zero(8);
    for (int i = 0; i < 4; ++i) x += y[i] * inst.basis()[i];
    CHECK(inst.value(x) == doctest::Approx(inst.scale() * inst.tilde_value(y)).epsilon(1e-12));
    CHECK(inst.scale() == doctest::Approx(96.0 / 32.0));
    CHECK(inst.sigma_t() == doctest::Approx(1.0 / 3).epsilon(1e-14));

    // gradient and Hessian against finite differences
    Vector z = Vector::Random(8);
    Vector g = inst.gradient(z);
    Matrix h = inst.hessian(z);
    for (int i = 0; i < 8; ++i) {
        Vector a = z, b = z;
        a[i] += 1e-6;
        b[i] -= 1e-6;
        CHECK(g[i] == doctest::Approx((inst.value(a) - inst.value(b)) / 2e-6).epsilon(1e-6));
        CHECK((h.col(i) - (inst.gradient(a) - inst.gradient(b)) / 2e-6).norm() < 1e-5 * (1 + h.norm()));
    }
}

TEST_CASE("partial basis answers agree with the completed function off the missing span") {
    ProblemParams params(2, 1.0, 2, 1.0, 32.0, 12);
    ChainInstance inst(params, 1.0, 5, 21);
    std::vector<Vector> qs;
    Rng rng(1);
    for (int t = 0; t < 3; ++t) {
        Vector x = Vector::Zero(12);
        for (const auto& v : inst.basis()) x += rng.normal() * v;
        qs.push_back(x);
        inst.adversarial_basis_next(qs);
    }
    ChainInstance done = inst;
    while (done.basis_size() < 5) done.adversarial_basis_next(qs);
    for (const auto& x : qs) {
        CHECK(inst.value_available(x) == doctest::Approx(done.value(x)).epsilon(1e-13));
        CHECK((inst.gradient_available(x) - done.gradient(x)).norm() < 1e-12 * (1 + done.gradient(x).norm()));
    }
    CHECK(code_of([&] { inst.value(qs[0]); }) == Errc::invalid_argument);
}

TEST_CASE("snapshot round trip") {
    ProblemParams params(3, 0.5, 2, 0.8, 40.0, 10);
    ChainInstance inst(params, 2.0, 4, 77);
    inst.adversarial_basis_next({});
    inst.adversarial_basis_next({Vector::Ones(10)});
    std::stringstream ss;
    save_snapshot(inst, ss);
    ChainInstance back = load_snapshot(ss);
    CHECK(back.gamma() == inst.gamma());
    CHECK(back.chain_len() == 4);
    CHECK(back.seed() == 77);
    CHECK(back.sigma_t() == doctest::Approx(inst.sigma_t()).epsilon(1e-15));
    REQUIRE(back.basis_size() == 2);
    for (int i = 0; i < 2; ++i) CHECK(back.basis()[i] == inst.basis()[i]);
    // continued adversary is reproducible after a reload
    CHECK(back.adversarial_basis_next({}) == inst.adversarial_basis_next({}));

    std::stringstream junk("not a snapshot");
    CHECK(code_of([&] { load_snapshot(junk); }) == Errc::io_error);
}
