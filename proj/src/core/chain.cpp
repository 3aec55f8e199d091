#include "oraclab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "oraclab/error.hpp"
#include "oraclab/rng.hpp"

namespace oraclab {

namespace {

double sgn(double t) { return t < 0.0 ? -1.0 : 1.0; }

// g(t) = |t|^s / s and its first two derivatives
double g0(double t, double s) { return std::pow(std::abs(t), s) / s; }
double g1(double t, double s) { return std::pow(std::abs(t), s - 1.0) * sgn(t); }
double g2(double t, double s) { return (s - 1.0) * std::pow(std::abs(t), s - 2.0); }

double chain_scale(const ProblemParams& params) {
    double s = params.p() + params.nu();
    return params.holder_h() / (std::pow(2.0, s + 1.0) * std::tgamma(s));
}

}  // namespace

ChainInstance::ChainInstance(const ProblemParams& params, double gamma, int chain_len, std::uint64_t seed)
    : params_(params),
      gamma_(gamma),
      sigma_t_(sigma_tilde(params)),
      chain_len_(chain_len),
      scale_(chain_scale(params)),
      seed_(seed) {
    require(gamma > 0.0 && std::isfinite(gamma), "gamma must be positive");
    require(chain_len >= 2, "chain length must be >= 2");
    require(params.dim() >= 2 * chain_len, "dim must be at least twice the chain length");
}

ChainInstance ChainInstance::from_tilde(int p, double nu, int q, double gamma, double sigma_t, int chain_len,
                                        int dim, std::uint64_t seed, double holder_h) {
    require(sigma_t > 0.0 && std::isfinite(sigma_t), "sigma_tilde must be positive");
    ProblemParams probe(p, nu, q, 1.0, holder_h, dim);
    if (classify_case(probe) != CaseLabel::low_q) fail(Errc::unsupported_case, "chain instances need q < p + nu");
    double sigma = sigma_t * chain_scale(probe);
    ChainInstance inst(ProblemParams(p, nu, q, sigma, holder_h, dim), gamma, chain_len, seed);
    inst.sigma_t_ = sigma_t;  // exact, not re-derived through rounding
    return inst;
}

double ChainInstance::tilde_value(const Vector& y) const {
    require(y.size() == chain_len_, "tilde vector has the wrong length");
    const double s = this->s();
    double v = 0.0;
    for (int i = 0; i + 1 < chain_len_; ++i) v += g0(y[i] - y[i + 1], s);
    return v - gamma_ * y[0] + sigma_t_ / params_.q() * std::pow(y.norm(), params_.q());
}

Vector ChainInstance::tilde_gradient(const Vector& y) const {
    require(y.size() == chain_len_, "tilde vector has the wrong length");
    const double s = this->s();
    const int q = params_.q();
    double n = y.norm();
    double reg = n == 0.0 ? (q == 2 ? sigma_t_ : 0.0) : sigma_t_ * std::pow(n, q - 2);
    Vector g = reg * y;
    for (int i = 0; i + 1 < chain_len_; ++i) {
        double d = g1(y[i] - y[i + 1], s);
        g[i] += d;
        g[i + 1] -= d;
    }
    g[0] -= gamma_;
    return g;
}

static Matrix regularizer_hessian(const Vector& x, double sigma, int q) {
    const int d = int(x.size());
    double n = x.norm();
    if (q == 2) return sigma * Matrix::Identity(d, d);
    if (n == 0.0) return Matrix::Zero(d, d);
    Matrix h = std::pow(n, q - 2) * Matrix::Identity(d, d);
    h += (q - 2) * std::pow(n, q - 4) * x * x.transpose();
    return sigma * h;
}

Matrix ChainInstance::tilde_hessian(const Vector& y) const {
    require(y.size() == chain_len_, "tilde vector has the wrong length");
    const double s = this->s();
    Matrix h = regularizer_hessian(y, sigma_t_, params_.q());
    for (int i = 0; i + 1 < chain_len_; ++i) {
        double c = g2(y[i] - y[i + 1], s);
        h(i, i) += c;
        h(i + 1, i + 1) += c;
        h(i, i + 1) -= c;
        h(i + 1, i) -= c;
    }
    return h;
}

double ChainInstance::tilde_directional(const Vector& y, const Vector& u, int order) const {
    require(y.size() == chain_len_ && u.size() == chain_len_, "tilde vector has the wrong length");
    require(order >= 1, "derivative order must be >= 1");
    const double s = this->s();
    const int q = params_.q();
    double total = 0.0;
    for (int i = 0; i + 1 < chain_len_; ++i) {
        double w = y[i] - y[i + 1], du = u[i] - u[i + 1];
        double coef = 1.0;
        for (int j = 1; j < order; ++j) coef *= s - j;
        double pw = std::pow(std::abs(w), s - order);
        if (order % 2 == 1) pw *= sgn(w);
        total += coef * pw * std::pow(du, order);
    }
    if (order == 1) total -= gamma_ * u[0];
    // derivatives of (st/q)||y||^q along u
    double n = y.norm(), a = y.dot(u), uu = u.squaredNorm();
    if (q == 2) {
        if (order == 1) total += sigma_t_ * a;
        if (order == 2) total += sigma_t_ * uu;
    } else {
        if (order > 3) fail(Errc::invalid_argument, "regularizer derivatives above order 3 need q = 2");
        if (n > 0.0) {
            if (order == 1) total += sigma_t_ * std::pow(n, q - 2) * a;
            if (order == 2) total += sigma_t_ * ((q - 2) * std::pow(n, q - 4) * a * a + std::pow(n, q - 2) * uu);
            if (order == 3)
                total += sigma_t_ * (q - 2) * ((q - 4) * std::pow(n, q - 6) * a * a * a + 3.0 * std::pow(n, q - 4) * a * uu);
        }
    }
    return total;
}

Vector ChainInstance::projections(const Vector& x, bool need_full) const {
    require(x.size() == dim(), "point has the wrong dimension");
    if (need_full && basis_size() < chain_len_) fail(Errc::invalid_argument, "basis too short for the chain length");
    Vector c = Vector::Zero(chain_len_);
    for (int i = 0; i < std::min(basis_size(), chain_len_); ++i) c[i] = basis_[i].dot(x);
    return c;
}

double ChainInstance::eval(const Vector& x, bool need_full) const {
    Vector c = projections(x, need_full);
    const double s = this->s();
    double v = 0.0;
    for (int i = 0; i + 1 < chain_len_; ++i) v += g0(c[i] - c[i + 1], s);
    v -= gamma_ * c[0];
    return scale_ * v + params_.sigma() / params_.q() * std::pow(x.norm(), params_.q());
}

Vector ChainInstance::grad(const Vector& x, bool need_full) const {
    Vector c = projections(x, need_full);
    const double s = this->s();
    const int q = params_.q();
    const int m = basis_size();
    Vector out = Vector::Zero(dim());
    for (int i = 0; i + 1 < chain_len_; ++i) {
        double d = scale_ * g1(c[i] - c[i + 1], s);
        if (d == 0.0) continue;
        if (i < m) out += d * basis_[i];
        if (i + 1 < m) out -= d * basis_[i + 1];
    }
    if (m > 0) out -= scale_ * gamma_ * basis_[0];
    double n = x.norm();
    if (n > 0.0) out += params_.sigma() * std::pow(n, q - 2) * x;
    return out;
}

Matrix ChainInstance::hess(const Vector& x, bool need_full) const {
    Vector c = projections(x, need_full);
    const double s = this->s();
    const int m = basis_size();
    Matrix h = regularizer_hessian(x, params_.sigma(), params_.q());
    Vector w(dim());
    for (int i = 0; i + 1 < chain_len_; ++i) {
        double k = scale_ * g2(c[i] - c[i + 1], s);
        if (k == 0.0) continue;
        w.setZero();
        if (i < m) w += basis_[i];
        if (i + 1 < m) w -= basis_[i + 1];
        h.noalias() += k * w * w.transpose();
    }
    return h;
}

double ChainInstance::value(const Vector& x) const { return eval(x, true); }
Vector ChainInstance::gradient(const Vector& x) const { return grad(x, true); }
Matrix ChainInstance::hessian(const Vector& x) const { return hess(x, true); }
double ChainInstance::value_available(const Vector& x) const { return eval(x, false); }
Vector ChainInstance::gradient_available(const Vector& x) const { return grad(x, false); }
Matrix ChainInstance::hessian_available(const Vector& x) const { return hess(x, false); }

namespace {

// Orthonormalize `v` against `q` twice; returns the remaining norm.
double orthogonalize(Vector& v, const std::vector<Vector>& q) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : q) v -= e.dot(v) * e;
    return v.norm();
}

}  // namespace

const Vector& ChainInstance::adversarial_basis_next(const std::vector<Vector>& queried) {
    if (basis_size() >= chain_len_) fail(Errc::budget_exhausted, "basis already holds chain_len vectors");
    const int d = dim();
    // orthonormal frame of everything the new vector must avoid
    std::vector<Vector> frame;
    auto absorb = [&](const Vector& v) {
        require(v.size() == d, "queried point has the wrong dimension");
        double n0 = v.norm();
        if (n0 == 0.0) return;
        Vector r = v;
        double n = orthogonalize(r, frame);
        if (n > 1e-12 * n0) frame.push_back(r / n);
    };
    for (const auto& b : basis_) absorb(b);
    for (const auto& x : queried) absorb(x);
    if (int(frame.size()) >= d) fail(Errc::subspace_exhausted, "queried points and basis already span the space");

    // the i-th vector only depends on (seed, i), so completions are reproducible
    Rng rng(seed_, 0x6261736973ULL + std::uint64_t(basis_size()));
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vector z(d);
        for (int i = 0; i < d; ++i) z[i] = rng.normal();
        double n0 = z.norm();
        double n = orthogonalize(z, frame);
        if (n > 1e-6 * n0) {
            z /= n;
            // one more pass after normalizing keeps inner products at rounding level
            orthogonalize(z, frame);
            z.normalize();
            basis_.push_back(std::move(z));
            return basis_.back();
        }
    }
    fail(Errc::subspace_exhausted, "could not find a direction outside the queried span");
}

void ChainInstance::set_basis(std::vector<Vector> basis) {
    require(int(basis.size()) <= chain_len_, "basis longer than the chain");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        require(basis[i].size() == dim(), "basis vector has the wrong dimension");
        for (std::size_t j = 0; j <= i; ++j) {
            double want = i == j ? 1.0 : 0.0;
            require(std::abs(basis[i].dot(basis[j]) - want) <= 1e-10, "basis vectors must be orthonormal");
        }
    }
    basis_ = std::move(basis);
}

void ChainInstance::use_identity_basis() {
    std::vector<Vector> b;
    for (int i = 0; i < chain_len_; ++i) b.push_back(Vector::Unit(dim(), i));
    set_basis(std::move(b));
}

// ---------------------------------------------------------------- solvers

ChainOptimum solve_opt_bruteforce(const ChainInstance& inst, double tol) {
    require(tol > 0.0, "tolerance must be positive");
    const int n = inst.chain_len();
    Vector y = Vector::Zero(n);
    double f = inst.tilde_value(y);
    Vector g = inst.tilde_gradient(y);
    const int max_iter = 500;
    int it = 0;
    for (; it < max_iter && g.norm() > tol; ++it) {
        Matrix h = inst.tilde_hessian(y);
        double mu = 0.0;
        Vector dir;
        for (int tries = 0; tries < 60; ++tries) {
            Eigen::LLT<Matrix> llt(h + mu * Matrix::Identity(n, n));
            if (llt.info() == Eigen::Success) {
                dir = -llt.solve(g);
                if (dir.allFinite() && dir.dot(g) < 0.0) break;
            }
            mu = mu == 0.0 ? 1e-10 * (1.0 + h.cwiseAbs().maxCoeff()) : 10.0 * mu;
            dir.resize(0);
        }
        if (dir.size() == 0) break;

        double t = 1.0, slope = g.dot(dir);
        // Armijo with a rounding allowance so the final quadratic steps are not rejected
        const double noise = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f));
        Vector trial;
        double ft = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
            trial = y + t * dir;
            ft = inst.tilde_value(trial);
            if (ft <= f + 1e-4 * t * slope + noise) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // Near the optimum f stops resolving progress; take the Newton step if
            // it still shrinks the gradient.
            trial = y + dir;
            Vector gt = inst.tilde_gradient(trial);
            if (!(gt.norm() < g.norm())) break;
            ft = inst.tilde_value(trial);
        }
        y = trial;
        f = ft;
        g = inst.tilde_gradient(y);
    }
    double res = g.norm();
    // the gradient cannot be resolved below rounding of its largest terms
    double floor = 64.0 * std::numeric_limits<double>::epsilon() * (inst.gamma() + 1.0) * n;
    if (res > std::max(tol, floor)) {
        std::ostringstream os;
        os << "damped Newton stopped after " << it << " iterations with residual " << res;
        fail(Errc::not_converged, os.str());
    }
    return {y, y.norm(), res, it};
}

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// Builds y from y_T = exp(ln_tail) with the backward recurrence; returns the sum.
Big backward_sweep(const Big& ln_tail, const Big& c, const Big& inv_k, std::vector<Big>& y) {
    const int n = int(y.size());
    y[n - 1] = exp(ln_tail);
    Big tail = y[n - 1];
    for (int i = n - 2; i >= 0; --i) {
        y[i] = y[i + 1] + pow(c * tail, inv_k);
        tail += y[i];
    }
    return tail;
}

// solve c * sum(y) = gamma for the backward family
void solve_inner(const Big& gamma, const Big& c, const Big& inv_k, std::vector<Big>& y) {
    Big hi = log(gamma / c);  // y_T <= sum = gamma / c
    Big lo = hi - 64;
    for (int i = 0; c * backward_sweep(lo, c, inv_k, y) >= gamma; ++i) {
        if (i > 60) fail(Errc::not_converged, "could not bracket the tail coordinate");
        lo = hi - 2 * (hi - lo);
    }
    for (int i = 0; i < 400; ++i) {
        Big mid = (lo + hi) / 2;
        if (c * backward_sweep(mid, c, inv_k, y) < gamma) lo = mid;
        else hi = mid;
        if (hi - lo <= Big("1e-45") * (1 + abs(lo))) break;
    }
    backward_sweep((lo + hi) / 2, c, inv_k, y);
}

}  // namespace

ChainOptimum solve_opt_recurrence(const ChainInstance& inst, double tol) {
    require(tol > 0.0, "tolerance must be positive");
    const int n = inst.chain_len();
    const int q = inst.params().q();
    const Big gamma = inst.gamma(), st = inst.sigma_t();
    const Big inv_k = Big(1) / (Big(inst.s()) - 1);
    std::vector<Big> y(n);

    auto norm_of = [&] {
        Big acc = 0;
        for (const auto& v : y) acc += v * v;
        return sqrt(acc);
    };

    int outer = 0;
    if (q == 2) {
        solve_inner(gamma, st, inv_k, y);
        outer = 1;
    } else {
        Big r = pow(gamma / st, Big(1) / (q - 1));
        bool done = false;
        for (; outer < 2000; ++outer) {
            solve_inner(gamma, st * pow(r, q - 2), inv_k, y);
            Big ny = norm_of();
            if (abs(ny - r) <= Big(tol) * 1e-3 * (1 + r)) {
                done = true;
                break;
            }
            r = (r + ny) / 2;
        }
        if (!done) fail(Errc::not_converged, "outer fixed point on ||y|| is not contracting for this instance");
    }

    ChainOptimum opt;
    opt.y.resize(n);
    for (int i = 0; i < n; ++i) opt.y[i] = static_cast<double>(y[i]);
    opt.norm_y = static_cast<double>(norm_of());
    opt.residual = inst.tilde_gradient(opt.y).norm();
    opt.iterations = outer;
    return opt;
}

// ---------------------------------------------------------------- structure checks

const char* to_string(LemmaStatus s) {
    switch (s) {
        case LemmaStatus::pass: return "pass";
        case LemmaStatus::fail: return "fail";
        case LemmaStatus::not_applicable: return "not_applicable";
    }
    return "?";
}

bool LemmaReport::all_passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.status == LemmaStatus::fail; });
}

const LemmaCheck& LemmaReport::get(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    fail(Errc::invalid_argument, "no check named " + name);
}

double tail_constant(double k) { return std::pow(k, (1.0 - k) / k) + std::pow(k / ((k - 1.0) * (k - 1.0)), 1.0 / k); }

double chain_norm_bound(const ChainInstance& inst) {
    const double q = inst.params().q(), s = inst.s(), k = s - 1.0;
    return std::pow(2.0, 2.0 / (3.0 * q - 2.0)) * std::pow(inst.gamma(), (3.0 * s - 2.0) / (k * (3.0 * q - 2.0)))
           / std::pow(inst.sigma_t(), 3.0 / (3.0 * q - 2.0));
}

LemmaReport verify_chain_optimum(const ChainInstance& inst, const ChainOptimum& opt) {
    const Vector& y = opt.y;
    const int n = inst.chain_len();
    require(y.size() == n, "optimum has the wrong length");
    if (!(opt.residual <= 1e-8 * (1.0 + std::abs(inst.tilde_value(y)))))
        fail(Errc::not_converged, "optimum is not converged enough to check its structure");

    const double q = inst.params().q(), s = inst.s(), k = s - 1.0;
    const double gamma = inst.gamma(), st = inst.sigma_t();
    const double r = y.norm();
    const double c = st * std::pow(r, q - 2.0);  // st ||y||^{q-2}
    const double gk = std::pow(gamma, 1.0 / k);
    const double eps = std::numeric_limits<double>::epsilon();

    LemmaReport rep;
    auto add = [&](std::string name, LemmaStatus st_, double slack, std::string detail = {}) {
        rep.checks.push_back({std::move(name), st_, slack, std::move(detail)});
    };
    auto verdict = [](double slack) { return slack >= 0.0 ? LemmaStatus::pass : LemmaStatus::fail; };

    // coordinates decrease and stay nonnegative
    {
        double worst = y[n - 1] + 1e-9;
        for (int i = 0; i + 1 < n; ++i) worst = std::min(worst, y[i] - y[i + 1] + 1e-9);
        add("monotone_coordinates", verdict(worst), worst);
    }
    // forward stationarity recurrence. The k-th root of a base that is a
    // difference of O(gamma) terms carries an error of about (eps gamma)^{1/k},
    // so that rounding floor is added to the 1e-6 tolerance.
    {
        double partial = 0.0, worst = std::numeric_limits<double>::infinity();
        for (int t = 0; t + 1 < n; ++t) {
            partial += y[t];
            double base = std::max(gamma - c * partial, 0.0);
            double pred = y[t] - std::pow(base, 1.0 / k);
            double floor = std::pow(16.0 * eps * (gamma + c * partial), 1.0 / k);
            worst = std::min(worst, 1e-6 + floor - std::abs(y[t + 1] - pred));
        }
        add("forward_recurrence", verdict(worst), worst);
    }
    // sum identity
    {
        double want = gamma / c;
        double rel = std::abs(y.sum() - want) / want;
        add("sum_identity", verdict(1e-6 - rel), 1e-6 - rel);
    }
    // y_t >= y_1 - (t-1) gamma^{1/k}
    {
        double worst = std::numeric_limits<double>::infinity();
        for (int t = 0; t < n; ++t) worst = std::min(worst, y[t] - (y[0] - t * gk));
        add("coordinate_drop", verdict(worst), worst);
    }
    // first-coordinate bound, only for the self-consistent chain length
    {
        int t_star = int(std::floor(y[0] / gk + 1.0));
        double bound = gk + std::sqrt(2.0 * std::pow(gamma, s / k) / c);
        if (t_star == n) add("first_coordinate_bound", verdict(bound - y[0]), bound - y[0]);
        else add("first_coordinate_bound", LemmaStatus::not_applicable, bound - y[0],
                 "chain length " + std::to_string(n) + " differs from floor(y1/gamma^(1/k)+1) = " + std::to_string(t_star));
    }
    // coordinate floor under its gamma hypothesis
    {
        double need = std::pow(st, k / (k - 1.0)) * std::pow(r, k * (q - 2.0) / (k - 1.0));
        double lead = std::pow(gamma, s / (2.0 * k)) / (std::pow(2.0, s + 1.0) * std::sqrt(st) * std::pow(r, (q - 2.0) / 2.0));
        double worst = std::numeric_limits<double>::infinity();
        for (int t = 1; t <= n; ++t) worst = std::min(worst, y[t - 1] - (lead + (0.5 - t) * gk));
        if (gamma >= need) add("coordinate_floor", verdict(worst), worst);
        else add("coordinate_floor", LemmaStatus::not_applicable, worst, "gamma below the hypothesis threshold");
    }
    // norm bound, stated without hypothesis
    {
        double b = chain_norm_bound(inst);
        add("norm_bound", verdict(b - r), b - r);
    }
    // backward recurrence y_i = y_{i+1} + (c sum_{j>i} y_j)^{1/k}: stable form
    {
        double worst = std::numeric_limits<double>::infinity();
        double tail = 0.0;
        for (int i = n - 2; i >= 0; --i) {
            tail += y[i + 1];
            double pred = y[i + 1] + std::pow(c * tail, 1.0 / k);
            worst = std::min(worst, 1e-6 - std::abs(y[i] - pred));
        }
        add("backward_recurrence", verdict(worst), worst);
    }
    // y_{i+1} <= y_i^k / c
    {
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i + 1 < n; ++i) {
            double b = std::pow(y[i], k) / c;
            worst = std::min(worst, b - y[i + 1] + 1e-12 * (1.0 + b));
        }
        add("tail_power_upper", verdict(worst), worst);
    }
    // lower bounds past the threshold index t1
    {
        double thr = std::pow(c, 1.0 / (k - 1.0)) / k;
        int t1 = -1;
        for (int t = 1; t < n; ++t)
            if (y[t - 1] > thr && y[t] <= thr) {
                t1 = t;
                break;
            }
        rep.threshold_index = t1;
        if (t1 < 0) {
            add("tail_power_lower", LemmaStatus::not_applicable, 0.0, "no threshold index");
            add("tail_doubly_exponential", LemmaStatus::not_applicable, 0.0, "no threshold index");
        } else {
            const double cc = tail_constant(k);
            double worst = std::numeric_limits<double>::infinity();
            for (int i = t1; i < n; ++i) {  // 1-based i >= t1, needs y_{i+1}
                double lhs = std::pow(1.0 / cc, k) / c * std::pow(y[i - 1], k);
                worst = std::min(worst, y[i] - lhs + 1e-12 * lhs);
            }
            add("tail_power_lower", verdict(worst), worst, "t1 = " + std::to_string(t1));
            double worst3 = std::numeric_limits<double>::infinity();
            for (int i = 1; i <= n - t1; ++i) {
                double ki = std::pow(k, i);
                double lb = std::pow(1.0 / cc, k * (ki - 1.0) / (k - 1.0)) * std::pow(c, 1.0 / (k - 1.0)) * std::pow(k, -ki);
                worst3 = std::min(worst3, y[t1 + i - 1] - lb + 1e-12 * lb);
            }
            add("tail_doubly_exponential", verdict(worst3), worst3, "t1 = " + std::to_string(t1));
        }
    }
    return rep;
}

// ---------------------------------------------------------------- snapshots

static constexpr const char* kSnapshotMagic = "oraclab-chain-snapshot";
static constexpr int kSnapshotVersion = 1;

void save_snapshot(const ChainInstance& inst, std::ostream& os) {
    const auto& p = inst.params();
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    os << kSnapshotMagic << " v" << kSnapshotVersion << "\n";
    os << "p " << p.p() << "\n"
       << "nu " << num(p.nu()) << "\n"
       << "q " << p.q() << "\n"
       << "sigma " << num(p.sigma()) << "\n"
       << "holder_h " << num(p.holder_h()) << "\n"
       << "dim " << p.dim() << "\n"
       << "gamma " << num(inst.gamma()) << "\n"
       << "sigma_tilde " << num(inst.sigma_t()) << "\n"
       << "chain_len " << inst.chain_len() << "\n"
       << "seed " << inst.seed() << "\n"
       << "basis " << inst.basis_size() << "\n";
    for (const auto& v : inst.basis()) {
        for (int i = 0; i < v.size(); ++i) os << (i ? " " : "") << num(v[i]);
        os << "\n";
    }
    if (!os) fail(Errc::io_error, "failed to write chain snapshot");
}

ChainInstance load_snapshot(std::istream& is) {
    auto bad = [](const std::string& why) -> void { fail(Errc::io_error, "bad chain snapshot: " + why); };
    std::string magic, ver;
    is >> magic >> ver;
    if (magic != kSnapshotMagic) bad("missing header");
    if (ver != "v" + std::to_string(kSnapshotVersion)) bad("unsupported version " + ver);
    auto field = [&](const char* key) {
        std::string k;
        std::string v;
        is >> k >> v;
        if (!is || k != key) bad(std::string("expected ") + key);
        return v;
    };
    try {
        int p = std::stoi(field("p"));
        double nu = std::stod(field("nu"));
        int q = std::stoi(field("q"));
        double sigma = std::stod(field("sigma"));
        double h = std::stod(field("holder_h"));
        int dim = std::stoi(field("dim"));
        double gamma = std::stod(field("gamma"));
        double st = std::stod(field("sigma_tilde"));
        int len = std::stoi(field("chain_len"));
        std::uint64_t seed = std::stoull(field("seed"));
        int nb = std::stoi(field("basis"));
        ChainInstance inst = ChainInstance::from_tilde(p, nu, q, gamma, st, len, dim, seed, h);
        if (std::abs(inst.params().sigma() - sigma) > 1e-12 * sigma) bad("sigma inconsistent with sigma_tilde");
        std::vector<Vector> basis;
        for (int b = 0; b < nb; ++b) {
            Vector v(dim);
            for (int i = 0; i < dim; ++i) {
                std::string tok;
                if (!(is >> tok)) bad("truncated basis");
                v[i] = std::stod(tok);
            }
            basis.push_back(v);
        }
        inst.set_basis(std::move(basis));
        return inst;
    } catch (const std::invalid_argument&) {
        bad("malformed number");
    } catch (const std::out_of_range&) {
        bad("number out of range");
    }
    fail(Errc::io_error, "unreachable");
}

}  // namespace oraclab
