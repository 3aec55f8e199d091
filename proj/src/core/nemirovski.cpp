#include "oraclab/nemirovski.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "oraclab/error.hpp"

namespace oraclab {

ResistingState::ResistingState(int dim, int budget, double delta)
    : dim_(dim), budget_(budget), delta_(delta), used_(std::size_t(std::max(dim, 0)), 0) {
    require(dim >= 1, "dim must be >= 1");
    require(budget >= 1 && budget <= dim, "budget must lie in [1, dim]");
    require(delta > 0.0 && std::isfinite(delta), "delta must be positive");
    alpha_.reserve(budget);
    xi_.reserve(budget);
}

ResistingState ResistingState::from_pieces(int dim, int budget, double delta, std::vector<int> alpha,
                                           std::vector<int> xi) {
    ResistingState s(dim, budget, delta);
    require(alpha.size() == xi.size(), "alpha and xi must have equal length");
    require(int(alpha.size()) <= budget, "more pieces than the budget allows");
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        require(alpha[k] >= 0 && alpha[k] < dim, "alpha index out of range");
        require(!s.used_[alpha[k]], "alpha indices must be distinct");
        require(xi[k] == 1 || xi[k] == -1, "xi entries must be +1 or -1");
        s.used_[alpha[k]] = 1;
    }
    s.alpha_ = std::move(alpha);
    s.xi_ = std::move(xi);
    return s;
}

int ResistingState::active_piece(const Vector& x) const {
    if (alpha_.empty()) fail(Errc::invalid_argument, "g is undefined before the first step");
    int best = 0;
    double top = xi_[0] * x[alpha_[0]];
    for (int k = 1; k < step(); ++k) {
        double r = xi_[k] * x[alpha_[k]] - k * delta_;
        if (r > top) {
            top = r;
            best = k;
        }
    }
    return best;
}

double ResistingState::value(const Vector& x) const {
    int k = active_piece(x);
    return xi_[k] * x[alpha_[k]] - k * delta_;
}

Vector ResistingState::subgradient(const Vector& x) const {
    Vector g(dim_);
    subgradient_into(x, g);
    return g;
}

void ResistingState::subgradient_into(const Vector& x, Vector& out) const {
    int k = active_piece(x);
    out.setZero(dim_);
    out[alpha_[k]] = xi_[k];
}

void ResistingState::advance(const Vector& x) {
    require(x.size() == dim_, "dimension mismatch in advance");
    if (step() >= budget_) fail(Errc::budget_exhausted, "resisting oracle budget exhausted");
    int pick = -1;
    double top = -1.0;
    for (int j = 0; j < dim_; ++j) {
        if (used_[j]) continue;
        double a = std::abs(x[j]);
        if (a > top) {
            top = a;
            pick = j;
        }
    }
    used_[pick] = 1;
    alpha_.push_back(pick);
    xi_.push_back(x[pick] < 0.0 ? -1 : 1);
}

ResistingState ResistingState::prefix(int s) const {
    require(s >= 0 && s <= step(), "prefix length out of range");
    return from_pieces(dim_, budget_, delta_, {alpha_.begin(), alpha_.begin() + s}, {xi_.begin(), xi_.begin() + s});
}

bool ResistingState::is_prefix_of(const ResistingState& other) const {
    if (dim_ != other.dim_ || delta_ != other.delta_ || step() > other.step()) return false;
    for (int k = 0; k < step(); ++k)
        if (alpha_[k] != other.alpha_[k] || xi_[k] != other.xi_[k]) return false;
    return true;
}

bool check_indistinguishable(const ResistingState& s, const ResistingState& t, const Vector& x) {
    if (!s.is_prefix_of(t)) fail(Errc::invalid_argument, "indistinguishability needs a prefix state");
    return s.value(x) == t.value(x);
}

ResistingState replay_trajectory(const std::vector<Vector>& queries, int dim, int budget, double delta) {
    ResistingState s(dim, budget, delta);
    for (const auto& x : queries) s.advance(x);
    return s;
}

double min_r_closed_form(double beta, double sigma, int q, int budget_t) {
    require(beta > 0.0 && sigma > 0.0 && q >= 2 && budget_t >= 1, "min_r_closed_form needs positive inputs");
    double inner = std::pow(beta, q) / (sigma * std::pow(double(budget_t), 0.5 * q));
    return -(double(q - 1) / q) * std::pow(inner, 1.0 / (q - 1));
}

double gap_lower_bound(const Case1Schedule& s, const ProblemParams& params) {
    const int q = params.q();
    double inner = std::pow(s.beta, q) / (params.sigma() * std::pow(double(s.budget_t), 0.5 * q));
    return (double(q - 1) / (2.0 * q)) * std::pow(inner, 1.0 / (q - 1));
}

HardInstanceCase1::HardInstanceCase1(const ProblemParams& params, int budget_t, int samples, std::uint64_t seed)
    : params_(params),
      schedule_(schedule_case1(params, budget_t)),
      state_(params.dim(), budget_t, schedule_.delta),
      smoothed_(state_, schedule_.rho, params.p(), samples, seed, 1.0) {}

void HardInstanceCase1::check_domain(const Vector& x) const {
    require(x.size() == params_.dim(), "dimension mismatch");
    double n = x.norm();
    if (!(n <= schedule_.cap_d * (1.0 + 1e-12))) {
        std::ostringstream os;
        os << "query norm " << n << " exceeds domain radius " << schedule_.cap_d;
        fail(Errc::domain_violation, os.str());
    }
}

double HardInstanceCase1::regularizer(const Vector& x) const {
    return params_.sigma() / params_.q() * std::pow(x.norm(), params_.q());
}

Vector HardInstanceCase1::regularizer_gradient(const Vector& x) const {
    double n = x.norm();
    if (n == 0.0) return Vector::Zero(x.size());
    return params_.sigma() * std::pow(n, params_.q() - 2) * x;
}

ScalarEstimate HardInstanceCase1::f_value(const Vector& x) const {
    check_domain(x);
    ScalarEstimate s = smoothed_.value(x);
    return {schedule_.beta * s.value + regularizer(x), schedule_.beta * s.std_err};
}

VectorEstimate HardInstanceCase1::f_gradient(const Vector& x) const {
    check_domain(x);
    VectorEstimate g = smoothed_.gradient(x);
    return {schedule_.beta * g.value + regularizer_gradient(x), schedule_.beta * g.std_err};
}

double HardInstanceCase1::r_value(const Vector& x) const {
    double top = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < state_.step(); ++k) top = std::max(top, state_.xi()[k] * x[state_.alpha()[k]]);
    return schedule_.beta * top + regularizer(x);
}

Case1Answer HardInstanceCase1::query(const Vector& x) {
    check_domain(x);
    state_.advance(x);
    ScalarEstimate v = f_value(x);
    VectorEstimate g = f_gradient(x);
    return {v.value, v.std_err, std::move(g.value), g.std_err};
}

double HardInstanceCase1::surrogate_optimum() const {
    return min_r_closed_form(schedule_.beta, params_.sigma(), params_.q(), schedule_.budget_t)
           + 1.25 * params_.p() * schedule_.beta * schedule_.rho * std::sqrt(double(params_.dim()));
}

}  // namespace oraclab
