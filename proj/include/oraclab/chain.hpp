#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oraclab/linalg.hpp"
#include "oraclab/params.hpp"

namespace oraclab {

// Chain function for the q < p + nu family:
//   ft(y) = (1/s) sum_{i<T} |y_i - y_{i+1}|^s - gamma y_1 + (st/q)||y||^q,   s = p + nu
//   f(x)  = scale (sum_i g(<v_i - v_{i+1}, x>) - gamma <v_1, x>) + (sigma/q)||x||^q
// with scale = H / (2^{s+1} Gamma(s)) and sigma = scale * st.
// Basis vectors v_i are produced one at a time by an adversary that keeps each
// new one orthogonal to every point queried so far.
class ChainInstance {
public:
    ChainInstance(const ProblemParams& params, double gamma, int chain_len, std::uint64_t seed = 0);
    // Instance from the tilde parameters; sigma is derived so that sigma_tilde matches.
    static ChainInstance from_tilde(int p, double nu, int q, double gamma, double sigma_t, int chain_len, int dim,
                                    std::uint64_t seed = 0, double holder_h = 1.0);

    const ProblemParams& params() const { return params_; }
    double gamma() const { return gamma_; }
    double sigma_t() const { return sigma_t_; }
    int chain_len() const { return chain_len_; }
    double scale() const { return scale_; }
    int dim() const { return params_.dim(); }
    std::uint64_t seed() const { return seed_; }
    double s() const { return params_.p() + params_.nu(); }

    // tilde function on T-vectors
    double tilde_value(const Vector& y) const;
    Vector tilde_gradient(const Vector& y) const;
    Matrix tilde_hessian(const Vector& y) const;
    // p-th directional derivative of ft along u (any p >= 1)
    double tilde_directional(const Vector& y, const Vector& u, int order) const;

    // full function; requires all chain_len basis vectors
    double value(const Vector& x) const;
    Vector gradient(const Vector& x) const;
    Matrix hessian(const Vector& x) const;
    // Same formulas using only the basis built so far (missing v_i count as 0).
    // They agree with the full versions at any x orthogonal to the missing vectors.
    double value_available(const Vector& x) const;
    Vector gradient_available(const Vector& x) const;
    Matrix hessian_available(const Vector& x) const;

    const std::vector<Vector>& basis() const { return basis_; }
    int basis_size() const { return int(basis_.size()); }
    // Append a unit vector orthogonal to every queried point and every existing
    // basis vector (Gram-Schmidt, two passes).
    const Vector& adversarial_basis_next(const std::vector<Vector>& queried);
    // Replace the basis; vectors must be orthonormal.
    void set_basis(std::vector<Vector> basis);
    void use_identity_basis();
    // Reseed the adversary for the vectors not yet drawn.
    void reseed(std::uint64_t seed) { seed_ = seed; }

private:
    Vector projections(const Vector& x, bool need_full) const;
    double eval(const Vector& x, bool need_full) const;
    Vector grad(const Vector& x, bool need_full) const;
    Matrix hess(const Vector& x, bool need_full) const;

    ProblemParams params_;
    double gamma_;
    double sigma_t_;
    int chain_len_;
    double scale_;
    std::uint64_t seed_;
    std::vector<Vector> basis_;
};

struct ChainOptimum {
    Vector y;
    double norm_y = 0.0;
    double residual = 0.0;  // ||grad ft(y)||
    int iterations = 0;
};

// damped Newton with Levenberg-Marquardt fallback and Armijo backtracking
ChainOptimum solve_opt_bruteforce(const ChainInstance& inst, double tol = 1e-12);
// Shooting on the stationarity recurrence in 50-digit arithmetic: outer damped
// fixed point on r = ||y||, inner bisection on log y_T through the backward form
// y_i = y_{i+1} + (st r^{q-2} sum_{j>i} y_j)^{1/(s-1)}.
ChainOptimum solve_opt_recurrence(const ChainInstance& inst, double tol = 1e-12);

enum class LemmaStatus { pass, fail, not_applicable };
const char* to_string(LemmaStatus s);

struct LemmaCheck {
    std::string name;
    LemmaStatus status = LemmaStatus::not_applicable;
    double slack = 0.0;  // >= 0 means the inequality holds with that margin
    std::string detail;
};

struct LemmaReport {
    std::vector<LemmaCheck> checks;
    int threshold_index = -1;  // 1-based t1, -1 if no such index
    bool all_passed() const;   // nothing reported as fail
    const LemmaCheck& get(const std::string& name) const;
};

// Coordinate-structure inequalities of the chain optimum. Checks whose hypotheses
// do not hold are reported as not_applicable.
LemmaReport verify_chain_optimum(const ChainInstance& inst, const ChainOptimum& opt);

// constant used by the tail lower bounds, k^{(1-k)/k} + (k/(k-1)^2)^{1/k}
double tail_constant(double k);
double chain_norm_bound(const ChainInstance& inst);

// versioned plain-text snapshot: parameters, gamma, sigma_t, chain length, seed, basis
void save_snapshot(const ChainInstance& inst, std::ostream& os);
ChainInstance load_snapshot(std::istream& is);

}  // namespace oraclab
