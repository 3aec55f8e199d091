#pragma once

#include <cstdint>
#include <vector>

#include "oraclab/linalg.hpp"
#include "oraclab/params.hpp"
#include "oraclab/smoothing.hpp"

namespace oraclab {

// Adversary state for the max-of-coordinates hard function
//   g_t(x) = max_{k <= t} xi_k x[alpha_k] - (k-1) delta.
// Coordinates are 0-based here. Ties are broken toward the smallest index in
// both the coordinate choice and the active piece; sign(0) = +1.
class ResistingState : public BaseFunction {
public:
    ResistingState(int dim, int budget, double delta);
    // Build a state directly from chosen pieces (validated).
    static ResistingState from_pieces(int dim, int budget, double delta, std::vector<int> alpha,
                                      std::vector<int> xi);

    int dim() const override { return dim_; }
    int step() const { return int(alpha_.size()); }
    int budget() const { return budget_; }
    double delta() const { return delta_; }
    const std::vector<int>& alpha() const { return alpha_; }
    const std::vector<int>& xi() const { return xi_; }

    double value(const Vector& x) const override;
    Vector subgradient(const Vector& x) const override;
    void subgradient_into(const Vector& x, Vector& out) const override;
    // 0-based index of the smallest piece attaining the max
    int active_piece(const Vector& x) const;

    // Commit the next coordinate and sign after seeing the query x.
    void advance(const Vector& x);

    ResistingState prefix(int s) const;
    bool is_prefix_of(const ResistingState& other) const;

private:
    int dim_;
    int budget_;
    double delta_;
    std::vector<int> alpha_;
    std::vector<int> xi_;
    std::vector<char> used_;
};

// g_s(x) == g_t(x) bitwise. Throws unless s is a nonempty prefix of t.
bool check_indistinguishable(const ResistingState& s, const ResistingState& t, const Vector& x);

// Replays recorded queries through a fresh adversary.
ResistingState replay_trajectory(const std::vector<Vector>& queries, int dim, int budget, double delta);

double min_r_closed_form(double beta, double sigma, int q, int budget_t);
double gap_lower_bound(const Case1Schedule& schedule, const ProblemParams& params);

struct Case1Answer {
    double value;
    double value_se;
    Vector grad;
    double grad_se;
};

// F_t(x) = beta * S[g_t](x) + (sigma/q) ||x||^q on the ball ||x|| <= D.
// Holds a smoothed oracle that points into its own state, so it is pinned in memory.
class HardInstanceCase1 {
public:
    HardInstanceCase1(const ProblemParams& params, int budget_t, int samples = kDefaultSmoothingSamples,
                      std::uint64_t seed = 0);
    HardInstanceCase1(const HardInstanceCase1&) = delete;
    HardInstanceCase1& operator=(const HardInstanceCase1&) = delete;

    const ProblemParams& params() const { return params_; }
    const Case1Schedule& schedule() const { return schedule_; }
    const ResistingState& state() const { return state_; }
    ResistingState& state() { return state_; }
    const SmoothedOracle& smoothed() const { return smoothed_; }

    ScalarEstimate f_value(const Vector& x) const;
    VectorEstimate f_gradient(const Vector& x) const;
    // beta * max_k xi_k x[alpha_k] + (sigma/q)||x||^q for the current pieces
    double r_value(const Vector& x) const;
    double regularizer(const Vector& x) const;
    Vector regularizer_gradient(const Vector& x) const;

    // advance the adversary on x, then answer from the updated state
    Case1Answer query(const Vector& x);

    // upper estimate of min F used for gaps: min R + (5/4) p beta rho sqrt(d)
    double surrogate_optimum() const;
    double gap_bound() const { return gap_lower_bound(schedule_, params_); }

    void check_domain(const Vector& x) const;

private:
    ProblemParams params_;
    Case1Schedule schedule_;
    ResistingState state_;
    SmoothedOracle smoothed_;
};

}  // namespace oraclab
