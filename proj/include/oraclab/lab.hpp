#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oraclab/chain.hpp"
#include "oraclab/linalg.hpp"
#include "oraclab/nemirovski.hpp"
#include "oraclab/params.hpp"

namespace oraclab {

enum class Algorithm { subgradient, gradient_descent, agd, restarted_agd };

const char* to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);
std::vector<Algorithm> all_algorithms();

struct OracleAnswer {
    double value = 0.0;
    double value_se = 0.0;
    Vector grad;
    double grad_se = 0.0;
    double curvature = 0.0;  // local smoothness estimate at the query, 0 if none
};

// What an algorithm may assume about the problem when picking step sizes.
struct StepHints {
    double sigma;       // uniform convexity modulus
    int q;              // uniform convexity degree
    double lipschitz;   // bound on the nonsmooth part's subgradients
    double smoothness;  // global gradient Lipschitz estimate, 0 if only local curvature is known
    double radius;      // feasible ball radius, infinity if unconstrained
};

// An adaptive first-order oracle: the adversary may change the hidden function
// after seeing each query, consistently with all earlier answers.
class ResistingOracle {
public:
    virtual ~ResistingOracle() = default;
    virtual std::string descriptor() const = 0;
    virtual int dim() const = 0;
    virtual OracleAnswer query(const Vector& x) = 0;
    virtual Vector project(const Vector& x) const = 0;
    // reference optimal value used for gaps (an upper estimate where exact is unavailable)
    virtual double optimum_estimate() const = 0;
    virtual StepHints hints() const = 0;
    // coordinate and sign the adversary committed to at the last query; -1/0 when not applicable
    virtual int last_alpha() const { return -1; }
    virtual int last_xi() const { return 0; }
};

class Case1Oracle : public ResistingOracle {
public:
    Case1Oracle(const ProblemParams& params, int budget_t, int samples, std::uint64_t seed);
    std::string descriptor() const override;
    int dim() const override { return inst_->params().dim(); }
    OracleAnswer query(const Vector& x) override;
    Vector project(const Vector& x) const override;
    double optimum_estimate() const override { return inst_->surrogate_optimum(); }
    StepHints hints() const override;
    int last_alpha() const override;
    int last_xi() const override;
    const HardInstanceCase1& instance() const { return *inst_; }

private:
    std::unique_ptr<HardInstanceCase1> inst_;
};

class ChainOracle : public ResistingOracle {
public:
    // The optimum is computed once from the tilde problem with the Newton solver.
    explicit ChainOracle(ChainInstance inst);
    std::string descriptor() const override;
    int dim() const override { return inst_.dim(); }
    OracleAnswer query(const Vector& x) override;
    Vector project(const Vector& x) const override { return x; }
    double optimum_estimate() const override { return f_star_; }
    StepHints hints() const override;
    const ChainInstance& instance() const { return inst_; }
    const std::vector<Vector>& queried() const { return queried_; }

private:
    ChainInstance inst_;
    std::vector<Vector> queried_;
    double f_star_;
};

struct RunRecord {
    int run_id = 0;
    std::string instance;
    std::string algorithm;
    int step = 0;
    double x_norm = 0.0;
    double value = 0.0;
    double value_se = 0.0;
    double gap = 0.0;
    double gap_se = 0.0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;  // kept in memory only; never written to CSV
};

struct TrajectoryRecord {
    int step = 0;
    Vector x;
    int alpha = -1;  // 0-based, -1 when the oracle has no coordinate choice
    int xi = 0;
    double value = 0.0;
    double grad_norm = 0.0;
};

struct RunResult {
    std::vector<RunRecord> records;
    std::vector<TrajectoryRecord> trajectory;
    // gap of the best point at each restart of restarted_agd (empty otherwise)
    std::vector<double> restart_gaps;
};

RunResult run_algorithm(ResistingOracle& oracle, Algorithm algo, int steps, const Vector& init,
                        std::uint64_t seed = 0, int run_id = 0);

enum class InstanceKind { case1, case2 };

struct RaceConfig {
    InstanceKind instance = InstanceKind::case1;
    std::vector<Algorithm> algorithms = all_algorithms();
    int p = 1;
    double nu = 1.0;
    int q = 3;
    double sigma = 1.0;
    double holder_h = 1000.0;
    int dim = 16;            // case1: also the default step budget
    int steps = 0;           // 0 means: case1 uses dim, case2 uses 8
    int samples = kDefaultSmoothingSamples;
    double gamma = 1.0;      // case2
    int chain_len = 0;       // case2, 0 means steps + 1
    std::uint64_t seed = 42;
};

struct RaceOutput {
    std::vector<RunResult> runs;  // one per algorithm, in config order
};

// One independent run per algorithm, each against a fresh adversary. Runs may
// execute on worker threads (ORACLAB_THREADS caps the count); output order and
// content do not depend on the thread count.
RaceOutput run_race(const RaceConfig& cfg);

int worker_count(int tasks);

std::string run_csv_header();
void write_run_csv(std::ostream& os, const std::vector<RunRecord>& records, bool header = true);
std::string trajectory_csv_header(int dim);
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRecord>& traj, int run_id,
                          const std::string& algorithm);

struct ScalingFit {
    double slope;
    double stderr_slope;
};

// least-squares slope of log T against log(1/eps); input pairs are (eps, T)
ScalingFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& eps_t);

}  // namespace oraclab
