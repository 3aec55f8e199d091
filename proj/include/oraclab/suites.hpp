#pragma once

#include <cstdint>
#include <vector>

#include "oraclab/lab.hpp"
#include "oraclab/verify.hpp"

namespace oraclab {

// Bundled verification runs behind the CLI subcommands. Each returns one
// CheckReport per property; a suite passes when every report passes.

struct SampleCheckConfig {
    std::uint64_t seed = 42;
    long draws = 100000;       // sampler draws for the marginal tests
    long box_draws = 1000000;  // untruncated draws for the box-mass estimates
    int dim = 3;
};

struct Case1SuiteConfig {
    std::uint64_t seed = 42;
    int p = 1;
    double nu = 0.5;
    int q = 2;
    double sigma = 1.0;
    double holder_h = 1000.0;
    int dim = 16;  // also the step budget
    int pairs = 1000;
    int samples = kDefaultSmoothingSamples;
};

struct Case2SuiteConfig {
    std::uint64_t seed = 42;
    int instances = 20;
    int pairs = 1000;
    int max_len = 12;
};

std::vector<CheckReport> run_sample_check(const SampleCheckConfig& cfg);
std::vector<CheckReport> run_case1_suite(const Case1SuiteConfig& cfg);
std::vector<CheckReport> run_case2_suite(const Case2SuiteConfig& cfg);

bool all_passed(const std::vector<CheckReport>& reports);

// ratio-style report for a pass/fail property: worst_ratio is 0 when it holds
CheckReport boolean_report(std::string name, bool ok, long samples, std::uint64_t seed, SlackRegime regime);

// checks used by more than one place
CheckReport ks_report(std::string name, const std::vector<double>& samples, std::uint64_t seed);
CheckReport box_mass_report(int dim, long draws, std::uint64_t seed);
// all recorded queries and random points within l-inf radius delta/2 of them
CheckReport indistinguishability_report(std::string name, const std::vector<Vector>& queries, int dim, int budget,
                                        double delta, int probes, std::uint64_t seed);
// final gap >= bound - 3 se, reported as (bound - 3 se) / gap
CheckReport gap_report(std::string name, const RunResult& run, double bound, std::uint64_t seed);
// random LowQ chain instance with q = 2
ChainInstance random_chain_instance(Rng& rng, int max_len);

}  // namespace oraclab
