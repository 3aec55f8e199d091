#pragma once

#include <cstdint>
#include <random>

namespace oraclab {

// splitmix64 step; also used to derive independent stream seeds
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

// Seedable 64-bit generator. Variates are produced by our own transforms so
// sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t bits() { return engine_(); }
    double uniform();                        // open interval (0,1)
    double uniform(double lo, double hi);
    double normal();
    std::size_t index(std::size_t n);        // uniform in [0, n)

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t stream_;
};

}  // namespace oraclab
