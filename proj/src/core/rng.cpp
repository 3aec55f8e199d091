#include "oraclab/rng.hpp"

#include "oraclab/error.hpp"
#include "oraclab/special.hpp"

namespace oraclab {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    std::uint64_t t = stream ^ a;
    return splitmix64(t);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(stream_seed(seed, stream)), seed_(seed), stream_(stream) {}

double Rng::uniform() {
    // 53 random bits centred in their cell: never 0, never 1
    return (double(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() { return normal_quantile(uniform()); }

std::size_t Rng::index(std::size_t n) {
    require(n > 0, "index range must be nonempty");
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return std::size_t(x % n);
}

}  // namespace oraclab
