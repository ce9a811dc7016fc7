#include "bootlab/rng.hpp"

#include <cmath>

namespace bootlab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
    std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
    return dist(engine_);
}

unsigned poisson_from_uniform(double a, double u) {
    if (a <= 0.0) return 0;
    double term = std::exp(-a);
    double cdf = term;
    unsigned k = 0;
    // The cap only matters for u within rounding of 1.
    while (u >= cdf && k < 10000) {
        ++k;
        term *= a / k;
        cdf += term;
        if (term == 0.0 && cdf <= u) break;
    }
    return k;
}

}  // namespace bootlab
