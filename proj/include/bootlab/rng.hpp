#pragma once

#include <cstdint>
#include <random>

namespace bootlab {

// SplitMix64 finalizer, used to derive independent per-trial streams.
std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1], safe for logarithms.
    double uniform_pos() { return 1.0 - uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t below(std::uint64_t bound);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) { return Rng(derive_seed(seed, trial)); }

// Visits the indices of a Bernoulli(p) subset of [0, total) in increasing order
// using geometric gaps, so the cost is proportional to the number of hits.
template <class F>
void for_each_bernoulli(std::uint64_t total, double p, Rng& rng, F&& visit);

// Inverse-CDF Poisson draw from a supplied uniform in [0,1).
unsigned poisson_from_uniform(double a, double u);

}  // namespace bootlab

#include <cmath>

namespace bootlab {

template <class F>
void for_each_bernoulli(std::uint64_t total, double p, Rng& rng, F&& visit) {
    if (total == 0 || p <= 0.0) return;
    if (p >= 1.0) {
        for (std::uint64_t i = 0; i < total; ++i) visit(i);
        return;
    }
    const double denom = std::log1p(-p);
    std::uint64_t idx = 0;
    bool first = true;
    while (true) {
        double gap = std::floor(std::log(rng.uniform_pos()) / denom);
        if (gap >= static_cast<double>(total)) return;
        std::uint64_t step = static_cast<std::uint64_t>(gap);
        if (first) {
            idx = step;
            first = false;
        } else {
            idx += step + 1;
        }
        if (idx >= total) return;
        visit(idx);
    }
}

}  // namespace bootlab
