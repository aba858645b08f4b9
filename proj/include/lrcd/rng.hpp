#pragma once

#include <cstdint>
#include <vector>

#include "lrcd/errors.hpp"

namespace lrcd {

// splitmix64 finalizer (Steele, Lea & Flood / Vigna). Used both as the
// generator's output function and to derive independent child streams.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based splitmix64 generator. The state advances by a fixed odd
// constant and each output is mix64(state), so the sequence is a pure
// function of (seed, call index) and identical on every platform.
// Distribution sampling is done by hand below; std::<...>_distribution is
// implementation-defined and would break cross-machine reproducibility.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    bool bernoulli(double p) { return next_double() < p; }

    // Index into probs by inverse CDF; tail rounding falls into the last class.
    int categorical(const std::vector<double>& probs) {
        const double u = next_double();
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size()) - 1;
    }

    // Child stream for (master seed, index): replicates, restarts, etc.
    // Two mix64 rounds keep nearby indices statistically unrelated.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
        return mix64(mix64(master + 0x9E3779B97F4A7C15ULL) +
                     (index + 1) * 0xD1B54A32D192ED03ULL);
    }

private:
    std::uint64_t state_;
};

}  // namespace lrcd
