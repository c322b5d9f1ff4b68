#pragma once

#include <cstdint>

namespace dynmatch {

// xorshift64* with the published constants (shifts 12/25/27, multiplier
// 0x2545F4914F6CDD1D): a fixed, portable generator so that a (kind, seed)
// pair reproduces bit-identical workloads on any implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    // Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Bernoulli with probability p.
    bool chance(double p) { return static_cast<double>(next() >> 11) / 9007199254740992.0 < p; }

private:
    std::uint64_t state_;
};

}  // namespace dynmatch
