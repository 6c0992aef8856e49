// Deterministic counter-based randomness. Every random decision in the
// project is a pure function of (seed, index), so sampling is independent
// of iteration order and thread schedule.
#pragma once

#include <cstdint>

namespace perc {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Bijective on uint64.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Keyed hash of an index. For a fixed seed, distinct indices give distinct
// inner values (splitmix64 is a bijection), then a second pass decorrelates
// across seeds.
constexpr std::uint64_t mix_pair(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

// Uniform on (0,1]: 53-bit mantissa, never exactly 0, exactly 1 at the top.
// An edge is open at parameter p iff unit_uniform(seed, index) <= p, which
// makes couplings across p monotone by construction and gives the exact
// degenerate behavior at p = 0 and p = 1.
constexpr double unit_uniform(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>((mix_pair(seed, index) >> 11) + 1) * 0x1.0p-53;
}

// Per-trial seed for Monte Carlo experiments: fixed mixing of
// (master seed, box size, trial index). Stable across versions so that
// regression baselines stay valid.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t n,
                                   std::uint64_t trial) {
    return mix_pair(mix_pair(master, n), trial);
}

}  // namespace perc
