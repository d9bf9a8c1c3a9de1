#pragma once

#include <cstdint>
#include <vector>

#include "miae/matrix.hpp"

namespace miae {

// Counter-based generator (splitmix64 mixing). The stream is a pure
// function of (seed, counter), so identical seeds reproduce identical
// streams bitwise and child streams can be derived without sharing state.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64();
    // Uniform in [0, 1).
    double next_unit();
    // Uniform in [lo, hi).
    double next_uniform(double lo, double hi);
    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n);
    // Standard normal via Box-Muller.
    double next_normal();

    // Independent child stream; deterministic in (seed, stream).
    Rng derive(std::uint64_t stream) const;

private:
    std::uint64_t seed_ = 0;
    std::uint64_t counter_ = 0;
};

// Glorot uniform init: entries drawn from [-L, L], L = sqrt(6/(fan_in+fan_out)).
Matrix glorot_init(std::size_t fan_in, std::size_t fan_out, Rng& rng);

// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> shuffle_indices(std::size_t n, Rng& rng);

}  // namespace miae
