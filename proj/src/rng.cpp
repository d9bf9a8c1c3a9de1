#include "miae/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "miae/error.hpp"

namespace miae {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() {
    ++counter_;
    return mix64(seed_ + counter_ * kGolden);
}

double Rng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
}

std::uint64_t Rng::next_below(std::uint64_t n) {
    return next_u64() % n;
}

double Rng::next_normal() {
    const double u1 = 1.0 - next_unit();  // (0, 1], keeps the log finite
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Rng Rng::derive(std::uint64_t stream) const {
    return Rng(mix64(seed_ ^ mix64(stream + kGolden)));
}

Matrix glorot_init(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
    if (fan_in == 0 || fan_out == 0) {
        throw DimensionError("glorot_init: fan_in and fan_out must be >= 1, got " +
                             std::to_string(fan_in) + "x" + std::to_string(fan_out));
    }
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Matrix w(fan_in, fan_out);
    double* v = w.data();
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = rng.next_uniform(-limit, limit);
    return w;
}

std::vector<std::size_t> shuffle_indices(std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

}  // namespace miae
