#pragma once

#include <cstdint>

#include "miae/matrix.hpp"

namespace miae {

// Per-parameter Adam state. Moments share the parameter's shape; t counts
// completed steps.
struct AdamState {
    Matrix m;
    Matrix v;
    std::uint64_t t = 0;
    double lr = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    AdamState() = default;
    AdamState(std::size_t rows, std::size_t cols, double lr);
};

// Standard Adam update with bias correction, applied in place.
void adam_step(Matrix& param, const Matrix& grad, AdamState& state);

}  // namespace miae
