#include "miae/optimizer.hpp"

#include <cmath>

#include "miae/error.hpp"

namespace miae {

AdamState::AdamState(std::size_t rows, std::size_t cols, double lr_)
    : m(rows, cols), v(rows, cols), lr(lr_) {}

void adam_step(Matrix& param, const Matrix& grad, AdamState& state) {
    if (!param.same_shape(grad) || !param.same_shape(state.m) || !param.same_shape(state.v)) {
        throw DimensionError("adam_step: parameter, gradient and moment shapes must match");
    }
    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    double* p = param.data();
    const double* g = grad.data();
    double* m = state.m.data();
    double* v = state.v.data();
    for (std::size_t i = 0; i < param.size(); ++i) {
        m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
        v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
        const double mhat = m[i] / bc1;
        const double vhat = v[i] / bc2;
        p[i] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
    }
}

}  // namespace miae
