#include "miae/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "miae/error.hpp"

namespace miae {

Matrix finite_diff_grad(const std::function<double(const Matrix&)>& loss_fn,
                        const Matrix& param, double eps) {
    if (eps <= 0.0) throw NumericError("finite_diff_grad: eps must be > 0");
    Matrix grad(param.rows(), param.cols());
    Matrix probe = param;
    for (std::size_t i = 0; i < param.size(); ++i) {
        const double saved = probe.data()[i];
        probe.data()[i] = saved + eps;
        const double up = loss_fn(probe);
        probe.data()[i] = saved - eps;
        const double down = loss_fn(probe);
        probe.data()[i] = saved;
        if (!std::isfinite(up) || !std::isfinite(down)) {
            throw NumericError("finite_diff_grad: non-finite loss at entry " +
                               std::to_string(i));
        }
        grad.data()[i] = (up - down) / (2.0 * eps);
    }
    return grad;
}

double relative_error(const Matrix& a, const Matrix& b, double floor) {
    if (!a.same_shape(b)) throw DimensionError("relative_error: shape mismatch");
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        diff += d * d;
        na += a.data()[i] * a.data()[i];
        nb += b.data()[i] * b.data()[i];
    }
    return std::sqrt(diff) / std::max(std::sqrt(na) + std::sqrt(nb), floor);
}

}  // namespace miae
