#pragma once

#include <functional>

#include "miae/matrix.hpp"

namespace miae {

// Central-difference gradient estimate of a scalar loss with respect to one
// parameter matrix: (f(p + eps*e) - f(p - eps*e)) / (2*eps) per entry.
// The loss function is re-evaluated with the perturbed parameter; a
// non-finite loss raises NumericError.
Matrix finite_diff_grad(const std::function<double(const Matrix&)>& loss_fn,
                        const Matrix& param, double eps = 1e-5);

// ||a - b||_F / max(||a||_F + ||b||_F, floor); the usual gradient-check score.
double relative_error(const Matrix& a, const Matrix& b, double floor = 1e-8);

}  // namespace miae
