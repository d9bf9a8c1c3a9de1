#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace miae {

// Dense row-major matrix of 64-bit floats. Also used for row vectors
// (1 x n), e.g. biases and single samples.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    double* row(std::size_t r) { return values_.data() + r * cols_; }
    const double* row(std::size_t r) const { return values_.data() + r * cols_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }
    bool all_finite() const;

    // Rows of this matrix at the given indices, in the given order.
    Matrix gather_rows(const std::vector<std::size_t>& indices) const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

enum class Activation { Tanh, Relu };

// out[i,k] = sum_j x[i,j] * w[j,k] + b[k].  b is a 1 x d_out row vector.
Matrix affine_forward(const Matrix& x, const Matrix& w, const Matrix& b);

// Elementwise activation, shape preserved.
Matrix activate(const Matrix& x, Activation kind);

// Mean over rows of the summed squared per-row difference:
// (1/m) * sum_i ||a_i - b_i||^2.
double mse(const Matrix& a, const Matrix& b);

// Plain matrix product a * b.
Matrix matmul(const Matrix& a, const Matrix& b);
// a^T * b without materializing the transpose.
Matrix matmul_at_b(const Matrix& a, const Matrix& b);
// a * b^T without materializing the transpose.
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);
// 1 x cols row vector of column sums.
Matrix column_sums(const Matrix& x);

// Column-wise concatenation; all parts must share the row count.
Matrix hconcat(const std::vector<Matrix>& parts);

}  // namespace miae
