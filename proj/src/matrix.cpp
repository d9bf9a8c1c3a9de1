#include "miae/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "miae/error.hpp"

namespace miae {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
        throw DimensionError("matrix value count " + std::to_string(values_.size()) +
                             " does not match shape " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size());
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != m.cols_) {
            throw DimensionError("ragged initializer row " + std::to_string(r));
        }
        std::copy(row.begin(), row.end(), m.row(r));
        ++r;
    }
    return m;
}

bool Matrix::all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return std::isfinite(v); });
}

Matrix Matrix::gather_rows(const std::vector<std::size_t>& indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= rows_) {
            throw DimensionError("row index " + std::to_string(indices[i]) +
                                 " out of range for " + std::to_string(rows_) + " rows");
        }
        std::copy(row(indices[i]), row(indices[i]) + cols_, out.row(i));
    }
    return out;
}

namespace {

void require_shape(bool ok, const std::string& what) {
    if (!ok) throw DimensionError(what);
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    require_shape(a.cols() == b.rows(), "matmul: inner dimensions " +
                                            std::to_string(a.cols()) + " vs " +
                                            std::to_string(b.rows()));
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        double* orow = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
    require_shape(a.rows() == b.rows(), "matmul_at_b: row counts differ");
    Matrix out(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        const double* brow = b.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            double* orow = out.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
    require_shape(a.cols() == b.cols(), "matmul_a_bt: column counts differ");
    Matrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        double* orow = out.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* brow = b.row(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += arow[k] * brow[k];
            orow[j] = acc;
        }
    }
    return out;
}

Matrix column_sums(const Matrix& x) {
    Matrix out(1, x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double* xrow = x.row(i);
        for (std::size_t j = 0; j < x.cols(); ++j) out(0, j) += xrow[j];
    }
    return out;
}

Matrix affine_forward(const Matrix& x, const Matrix& w, const Matrix& b) {
    require_shape(x.cols() == w.rows(), "affine_forward: input width " +
                                            std::to_string(x.cols()) +
                                            " does not match weight rows " +
                                            std::to_string(w.rows()));
    require_shape(b.rows() == 1 && b.cols() == w.cols(),
                  "affine_forward: bias must be 1x" + std::to_string(w.cols()));
    Matrix out = matmul(x, w);
    for (std::size_t i = 0; i < out.rows(); ++i) {
        double* orow = out.row(i);
        for (std::size_t j = 0; j < out.cols(); ++j) orow[j] += b(0, j);
    }
    return out;
}

Matrix activate(const Matrix& x, Activation kind) {
    Matrix out = x;
    double* v = out.data();
    if (kind == Activation::Tanh) {
        for (std::size_t i = 0; i < out.size(); ++i) v[i] = std::tanh(v[i]);
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) v[i] = v[i] > 0.0 ? v[i] : 0.0;
    }
    return out;
}

double mse(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) {
        throw DimensionError("mse: shapes " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                             "x" + std::to_string(b.cols()));
    }
    if (a.rows() == 0) throw DimensionError("mse: empty matrices");
    double total = 0.0;
    const double* pa = a.data();
    const double* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = pa[i] - pb[i];
        total += d * d;
    }
    return total / static_cast<double>(a.rows());
}

Matrix hconcat(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw DimensionError("hconcat: no parts");
    std::size_t cols = 0;
    for (const Matrix& p : parts) {
        require_shape(p.rows() == parts.front().rows(), "hconcat: row counts differ");
        cols += p.cols();
    }
    Matrix out(parts.front().rows(), cols);
    for (std::size_t i = 0; i < out.rows(); ++i) {
        double* orow = out.row(i);
        std::size_t offset = 0;
        for (const Matrix& p : parts) {
            std::copy(p.row(i), p.row(i) + p.cols(), orow + offset);
            offset += p.cols();
        }
    }
    return out;
}

}  // namespace miae
