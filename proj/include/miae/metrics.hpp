#pragma once

#include <optional>
#include <string>
#include <vector>

#include "miae/matrix.hpp"

namespace miae {

struct ConfusionMatrix {
    std::size_t n_classes = 0;
    std::vector<std::size_t> counts;  // row-major (true class, predicted class)
    std::vector<std::string> class_names;

    std::size_t& at(std::size_t truth, std::size_t pred) {
        return counts[truth * n_classes + pred];
    }
    std::size_t at(std::size_t truth, std::size_t pred) const {
        return counts[truth * n_classes + pred];
    }
    std::size_t total() const;
};

// Between-class separation, within-class spread, and their ratio; the ratio
// is absent when d_wit is zero.
struct QualityReport {
    double d_bet = 0.0;
    double d_wit = 0.0;
    std::optional<double> data_quality;
    std::vector<std::vector<double>> class_means;  // mu per class, length d_z each
    std::vector<std::size_t> class_counts;
    std::size_t d_z = 0;
};

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          std::size_t n_classes);

double accuracy(const ConfusionMatrix& cm);

// Macro-averaged F1 over one-vs-rest classes; a class with P + R = 0
// contributes 0.
double fscore(const ConfusionMatrix& cm);

// Binarized normal-vs-attack rates: FAR = FP / (FP + TN) over normal rows,
// MDR = FN / (FN + TP) over attack rows.
struct FarMdr {
    double far = 0.0;
    double mdr = 0.0;
};
FarMdr far_mdr(const ConfusionMatrix& cm, std::size_t normal_class);

// Per-class per-dimension means; every class present in y must be non-empty.
std::vector<std::vector<double>> class_means(const Matrix& z, const std::vector<int>& y,
                                             std::size_t n_classes);

QualityReport quality(const Matrix& z, const std::vector<int>& y, std::size_t n_classes);

}  // namespace miae
