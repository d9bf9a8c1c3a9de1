#include "miae/metrics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "miae/error.hpp"

namespace miae {

std::size_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          std::size_t n_classes) {
    if (y_true.size() != y_pred.size()) {
        throw DimensionError("confusion: label vectors differ in length");
    }
    ConfusionMatrix cm;
    cm.n_classes = n_classes;
    cm.counts.assign(n_classes * n_classes, 0);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i];
        const int p = y_pred[i];
        if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= n_classes ||
            static_cast<std::size_t>(p) >= n_classes) {
            throw DimensionError("confusion: class index out of range at row " +
                                 std::to_string(i));
        }
        ++cm.at(static_cast<std::size_t>(t), static_cast<std::size_t>(p));
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    const std::size_t total = cm.total();
    if (total == 0) throw DimensionError("accuracy: empty confusion matrix");
    std::size_t correct = 0;
    for (std::size_t c = 0; c < cm.n_classes; ++c) correct += cm.at(c, c);
    return static_cast<double>(correct) / static_cast<double>(total);
}

double fscore(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw DimensionError("fscore: empty confusion matrix");
    double sum = 0.0;
    for (std::size_t c = 0; c < cm.n_classes; ++c) {
        std::size_t tp = cm.at(c, c), fp = 0, fn = 0;
        for (std::size_t o = 0; o < cm.n_classes; ++o) {
            if (o == c) continue;
            fp += cm.at(o, c);
            fn += cm.at(c, o);
        }
        const double precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
        const double recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
        if (precision + recall > 0.0) {
            sum += 2.0 * precision * recall / (precision + recall);
        }
    }
    return sum / static_cast<double>(cm.n_classes);
}

FarMdr far_mdr(const ConfusionMatrix& cm, std::size_t normal_class) {
    if (normal_class >= cm.n_classes) {
        throw DimensionError("far_mdr: normal class index out of range");
    }
    // Negative = normal class, positive = every other class.
    std::size_t tn = 0, fp = 0, tp = 0, fn = 0;
    for (std::size_t t = 0; t < cm.n_classes; ++t) {
        for (std::size_t p = 0; p < cm.n_classes; ++p) {
            const std::size_t count = cm.at(t, p);
            if (t == normal_class) {
                (p == normal_class ? tn : fp) += count;
            } else {
                (p == normal_class ? fn : tp) += count;
            }
        }
    }
    if (fp + tn == 0) throw DimensionError("far_mdr: no normal samples, FAR undefined");
    if (fn + tp == 0) throw DimensionError("far_mdr: no attack samples, MDR undefined");
    FarMdr out;
    out.far = static_cast<double>(fp) / static_cast<double>(fp + tn);
    out.mdr = static_cast<double>(fn) / static_cast<double>(fn + tp);
    return out;
}

std::vector<std::vector<double>> class_means(const Matrix& z, const std::vector<int>& y,
                                             std::size_t n_classes) {
    if (z.rows() != y.size()) throw DimensionError("class_means: rows and labels differ");
    std::vector<std::vector<double>> means(n_classes, std::vector<double>(z.cols(), 0.0));
    std::vector<std::size_t> counts(n_classes, 0);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        const int c = y[i];
        if (c < 0 || static_cast<std::size_t>(c) >= n_classes) {
            throw DimensionError("class_means: class index out of range at row " +
                                 std::to_string(i));
        }
        ++counts[static_cast<std::size_t>(c)];
        for (std::size_t k = 0; k < z.cols(); ++k) {
            means[static_cast<std::size_t>(c)][k] += z(i, k);
        }
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
        if (counts[c] == 0) {
            throw DimensionError("class_means: class " + std::to_string(c) + " has no samples");
        }
        for (double& v : means[c]) v /= static_cast<double>(counts[c]);
    }
    return means;
}

QualityReport quality(const Matrix& z, const std::vector<int>& y, std::size_t n_classes) {
    if (n_classes < 2) throw DimensionError("quality: at least two classes required");
    if (z.cols() == 0) throw DimensionError("quality: zero-width representation");

    QualityReport report;
    report.d_z = z.cols();
    report.class_means = class_means(z, y, n_classes);
    report.class_counts.assign(n_classes, 0);
    for (int c : y) ++report.class_counts[static_cast<std::size_t>(c)];

    const double d_z = static_cast<double>(z.cols());
    const std::size_t n = z.rows();

    // Ordered class pairs, self-pairs contributing zero.
    double bet = 0.0;
    for (std::size_t k = 0; k < z.cols(); ++k) {
        for (std::size_t c = 0; c < n_classes; ++c) {
            for (std::size_t c2 = 0; c2 < n_classes; ++c2) {
                const double d = report.class_means[c][k] - report.class_means[c2][k];
                bet += d * d;
            }
        }
    }
    report.d_bet = bet / (d_z * 2.0);

    double wit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(y[i]);
        for (std::size_t k = 0; k < z.cols(); ++k) {
            const double d = z(i, k) - report.class_means[c][k];
            wit += d * d;
        }
    }
    report.d_wit = wit / (d_z * static_cast<double>(n));

    if (report.d_wit > 0.0) report.data_quality = report.d_bet / report.d_wit;
    return report;
}

}  // namespace miae
