#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "miae/matrix.hpp"

namespace miae {

// Labeled tabular data. Labels are stored as dense class indices into
// class_names, assigned in first-appearance order.
struct TabularDataset {
    Matrix features;                         // n_samples x d
    std::vector<int> labels;                 // per-row class index
    std::vector<std::string> feature_names;  // d entries
    std::vector<std::string> class_names;    // distinct labels

    std::size_t n_samples() const { return features.rows(); }
    std::size_t n_features() const { return features.cols(); }
    std::size_t n_classes() const { return class_names.size(); }
    int class_index(const std::string& name) const;  // -1 if unknown
};

// Per-feature min/max fitted on training data only.
struct NormalizationStats {
    std::vector<double> min;
    std::vector<double> max;
};

// Ordered assignment of feature columns to branches: contiguous disjoint
// ranges covering all d columns in order.
struct BranchPartition {
    std::vector<std::size_t> widths;  // d^(j) per branch

    std::size_t branch_count() const { return widths.size(); }
    std::size_t total_width() const;
    std::size_t offset(std::size_t branch) const;  // first column of branch
};

// Per-branch column slices of a feature matrix, sharing row order with the
// source; concatenating them column-wise reproduces the source exactly.
struct BranchView {
    std::vector<Matrix> branches;

    std::size_t n_rows() const { return branches.empty() ? 0 : branches.front().rows(); }
    Matrix concat() const { return hconcat(branches); }
    BranchView take_rows(const std::vector<std::size_t>& indices) const;
};

// Loads a CSV with a header row; every column except label_column must be
// numeric. Row order is file order.
TabularDataset load_csv(const std::filesystem::path& path, const std::string& label_column);

// Writes a dataset back to CSV (17 significant digits, exact round-trip).
void save_csv(const TabularDataset& ds, const std::filesystem::path& path,
              const std::string& label_column = "label");

NormalizationStats fit_minmax(const TabularDataset& train);

// Maps each value to (v - min) / (max - min), clamped to [0, 1]; constant
// columns map to 0.
TabularDataset apply_minmax(const TabularDataset& ds, const NormalizationStats& stats);

// Explicit widths, in column order; they must sum to the dataset width.
BranchPartition partition_widths(std::vector<std::size_t> widths, std::size_t total);

// Equal split into n branches; earlier branches take the extra column when
// d is not divisible by n (41 into 7 gives 6,6,6,6,6,6,5).
BranchPartition partition_equal(std::size_t n, std::size_t total);

// Slices the feature matrix according to the partition.
BranchView split_features(const Matrix& features, const BranchPartition& partition);

}  // namespace miae
