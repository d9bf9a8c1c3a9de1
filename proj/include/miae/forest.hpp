#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "miae/error.hpp"
#include "miae/matrix.hpp"
#include "miae/metrics.hpp"
#include "miae/rng.hpp"

namespace miae {

struct TreeNode {
    int feature = -1;        // split feature, -1 for leaves
    double threshold = 0.0;  // go left when x[feature] <= threshold
    int left = -1;
    int right = -1;
    int leaf_class = -1;
};

// CART classification tree with Gini splits at midpoints between sorted
// distinct feature values.
struct DecisionTree {
    std::vector<TreeNode> nodes;
    std::size_t n_features = 0;
    std::size_t n_classes = 0;
};

struct RandomForest {
    std::vector<DecisionTree> trees;
    std::size_t n_features = 0;
    std::size_t n_classes = 0;
};

// Greedy Gini tree; stops at max_depth (0 = unlimited), pure nodes, fewer
// than 2 samples, or when no feature admits a split. Tie-breaks are total:
// best split by (gain, smaller feature, smaller threshold), leaf majority to
// the smaller class index.
DecisionTree dt_fit(const Matrix& x, const std::vector<int>& y, std::size_t max_depth,
                    Rng rng);

// Each tree trains on a size-n bootstrap sample with ceil(sqrt(d)) feature
// candidates per split; per-tree streams derive from (rng, tree index).
RandomForest rf_fit(const Matrix& x, const std::vector<int>& y, std::size_t n_estimators,
                    std::size_t max_depth, Rng rng);

std::vector<int> predict(const DecisionTree& tree, const Matrix& x);
// Majority vote across trees, ties to the smaller class index.
std::vector<int> predict(const RandomForest& forest, const Matrix& x);

enum class SelectionMetric { Accuracy, MacroF1 };

struct GridSearchSpec {
    SelectionMetric metric = SelectionMetric::Accuracy;
    double validation_fraction = 0.2;
    std::uint64_t seed = 0;
};

template <typename Model>
struct GridOutcome {
    Model model;
    std::size_t best_index = 0;
    double validation_score = std::numeric_limits<double>::quiet_NaN();
};

// Seed-deterministic stratified holdout; indices come back sorted.
struct StratifiedSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
};
StratifiedSplit stratified_holdout(const std::vector<int>& y, double fraction, Rng& rng);

double score_predictions(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                         std::size_t n_classes, SelectionMetric metric);

// Picks the candidate maximizing the selection metric on a stratified
// holdout (ties to the first candidate in list order), then refits it on the
// full training data. fit is called as fit(x, y, candidate_index, rng).
template <typename FitFn>
auto grid_search(std::size_t n_candidates, FitFn&& fit, const Matrix& x,
                 const std::vector<int>& y, const GridSearchSpec& spec) {
    using Model = decltype(fit(x, y, std::size_t{0}, Rng{}));
    if (n_candidates == 0) throw ConfigError("grid_search: no candidates");
    Rng base(spec.seed);

    GridOutcome<Model> outcome;
    if (n_candidates > 1) {
        Rng split_rng = base.derive(0);
        const StratifiedSplit split = stratified_holdout(y, spec.validation_fraction, split_rng);
        const Matrix x_train = x.gather_rows(split.train);
        const Matrix x_val = x.gather_rows(split.validation);
        std::vector<int> y_train, y_val;
        for (std::size_t i : split.train) y_train.push_back(y[i]);
        for (std::size_t i : split.validation) y_val.push_back(y[i]);

        std::size_t n_classes = 0;
        for (int c : y) n_classes = std::max<std::size_t>(n_classes, static_cast<std::size_t>(c) + 1);

        double best = -1.0;
        for (std::size_t i = 0; i < n_candidates; ++i) {
            Model model = fit(x_train, y_train, i, base.derive(2 + i));
            const double score =
                score_predictions(y_val, predict(model, x_val), n_classes, spec.metric);
            if (score > best) {
                best = score;
                outcome.best_index = i;
            }
        }
        outcome.validation_score = best;
    }
    outcome.model = fit(x, y, outcome.best_index, base.derive(1));
    return outcome;
}

}  // namespace miae
