#include "miae/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace miae {

namespace {

std::size_t count_classes(const std::vector<int>& y) {
    std::size_t n = 0;
    for (int c : y) {
        if (c < 0) throw DimensionError("negative class index");
        n = std::max(n, static_cast<std::size_t>(c) + 1);
    }
    return n;
}

double gini(const std::vector<std::size_t>& counts, std::size_t total) {
    double sum_sq = 0.0;
    for (std::size_t c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

int majority_class(const std::vector<std::size_t>& counts) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c) {
        if (counts[c] > counts[best]) best = c;  // ties keep the smaller index
    }
    return static_cast<int>(best);
}

struct BestSplit {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double weighted_gini = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const Matrix& x, const std::vector<int>& y, std::size_t n_classes,
                std::size_t max_depth, std::size_t m_try, Rng rng)
        : x_(x), y_(y), n_classes_(n_classes), max_depth_(max_depth), m_try_(m_try),
          rng_(rng) {}

    DecisionTree build(std::vector<std::size_t> indices) {
        DecisionTree tree;
        tree.n_features = x_.cols();
        tree.n_classes = n_classes_;
        nodes_ = &tree.nodes;
        grow(std::move(indices), 0);
        return tree;
    }

private:
    int make_leaf(const std::vector<std::size_t>& counts) {
        TreeNode node;
        node.leaf_class = majority_class(counts);
        nodes_->push_back(node);
        return static_cast<int>(nodes_->size() - 1);
    }

    std::vector<std::size_t> class_counts(const std::vector<std::size_t>& indices) const {
        std::vector<std::size_t> counts(n_classes_, 0);
        for (std::size_t i : indices) ++counts[static_cast<std::size_t>(y_[i])];
        return counts;
    }

    // Candidate features for one split: either all of them or an m_try-sized
    // random subset without replacement, in ascending order for the
    // smaller-feature tie-break.
    std::vector<std::size_t> candidate_features() {
        const std::size_t d = x_.cols();
        if (m_try_ >= d) {
            std::vector<std::size_t> all(d);
            std::iota(all.begin(), all.end(), std::size_t{0});
            return all;
        }
        std::vector<std::size_t> pool(d);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < m_try_; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng_.next_below(d - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(m_try_);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    BestSplit find_split(const std::vector<std::size_t>& indices,
                         const std::vector<std::size_t>& features) {
        BestSplit best;
        const std::size_t n = indices.size();
        std::vector<std::pair<double, int>> column(n);
        std::vector<std::size_t> left_counts(n_classes_);
        for (std::size_t f : features) {
            for (std::size_t i = 0; i < n; ++i) {
                column[i] = {x_(indices[i], f), y_[indices[i]]};
            }
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (column.front().first == column.back().first) continue;  // constant feature

            std::fill(left_counts.begin(), left_counts.end(), 0);
            std::size_t n_left = 0;
            std::vector<std::size_t> right_counts = class_counts(indices);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const auto c = static_cast<std::size_t>(column[i].second);
                ++left_counts[c];
                --right_counts[c];
                ++n_left;
                if (column[i].first == column[i + 1].first) continue;
                const double threshold = column[i].first +
                                         (column[i + 1].first - column[i].first) / 2.0;
                const std::size_t n_right = n - n_left;
                const double weighted =
                    (static_cast<double>(n_left) * gini(left_counts, n_left) +
                     static_cast<double>(n_right) * gini(right_counts, n_right)) /
                    static_cast<double>(n);
                const bool better =
                    !best.found || weighted < best.weighted_gini ||
                    (weighted == best.weighted_gini &&
                     (f < best.feature || (f == best.feature && threshold < best.threshold)));
                if (better) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = threshold;
                    best.weighted_gini = weighted;
                }
            }
        }
        return best;
    }

    int grow(std::vector<std::size_t> indices, std::size_t depth) {
        const std::vector<std::size_t> counts = class_counts(indices);
        const bool pure =
            std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
        if (pure || indices.size() < 2 || (max_depth_ > 0 && depth >= max_depth_)) {
            return make_leaf(counts);
        }
        const BestSplit best = find_split(indices, candidate_features());
        if (!best.found) return make_leaf(counts);

        std::vector<std::size_t> left, right;
        for (std::size_t i : indices) {
            (x_(i, best.feature) <= best.threshold ? left : right).push_back(i);
        }
        indices.clear();
        indices.shrink_to_fit();

        TreeNode node;
        node.feature = static_cast<int>(best.feature);
        node.threshold = best.threshold;
        nodes_->push_back(node);
        const auto self = static_cast<int>(nodes_->size() - 1);
        const int l = grow(std::move(left), depth + 1);
        const int r = grow(std::move(right), depth + 1);
        (*nodes_)[static_cast<std::size_t>(self)].left = l;
        (*nodes_)[static_cast<std::size_t>(self)].right = r;
        return self;
    }

    const Matrix& x_;
    const std::vector<int>& y_;
    std::size_t n_classes_;
    std::size_t max_depth_;
    std::size_t m_try_;
    Rng rng_;
    std::vector<TreeNode>* nodes_ = nullptr;
};

}  // namespace

DecisionTree dt_fit(const Matrix& x, const std::vector<int>& y, std::size_t max_depth,
                    Rng rng) {
    if (x.rows() == 0) throw DimensionError("dt_fit: empty dataset");
    if (x.rows() != y.size()) throw DimensionError("dt_fit: rows and labels differ");
    std::vector<std::size_t> all(x.rows());
    std::iota(all.begin(), all.end(), std::size_t{0});
    TreeBuilder builder(x, y, count_classes(y), max_depth, x.cols(), rng);
    return builder.build(std::move(all));
}

RandomForest rf_fit(const Matrix& x, const std::vector<int>& y, std::size_t n_estimators,
                    std::size_t max_depth, Rng rng) {
    if (x.rows() == 0) throw DimensionError("rf_fit: empty dataset");
    if (x.rows() != y.size()) throw DimensionError("rf_fit: rows and labels differ");
    if (n_estimators == 0) throw ConfigError("rf_fit: n_estimators must be >= 1");

    RandomForest forest;
    forest.n_features = x.cols();
    forest.n_classes = count_classes(y);
    const auto m_try =
        static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(x.cols()))));
    for (std::size_t t = 0; t < n_estimators; ++t) {
        Rng tree_rng = rng.derive(t);
        std::vector<std::size_t> sample(x.rows());
        for (std::size_t& s : sample) {
            s = static_cast<std::size_t>(tree_rng.next_below(x.rows()));
        }
        TreeBuilder builder(x, y, forest.n_classes, max_depth, m_try, tree_rng);
        forest.trees.push_back(builder.build(std::move(sample)));
    }
    return forest;
}

std::vector<int> predict(const DecisionTree& tree, const Matrix& x) {
    if (x.cols() != tree.n_features) {
        throw DimensionError("predict: feature width " + std::to_string(x.cols()) +
                             ", tree trained on " + std::to_string(tree.n_features));
    }
    std::vector<int> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        std::size_t node = 0;
        while (tree.nodes[node].leaf_class < 0) {
            const TreeNode& n = tree.nodes[node];
            node = static_cast<std::size_t>(
                x(i, static_cast<std::size_t>(n.feature)) <= n.threshold ? n.left : n.right);
        }
        out[i] = tree.nodes[node].leaf_class;
    }
    return out;
}

std::vector<int> predict(const RandomForest& forest, const Matrix& x) {
    if (x.cols() != forest.n_features) {
        throw DimensionError("predict: feature width " + std::to_string(x.cols()) +
                             ", forest trained on " + std::to_string(forest.n_features));
    }
    std::vector<std::vector<int>> votes;
    votes.reserve(forest.trees.size());
    for (const DecisionTree& tree : forest.trees) votes.push_back(predict(tree, x));

    std::vector<int> out(x.rows());
    std::vector<std::size_t> counts(forest.n_classes);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto& v : votes) ++counts[static_cast<std::size_t>(v[i])];
        out[i] = majority_class(counts);
    }
    return out;
}

StratifiedSplit stratified_holdout(const std::vector<int>& y, double fraction, Rng& rng) {
    if (!(fraction > 0.0) || fraction >= 1.0) {
        throw ConfigError("stratified_holdout: fraction must be in (0, 1)");
    }
    const std::size_t n_classes = count_classes(y);
    std::vector<std::vector<std::size_t>> by_class(n_classes);
    for (std::size_t i = 0; i < y.size(); ++i) {
        by_class[static_cast<std::size_t>(y[i])].push_back(i);
    }

    StratifiedSplit split;
    for (std::size_t c = 0; c < n_classes; ++c) {
        auto& rows = by_class[c];
        if (rows.empty()) continue;
        const std::vector<std::size_t> perm = shuffle_indices(rows.size(), rng);
        const auto n_val =
            static_cast<std::size_t>(std::floor(fraction * static_cast<double>(rows.size())));
        if (n_val == rows.size()) {
            throw ConfigError("stratified_holdout: class " + std::to_string(c) +
                              " would be absent from the training split");
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            (i < n_val ? split.validation : split.train).push_back(rows[perm[i]]);
        }
    }
    if (split.validation.empty()) {
        throw ConfigError("stratified_holdout: validation split is empty; too little data");
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.validation.begin(), split.validation.end());
    return split;
}

double score_predictions(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                         std::size_t n_classes, SelectionMetric metric) {
    const ConfusionMatrix cm = confusion(y_true, y_pred, n_classes);
    return metric == SelectionMetric::Accuracy ? accuracy(cm) : fscore(cm);
}

}  // namespace miae
