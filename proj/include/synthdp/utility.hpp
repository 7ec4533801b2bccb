#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "synthdp/error.hpp"
#include "synthdp/parallel.hpp"
#include "synthdp/rng.hpp"
#include "synthdp/tabular.hpp"

namespace synthdp {

struct ForestConfig {
    int n_trees = 100;
    int max_depth = 12;
    int min_leaf = 2;
    enum class FeatureRule { Sqrt, All } features_per_split = FeatureRule::Sqrt;
    std::uint64_t seed = 0;
};

struct TreeNode {
    bool is_leaf = true;
    int label = 0;             // leaves
    std::size_t feature = 0;   // internal nodes: encoded feature index
    double threshold = 0.0;    // go left when x[feature] <= threshold
    int left = -1;
    int right = -1;
};

/// Bagged CART forest over the one-hot encoding. Continuous features split at
/// midpoints of sorted unique values; one-hot indicator features therefore
/// split at 0.5, which is exactly a one-vs-rest categorical split. Bootstrap
/// draws and feature subsets are keyed to (seed, tree index), and tree
/// construction is depth-first, so training depends on the row order of the
/// table only through those draws.
class ForestModel {
public:
    ForestModel(Schema schema, std::size_t label_col, std::size_t n_labels,
                std::vector<std::vector<TreeNode>> trees)
        : schema_(std::move(schema)), label_col_(label_col), n_labels_(n_labels),
          trees_(std::move(trees)) {}

    const Schema& schema() const { return schema_; }
    const std::vector<std::vector<TreeNode>>& trees() const { return trees_; }

    /// Majority vote across trees; ties resolve to the lowest label index.
    int predict(const Eigen::RowVectorXd& encoded) const {
        std::vector<int> votes(n_labels_, 0);
        for (const auto& tree : trees_) {
            int node = 0;
            while (!tree[static_cast<std::size_t>(node)].is_leaf) {
                const TreeNode& nd = tree[static_cast<std::size_t>(node)];
                node = encoded(static_cast<Eigen::Index>(nd.feature)) <= nd.threshold
                           ? nd.left
                           : nd.right;
            }
            ++votes[static_cast<std::size_t>(tree[static_cast<std::size_t>(node)].label)];
        }
        int best = 0;
        for (std::size_t v = 1; v < votes.size(); ++v)
            if (votes[v] > votes[static_cast<std::size_t>(best)]) best = static_cast<int>(v);
        return best;
    }

    std::size_t label_column() const { return label_col_; }

private:
    Schema schema_;
    std::size_t label_col_;
    std::size_t n_labels_;
    std::vector<std::vector<TreeNode>> trees_;
};

namespace detail {

struct TreeBuilder {
    const Eigen::MatrixXd& features;  // label block zeroed out
    const std::vector<int>& labels;
    std::size_t n_labels;
    const std::vector<std::size_t>& feature_pool;
    const ForestConfig& cfg;
    Rng& rng;
    std::vector<TreeNode> nodes;

    int majority(const std::vector<std::size_t>& rows) const {
        std::vector<int> counts(n_labels, 0);
        for (std::size_t r : rows) ++counts[static_cast<std::size_t>(labels[r])];
        int best = 0;
        for (std::size_t v = 1; v < counts.size(); ++v)
            if (counts[v] > counts[static_cast<std::size_t>(best)])
                best = static_cast<int>(v);
        return best;
    }

    bool pure(const std::vector<std::size_t>& rows) const {
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (labels[rows[i]] != labels[rows[0]]) return false;
        return true;
    }

    static double gini_from_counts(const std::vector<double>& counts, double total) {
        if (total <= 0.0) return 0.0;
        double sum_sq = 0.0;
        for (double c : counts) sum_sq += c * c;
        return 1.0 - sum_sq / (total * total);
    }

    struct Split {
        bool valid = false;
        std::size_t feature = 0;
        double threshold = 0.0;
        double impurity = std::numeric_limits<double>::infinity();
    };

    Split best_split(const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& subset) const {
        Split best;
        const double total = static_cast<double>(rows.size());
        std::vector<std::pair<double, int>> ordered(rows.size());
        for (std::size_t feature : subset) {
            for (std::size_t i = 0; i < rows.size(); ++i)
                ordered[i] = {features(static_cast<Eigen::Index>(rows[i]),
                                       static_cast<Eigen::Index>(feature)),
                              labels[rows[i]]};
            std::sort(ordered.begin(), ordered.end());
            if (ordered.front().first == ordered.back().first) continue;

            std::vector<double> left(n_labels, 0.0), right(n_labels, 0.0);
            for (const auto& [v, lab] : ordered) right[static_cast<std::size_t>(lab)] += 1.0;
            double n_left = 0.0;
            for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
                left[static_cast<std::size_t>(ordered[i].second)] += 1.0;
                right[static_cast<std::size_t>(ordered[i].second)] -= 1.0;
                n_left += 1.0;
                if (ordered[i].first == ordered[i + 1].first) continue;
                double n_right = total - n_left;
                if (n_left < cfg.min_leaf || n_right < cfg.min_leaf) continue;
                double impurity = (n_left * gini_from_counts(left, n_left) +
                                   n_right * gini_from_counts(right, n_right)) /
                                  total;
                if (impurity < best.impurity) {
                    best.valid = true;
                    best.feature = feature;
                    best.threshold = (ordered[i].first + ordered[i + 1].first) / 2.0;
                    best.impurity = impurity;
                }
            }
        }
        return best;
    }

    std::vector<std::size_t> draw_subset() {
        std::size_t m = feature_pool.size();
        if (cfg.features_per_split == ForestConfig::FeatureRule::Sqrt)
            m = std::max<std::size_t>(
                1, static_cast<std::size_t>(
                       std::lround(std::sqrt(static_cast<double>(feature_pool.size())))));
        if (m >= feature_pool.size()) return feature_pool;
        std::vector<std::size_t> pool = feature_pool;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t j = i + rng.uniform_index(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(m);
        return pool;
    }

    int build(const std::vector<std::size_t>& rows, int depth) {
        int index = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes.back().label = majority(rows);
        if (depth >= cfg.max_depth || pure(rows) ||
            rows.size() < 2 * static_cast<std::size_t>(cfg.min_leaf))
            return index;

        Split split = best_split(rows, draw_subset());
        if (!split.valid) return index;

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows) {
            if (features(static_cast<Eigen::Index>(r),
                         static_cast<Eigen::Index>(split.feature)) <= split.threshold)
                left_rows.push_back(r);
            else
                right_rows.push_back(r);
        }
        int left = build(left_rows, depth + 1);
        int right = build(right_rows, depth + 1);
        nodes[static_cast<std::size_t>(index)].is_leaf = false;
        nodes[static_cast<std::size_t>(index)].feature = split.feature;
        nodes[static_cast<std::size_t>(index)].threshold = split.threshold;
        nodes[static_cast<std::size_t>(index)].left = left;
        nodes[static_cast<std::size_t>(index)].right = right;
        return index;
    }
};

}  // namespace detail

inline ForestModel train_forest(const Table& train, const ForestConfig& cfg) {
    require(cfg.n_trees >= 1 && cfg.max_depth >= 1 && cfg.min_leaf >= 1,
            ErrorCode::InvalidArgument, "bad forest configuration");
    auto label_col = train.schema.label_index();
    require(label_col.has_value(), ErrorCode::NoLabelColumn,
            "training table has no label column");
    require(train.n() >= 2, ErrorCode::InsufficientRows, "need at least 2 rows");

    const std::size_t n_labels =
        train.schema.columns[*label_col].categories.size();
    std::vector<int> labels(train.n());
    for (std::size_t r = 0; r < train.n(); ++r)
        labels[r] = train.category_at(r, *label_col);
    std::vector<bool> seen(n_labels, false);
    std::size_t distinct = 0;
    for (int l : labels)
        if (!seen[static_cast<std::size_t>(l)]) {
            seen[static_cast<std::size_t>(l)] = true;
            ++distinct;
        }
    require(distinct >= 2, ErrorCode::SingleClass,
            "training data has fewer than 2 classes");

    // encode once; zero the label's one-hot block so it cannot be used as a
    // split feature
    Eigen::MatrixXd encoded = encode_numeric(train);
    std::size_t label_start = 0;
    for (std::size_t c = 0; c < *label_col; ++c)
        label_start += train.schema.columns[c].kind == ColumnKind::Continuous
                           ? 1
                           : train.schema.columns[c].categories.size();
    std::vector<std::size_t> feature_pool;
    for (std::size_t j = 0; j < train.schema.encoded_dim(); ++j)
        if (j < label_start || j >= label_start + n_labels) feature_pool.push_back(j);
    for (std::size_t r = 0; r < train.n(); ++r)
        for (std::size_t j = label_start; j < label_start + n_labels; ++j)
            encoded(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = 0.0;

    std::vector<std::vector<TreeNode>> trees(static_cast<std::size_t>(cfg.n_trees));
    parallel_for(static_cast<std::size_t>(cfg.n_trees), [&](std::size_t t) {
        Rng rng(derive_seed(cfg.seed, "tree", t));
        std::vector<std::size_t> bag(train.n());
        for (auto& r : bag) r = rng.uniform_index(train.n());
        detail::TreeBuilder builder{encoded, labels, n_labels, feature_pool, cfg, rng, {}};
        builder.build(bag, 0);
        trees[t] = std::move(builder.nodes);
    });
    return ForestModel(train.schema, *label_col, n_labels, std::move(trees));
}

/// Fraction of test rows whose predicted label matches the true label.
inline double evaluate_accuracy(const ForestModel& model, const Table& test) {
    require(test.n() > 0, ErrorCode::EmptyTable, "empty test table");
    require(test.schema == model.schema(), ErrorCode::SchemaMismatch,
            "test schema differs from the training schema");
    Eigen::MatrixXd encoded = encode_numeric(test);
    std::size_t correct = 0;
    for (std::size_t r = 0; r < test.n(); ++r)
        correct += model.predict(encoded.row(static_cast<Eigen::Index>(r))) ==
                   test.category_at(r, model.label_column());
    return static_cast<double>(correct) / static_cast<double>(test.n());
}

struct UtilityReport {
    double mean_fnorm = 0.0;
    double cov_fnorm = 0.0;
    double accuracy_raw = 0.0;
    double accuracy_synth = 0.0;
    double accuracy_drop = 0.0;
};

/// Moment distance between raw and synthetic training data plus the
/// downstream accuracy comparison: two forests with the same config and seed,
/// differing only in their training table, both evaluated on real test rows.
inline UtilityReport utility_report(const Table& raw_train, const Table& synth_train,
                                    const Table& test, const ForestConfig& cfg) {
    require(raw_train.schema == synth_train.schema, ErrorCode::SchemaMismatch,
            "raw and synthetic schemas differ");
    UtilityReport report;
    auto [mean_fnorm, cov_fnorm] = frobenius_diff(moments(raw_train), moments(synth_train));
    report.mean_fnorm = mean_fnorm;
    report.cov_fnorm = cov_fnorm;
    report.accuracy_raw = evaluate_accuracy(train_forest(raw_train, cfg), test);
    report.accuracy_synth = evaluate_accuracy(train_forest(synth_train, cfg), test);
    report.accuracy_drop = report.accuracy_raw - report.accuracy_synth;
    return report;
}

}  // namespace synthdp
