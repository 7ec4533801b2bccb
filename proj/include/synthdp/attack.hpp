#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "synthdp/error.hpp"
#include "synthdp/parallel.hpp"
#include "synthdp/pipeline.hpp"
#include "synthdp/rng.hpp"
#include "synthdp/tabular.hpp"
#include "synthdp/utility.hpp"

namespace synthdp {

enum class FeatureSet { Naive, Histogram, Correlation };
enum class Distinguisher { LogisticRegression, RandomForest };

inline const char* feature_set_name(FeatureSet fs) {
    switch (fs) {
        case FeatureSet::Naive: return "naive";
        case FeatureSet::Histogram: return "histogram";
        case FeatureSet::Correlation: return "correlation";
    }
    return "?";
}

struct AttackConfig {
    int n_shadow_pairs = 50;
    int n_test_pairs = 100;
    std::size_t train_subset_size = 500;
    std::size_t synth_size = 500;
    FeatureSet feature_set = FeatureSet::Naive;
    Distinguisher distinguisher = Distinguisher::LogisticRegression;
    std::uint64_t seed = 0;
};

struct PrivacyGainResult {
    std::size_t target_index = 0;
    std::string generator;
    double advantage = 0.0;     // A(S, x_t) = p_yes_in - p_yes_out
    double privacy_gain = 1.0;  // PG = 1 - advantage
    int n_test_pairs = 0;
    double p_yes_in = 0.0;
    double p_yes_out = 0.0;
    double err_in = 0.0;   // 2 * sqrt(p(1-p)/n) Monte Carlo error bars
    double err_out = 0.0;
};

// ---------------------------------------------------------------------------
// Feature extraction
// ---------------------------------------------------------------------------

/// Summary features of a released table. Histogram bin ranges come from the
/// adversary's reference pool (fixed at construction) so vectors are
/// comparable across game rounds.
class FeatureExtractor {
public:
    static constexpr int kHistogramBins = 10;

    FeatureExtractor(const Table& reference_pool, FeatureSet feature_set)
        : schema_(reference_pool.schema), feature_set_(feature_set) {
        require(reference_pool.n() > 0, ErrorCode::EmptyTable, "empty reference pool");
        for (std::size_t c = 0; c < schema_.columns.size(); ++c) {
            if (schema_.columns[c].kind != ColumnKind::Continuous) continue;
            double lo = reference_pool.rows[0][c], hi = lo;
            for (const auto& row : reference_pool.rows) {
                lo = std::min(lo, row[c]);
                hi = std::max(hi, row[c]);
            }
            ranges_.emplace_back(lo, hi > lo ? hi : lo + 1.0);
        }
    }

    std::vector<double> extract(const Table& table) const {
        require(table.n() > 0, ErrorCode::EmptyTable, "cannot featurize an empty table");
        require(table.schema == schema_, ErrorCode::SchemaMismatch,
                "table schema differs from the reference pool");
        switch (feature_set_) {
            case FeatureSet::Naive: return naive(table);
            case FeatureSet::Histogram: return histogram(table);
            case FeatureSet::Correlation: return correlation(table);
        }
        return {};
    }

private:
    std::vector<double> naive(const Table& table) const {
        std::vector<double> out;
        const double n = static_cast<double>(table.n());
        for (std::size_t c = 0; c < schema_.columns.size(); ++c) {
            const auto& col = schema_.columns[c];
            if (col.kind == ColumnKind::Continuous) {
                std::vector<double> vals;
                vals.reserve(table.n());
                double mean = 0.0;
                for (const auto& row : table.rows) {
                    vals.push_back(row[c]);
                    mean += row[c];
                }
                mean /= n;
                double var = 0.0;
                for (double v : vals) var += (v - mean) * (v - mean);
                var = table.n() > 1 ? var / (n - 1.0) : 0.0;
                std::sort(vals.begin(), vals.end());
                double median = vals.size() % 2 == 1
                                    ? vals[vals.size() / 2]
                                    : (vals[vals.size() / 2 - 1] + vals[vals.size() / 2]) / 2.0;
                out.push_back(mean);
                out.push_back(median);
                out.push_back(var);
            } else {
                std::vector<double> freq(col.categories.size(), 0.0);
                for (const auto& row : table.rows)
                    freq[static_cast<std::size_t>(row[c])] += 1.0;
                for (double f : freq) out.push_back(f / n);
            }
        }
        return out;
    }

    std::vector<double> histogram(const Table& table) const {
        std::vector<double> out;
        const double n = static_cast<double>(table.n());
        std::size_t cont = 0;
        for (std::size_t c = 0; c < schema_.columns.size(); ++c) {
            const auto& col = schema_.columns[c];
            if (col.kind == ColumnKind::Continuous) {
                auto [lo, hi] = ranges_[cont++];
                double width = (hi - lo) / kHistogramBins;
                std::vector<double> bins(kHistogramBins, 0.0);
                for (const auto& row : table.rows) {
                    int b = static_cast<int>((row[c] - lo) / width);
                    bins[static_cast<std::size_t>(std::clamp(b, 0, kHistogramBins - 1))] += 1.0;
                }
                for (double b : bins) out.push_back(b / n);
            } else {
                std::vector<double> freq(col.categories.size(), 0.0);
                for (const auto& row : table.rows)
                    freq[static_cast<std::size_t>(row[c])] += 1.0;
                for (double f : freq) out.push_back(f / n);
            }
        }
        return out;
    }

    std::vector<double> correlation(const Table& table) const {
        Eigen::MatrixXd m = encode_numeric(table);
        Eigen::VectorXd mean = m.colwise().mean();
        Eigen::MatrixXd centered = m.rowwise() - mean.transpose();
        Eigen::MatrixXd cov = centered.transpose() * centered /
                              std::max<double>(1.0, static_cast<double>(m.rows() - 1));
        Eigen::VectorXd sd = cov.diagonal().array().sqrt();
        std::vector<double> out;
        for (Eigen::Index i = 0; i < cov.rows(); ++i)
            for (Eigen::Index j = i + 1; j < cov.cols(); ++j) {
                double denom = sd(i) * sd(j);
                out.push_back(denom > 0.0 ? cov(i, j) / denom : 0.0);
            }
        return out;
    }

    Schema schema_;
    FeatureSet feature_set_;
    std::vector<std::pair<double, double>> ranges_;
};

/// extract_features with the table itself as the histogram reference.
inline std::vector<double> extract_features(const Table& table, FeatureSet feature_set) {
    return FeatureExtractor(table, feature_set).extract(table);
}

// ---------------------------------------------------------------------------
// Distinguishers
// ---------------------------------------------------------------------------

namespace detail {

/// Binary logistic regression on standardized features; plain batch gradient
/// descent with L2 regularization, deterministic from zero-initialized
/// weights.
class LogisticDistinguisher {
public:
    void train(const std::vector<std::vector<double>>& features,
               const std::vector<int>& labels) {
        const std::size_t n = features.size();
        const std::size_t d = features[0].size();
        mean_.assign(d, 0.0);
        sd_.assign(d, 0.0);
        for (const auto& f : features)
            for (std::size_t j = 0; j < d; ++j) mean_[j] += f[j];
        for (auto& m : mean_) m /= static_cast<double>(n);
        for (const auto& f : features)
            for (std::size_t j = 0; j < d; ++j)
                sd_[j] += (f[j] - mean_[j]) * (f[j] - mean_[j]);
        for (auto& s : sd_) {
            s = std::sqrt(s / static_cast<double>(n));
            if (s <= 0.0) s = 1.0;
        }

        weights_.assign(d, 0.0);
        bias_ = 0.0;
        const int iterations = 400;
        const double lr = 1.0;
        const double l2 = 1e-3;
        std::vector<double> z(d);
        for (int it = 0; it < iterations; ++it) {
            std::vector<double> grad(d, 0.0);
            double grad_b = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double margin = bias_;
                for (std::size_t j = 0; j < d; ++j)
                    margin += weights_[j] * (features[i][j] - mean_[j]) / sd_[j];
                double p = 1.0 / (1.0 + std::exp(-margin));
                double delta = p - static_cast<double>(labels[i]);
                grad_b += delta;
                for (std::size_t j = 0; j < d; ++j)
                    grad[j] += delta * (features[i][j] - mean_[j]) / sd_[j];
            }
            for (std::size_t j = 0; j < d; ++j)
                weights_[j] -= lr * (grad[j] / static_cast<double>(n) + l2 * weights_[j]);
            bias_ -= lr * grad_b / static_cast<double>(n);
        }
    }

    int classify(const std::vector<double>& f) const {
        double margin = bias_;
        for (std::size_t j = 0; j < f.size(); ++j)
            margin += weights_[j] * (f[j] - mean_[j]) / sd_[j];
        return margin > 0.0 ? 1 : 0;
    }

private:
    std::vector<double> weights_, mean_, sd_;
    double bias_ = 0.0;
};

/// Wraps the random forest behind the same train/classify surface by turning
/// feature vectors into a continuous table with an in/out label.
class ForestDistinguisher {
public:
    explicit ForestDistinguisher(std::uint64_t seed) : seed_(seed) {}

    void train(const std::vector<std::vector<double>>& features,
               const std::vector<int>& labels) {
        schema_ = Schema{};
        for (std::size_t j = 0; j < features[0].size(); ++j)
            schema_.columns.push_back(
                {"f" + std::to_string(j), ColumnKind::Continuous, {}, {}});
        schema_.columns.push_back({"membership", ColumnKind::Categorical, {"out", "in"}, {}});
        schema_.label_column = "membership";

        Table train_table;
        train_table.schema = schema_;
        for (std::size_t i = 0; i < features.size(); ++i) {
            Record rec = features[i];
            rec.push_back(static_cast<double>(labels[i]));
            train_table.rows.push_back(std::move(rec));
        }
        ForestConfig cfg{.n_trees = 50, .max_depth = 10, .min_leaf = 2,
                         .features_per_split = ForestConfig::FeatureRule::Sqrt,
                         .seed = seed_};
        model_.emplace(train_forest(train_table, cfg));
    }

    int classify(const std::vector<double>& f) const {
        Eigen::RowVectorXd x(static_cast<Eigen::Index>(f.size() + 2));
        for (std::size_t j = 0; j < f.size(); ++j)
            x(static_cast<Eigen::Index>(j)) = f[j];
        x(static_cast<Eigen::Index>(f.size())) = 0.0;      // label one-hot, unused
        x(static_cast<Eigen::Index>(f.size() + 1)) = 0.0;
        return model_->predict(x);
    }

private:
    std::uint64_t seed_;
    Schema schema_;
    std::optional<ForestModel> model_;
};

struct GameRound {
    std::vector<double> features;
    bool target_present = false;  // exact-match check against the release
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Linkage game
// ---------------------------------------------------------------------------

/// Shadow-model membership game for one target record. Each round draws a
/// publisher subset without the target ("out") and with the target spliced
/// over a random row ("in"), releases synthetic data from it, and featurizes
/// the release. Shadow rounds train the distinguisher; fresh test rounds
/// estimate P(yes | in) and P(yes | out).
///
/// When the generator releases raw data, the adversary needs no model: the
/// guess is direct verification that the target row appears in the release,
/// which is the assigned-advantage-one convention for raw publishing.
inline PrivacyGainResult run_linkage_game(const Table& reference_pool,
                                          std::size_t target_index,
                                          const Generator& generator,
                                          const AttackConfig& cfg) {
    require(target_index < reference_pool.n(), ErrorCode::InvalidArgument,
            "target index out of range");
    require(cfg.n_shadow_pairs >= 1 && cfg.n_test_pairs >= 1, ErrorCode::InvalidArgument,
            "round counts must be >= 1");
    require(cfg.train_subset_size >= 2, ErrorCode::InvalidArgument,
            "train_subset_size must be >= 2");
    require(reference_pool.n() > cfg.train_subset_size, ErrorCode::InsufficientPool,
            "reference pool must exceed train_subset_size (excluding the target)");

    const Record& target = reference_pool.rows[target_index];
    FeatureExtractor extractor(reference_pool, cfg.feature_set);
    const bool raw_release = generator.releases_raw();

    // pool without the target, for subset draws
    std::vector<std::size_t> others;
    others.reserve(reference_pool.n() - 1);
    for (std::size_t r = 0; r < reference_pool.n(); ++r)
        if (r != target_index) others.push_back(r);

    auto play_round = [&](std::string_view phase, std::size_t round,
                          bool with_target) -> detail::GameRound {
        Rng rng(derive_seed(cfg.seed, phase, round * 2 + (with_target ? 1 : 0)));
        std::vector<std::size_t> pool = others;
        for (std::size_t i = 0; i < cfg.train_subset_size; ++i) {
            std::size_t j = i + rng.uniform_index(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(cfg.train_subset_size);
        Table subset = take_rows(reference_pool, pool);
        if (with_target)
            subset.rows[rng.uniform_index(subset.n())] = target;

        Table synth;
        try {
            synth = generator.fit_and_sample(subset, cfg.synth_size, rng.next_u64());
        } catch (const Error& e) {
            if (e.code() == ErrorCode::GeneratorFailure) throw;
            raise(ErrorCode::GeneratorFailure, e.what());
        }
        detail::GameRound result;
        if (raw_release) {
            result.target_present =
                std::find(synth.rows.begin(), synth.rows.end(), target) != synth.rows.end();
        } else {
            result.features = extractor.extract(synth);
        }
        return result;
    };

    std::vector<int> test_guess_in(static_cast<std::size_t>(cfg.n_test_pairs));
    std::vector<int> test_guess_out(static_cast<std::size_t>(cfg.n_test_pairs));

    if (raw_release) {
        parallel_for(static_cast<std::size_t>(cfg.n_test_pairs), [&](std::size_t i) {
            test_guess_in[i] = play_round("test", i, true).target_present ? 1 : 0;
            test_guess_out[i] = play_round("test", i, false).target_present ? 1 : 0;
        });
    } else {
        std::vector<std::vector<double>> shadow_features(
            2 * static_cast<std::size_t>(cfg.n_shadow_pairs));
        std::vector<int> shadow_labels(shadow_features.size());
        parallel_for(static_cast<std::size_t>(cfg.n_shadow_pairs), [&](std::size_t i) {
            shadow_features[2 * i] = play_round("shadow", i, false).features;
            shadow_labels[2 * i] = 0;
            shadow_features[2 * i + 1] = play_round("shadow", i, true).features;
            shadow_labels[2 * i + 1] = 1;
        });

        detail::LogisticDistinguisher logistic;
        detail::ForestDistinguisher forest(derive_seed(cfg.seed, "distinguisher"));
        if (cfg.distinguisher == Distinguisher::LogisticRegression)
            logistic.train(shadow_features, shadow_labels);
        else
            forest.train(shadow_features, shadow_labels);
        auto classify = [&](const std::vector<double>& f) {
            return cfg.distinguisher == Distinguisher::LogisticRegression
                       ? logistic.classify(f)
                       : forest.classify(f);
        };

        parallel_for(static_cast<std::size_t>(cfg.n_test_pairs), [&](std::size_t i) {
            test_guess_in[i] = classify(play_round("test", i, true).features);
            test_guess_out[i] = classify(play_round("test", i, false).features);
        });
    }

    PrivacyGainResult result;
    result.target_index = target_index;
    result.generator = generator.name();
    result.n_test_pairs = cfg.n_test_pairs;
    double yes_in = 0.0, yes_out = 0.0;
    for (int g : test_guess_in) yes_in += g;
    for (int g : test_guess_out) yes_out += g;
    result.p_yes_in = yes_in / cfg.n_test_pairs;
    result.p_yes_out = yes_out / cfg.n_test_pairs;
    result.advantage = result.p_yes_in - result.p_yes_out;
    result.privacy_gain = 1.0 - result.advantage;
    auto err = [&](double p) {
        return 2.0 * std::sqrt(p * (1.0 - p) / cfg.n_test_pairs);
    };
    result.err_in = err(result.p_yes_in);
    result.err_out = err(result.p_yes_out);
    return result;
}

/// Cross product of targets x generators, each game on a seed derived from
/// the cell position; results ordered by target then generator.
inline std::vector<PrivacyGainResult> attack_sweep(
    const Table& reference_pool, const std::vector<std::size_t>& targets,
    const std::vector<GeneratorPtr>& generators, const AttackConfig& cfg) {
    require(!targets.empty(), ErrorCode::InvalidArgument, "no targets given");
    std::vector<PrivacyGainResult> results;
    results.reserve(targets.size() * generators.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        for (std::size_t g = 0; g < generators.size(); ++g) {
            AttackConfig cell = cfg;
            cell.seed = derive_seed(cfg.seed, "sweep", t * generators.size() + g);
            results.push_back(
                run_linkage_game(reference_pool, targets[t], *generators[g], cell));
        }
    }
    return results;
}

}  // namespace synthdp
