#pragma once

#include <cmath>
#include <cstdint>

#include "synthdp/rng.hpp"
#include "synthdp/tabular.hpp"

namespace synthdp {

/// Two-class 2-D Gaussian benchmark: classes at (0,0) and (3,3) with identity
/// covariance.
inline GaussianMixtureSpec gaussian_benchmark_2d(std::size_t per_class = 2000) {
    GaussianMixtureSpec spec;
    spec.classes.push_back(
        {Eigen::Vector2d(0.0, 0.0), Eigen::Matrix2d::Identity(), per_class});
    spec.classes.push_back(
        {Eigen::Vector2d(3.0, 3.0), Eigen::Matrix2d::Identity(), per_class});
    return spec;
}

/// Two-class 10-D Gaussian benchmark with three informative dimensions.
inline GaussianMixtureSpec gaussian_benchmark_10d(std::size_t per_class = 2000) {
    GaussianMixtureSpec spec;
    Eigen::VectorXd mean_a = Eigen::VectorXd::Zero(10);
    Eigen::VectorXd mean_b = Eigen::VectorXd::Zero(10);
    for (int j = 0; j < 3; ++j) mean_b(j) = 3.0;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(10, 10);
    spec.classes.push_back({mean_a, cov, per_class});
    spec.classes.push_back({mean_b, cov, per_class});
    return spec;
}

inline Schema german_like_schema() {
    Schema s;
    s.columns.push_back(
        {"checking_status", ColumnKind::Categorical, {"none", "low", "mid", "high"}, {}});
    s.columns.push_back({"duration_months", ColumnKind::Continuous, {}, std::pair{6.0, 72.0}});
    s.columns.push_back(
        {"credit_amount", ColumnKind::Continuous, {}, std::pair{250.0, 20000.0}});
    s.columns.push_back({"savings", ColumnKind::Categorical,
                         {"little", "moderate", "rich", "quite_rich", "unknown"}, {}});
    s.columns.push_back({"employment_years", ColumnKind::Categorical,
                         {"unemployed", "lt1", "1to4", "4to7", "ge7"}, {}});
    s.columns.push_back({"age_years", ColumnKind::Continuous, {}, std::pair{19.0, 75.0}});
    s.columns.push_back({"housing", ColumnKind::Categorical, {"own", "rent", "free"}, {}});
    s.columns.push_back({"existing_credits", ColumnKind::Continuous, {}, std::pair{1.0, 4.0}});
    s.columns.push_back({"job", ColumnKind::Categorical,
                         {"unskilled", "skilled", "management", "self_employed"}, {}});
    s.columns.push_back({"class", ColumnKind::Categorical, {"good", "bad"}, {}});
    s.label_column = "class";
    return s;
}

namespace detail {

inline std::size_t bucket(double score, const std::vector<double>& cuts) {
    std::size_t b = 0;
    while (b < cuts.size() && score > cuts[b]) ++b;
    return b;
}

}  // namespace detail

/// Synthetic sample shaped like the German Credit data (same column arity and
/// mix of kinds). A latent risk score drives correlated features and the
/// class label, so downstream classifiers have real signal to find.
inline Table make_german_like(std::size_t n = 1000, std::uint64_t seed = 20240901) {
    Table t;
    t.schema = german_like_schema();
    t.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, "german_like", i));
        double risk = rng.normal();

        double checking = detail::bucket(risk + 0.8 * rng.normal(), {-0.8, 0.2, 1.0});
        double duration =
            std::clamp(24.0 + 10.0 * risk + 8.0 * rng.normal(), 6.0, 72.0);
        double amount = std::clamp(
            3000.0 * std::exp(0.5 * risk + 0.6 * rng.normal()), 250.0, 20000.0);
        double savings = detail::bucket(-risk + rng.normal(), {-1.2, -0.2, 0.6, 1.4});
        double employment = detail::bucket(-0.5 * risk + rng.normal(), {-1.5, -0.5, 0.4, 1.2});
        double age = std::clamp(40.0 - 5.0 * risk + 10.0 * rng.normal(), 19.0, 75.0);
        double housing = detail::bucket(0.3 * risk + rng.normal(), {0.3, 1.2});
        double credits = std::clamp(std::round(1.5 + 0.5 * rng.normal()), 1.0, 4.0);
        double job = detail::bucket(0.2 * risk + rng.normal(), {-0.6, 0.8, 1.5});

        double p_bad = 1.0 / (1.0 + std::exp(-(1.2 * risk - 0.62)));
        double label = rng.uniform() < p_bad ? 1.0 : 0.0;

        t.rows.push_back({checking, duration, amount, savings, employment, age, housing,
                          credits, job, label});
    }
    return t;
}

}  // namespace synthdp
