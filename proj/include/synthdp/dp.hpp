#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "synthdp/error.hpp"
#include "synthdp/rng.hpp"
#include "synthdp/tabular.hpp"

namespace synthdp {

struct PrivacyBudget {
    double epsilon = 1.0;

    void validate() const {
        require(epsilon > 0.0 && std::isfinite(epsilon), ErrorCode::InvalidArgument,
                "epsilon must be positive and finite");
    }
};

/// Laplace(0, scale) draw; see Rng::laplace for the inverse-CDF construction.
inline double laplace_sample(double scale, Rng& rng) { return rng.laplace(scale); }

/// Noise scale of the Laplace mechanism. Kept as a separate function so the
/// budget-proportionality property (doubling epsilon halves the scale) is
/// assertable on the value itself.
inline double laplace_scale(double sensitivity, const PrivacyBudget& budget) {
    budget.validate();
    require(sensitivity > 0.0 && std::isfinite(sensitivity),
            ErrorCode::InvalidSensitivity, "sensitivity must be positive and finite");
    return sensitivity / budget.epsilon;
}

// ---------------------------------------------------------------------------
// Sensitivity of synthetic output
// ---------------------------------------------------------------------------

enum class NeighborMode { RemoveOne, ReplaceOne };

struct SensitivityEstimate {
    double delta_f = 0.0;    // raw-data sensitivity
    double delta_f_s = 0.0;  // sensitivity of the generator's synthetic output
    double alpha = 1.0;      // delta_f_s / delta_f (1 when delta_f is 0)
    int trials = 0;
    NeighborMode neighbor_mode = NeighborMode::RemoveOne;
    bool exhaustive = false;  // every leave-one-out neighbor was enumerated
};

/// Generator contract used by the estimator: (source, n_out, seed) -> table.
using GeneratorFn =
    std::function<Table(const Table&, std::size_t, std::uint64_t)>;

namespace detail {

/// q(X, X') = |mu - mu'| + tr(S) + tr(S') on averaged output moments.
inline double neighbor_query(const Eigen::VectorXd& mean_a, double trace_a,
                             const Eigen::VectorXd& mean_b, double trace_b) {
    return (mean_a - mean_b).norm() + trace_a + trace_b;
}

struct AveragedMoments {
    Eigen::VectorXd mean;
    double trace = 0.0;
};

inline AveragedMoments averaged_output_moments(const Table& source,
                                               const GeneratorFn& generator,
                                               int trials, std::uint64_t seed,
                                               std::string_view role) {
    AveragedMoments acc;
    for (int t = 0; t < trials; ++t) {
        Table out;
        try {
            out = generator(source, source.n(), derive_seed(seed, role, t));
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            raise(ErrorCode::GeneratorFailure, e.what());
        }
        MomentSummary m = moments(out);
        if (t == 0) {
            acc.mean = m.mean;
            acc.trace = m.trace();
        } else {
            acc.mean += m.mean;
            acc.trace += m.trace();
        }
    }
    acc.mean /= static_cast<double>(trials);
    acc.trace /= static_cast<double>(trials);
    return acc;
}

inline Table neighbor_dataset(const Table& table, std::size_t row, NeighborMode mode,
                              Rng& rng) {
    Table out = table;
    if (mode == NeighborMode::RemoveOne) {
        out.rows.erase(out.rows.begin() + static_cast<std::ptrdiff_t>(row));
    } else {
        // replace the row with a duplicate of another, uniformly chosen
        std::size_t other = rng.uniform_index(table.n() - 1);
        if (other >= row) ++other;
        out.rows[row] = table.rows[other];
    }
    return out;
}

}  // namespace detail

/// Estimates Def.-2 style sensitivities by sampling leave-one-out neighbors.
///
/// For the source X and each sampled neighbor X', generator-output moments are
/// averaged over `trials` seeded runs and the query
///   q = |mu_S(X) - mu_S(X')| + tr(Sigma_S(X)) + tr(Sigma_S(X'))
/// is maximized over the sampled neighbors. delta_f uses the identity
/// generator (output = input). When neighbor_samples < n the sampled max is
/// scaled by a 1.1 safety factor; an exhaustive scan (neighbor_samples >= n)
/// reports the enumerated max unscaled.
inline SensitivityEstimate estimate_sensitivity(
    const Table& table, const GeneratorFn& generator, int trials,
    std::size_t neighbor_samples, std::uint64_t seed,
    NeighborMode mode = NeighborMode::RemoveOne) {
    require(table.n() >= 3, ErrorCode::InsufficientRows,
            "sensitivity estimation needs at least 3 rows");
    require(trials >= 1, ErrorCode::InvalidArgument, "trials must be >= 1");
    require(neighbor_samples >= 1, ErrorCode::InvalidArgument,
            "neighbor_samples must be >= 1");

    SensitivityEstimate est;
    est.trials = trials;
    est.neighbor_mode = mode;
    est.exhaustive = neighbor_samples >= table.n();

    std::vector<std::size_t> rows(table.n());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    Rng pick_rng(derive_seed(seed, "sens_neighbors"));
    if (!est.exhaustive) {
        // partial Fisher-Yates: first neighbor_samples entries are the sample
        for (std::size_t i = 0; i < neighbor_samples; ++i) {
            std::size_t j = i + pick_rng.uniform_index(rows.size() - i);
            std::swap(rows[i], rows[j]);
        }
        rows.resize(neighbor_samples);
    }

    MomentSummary base_raw = moments(table);
    detail::AveragedMoments base_syn =
        detail::averaged_output_moments(table, generator, trials, seed, "sens_base");

    double max_raw = 0.0;
    double max_syn = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Rng mode_rng(derive_seed(seed, "sens_mode", i));
        Table neighbor = detail::neighbor_dataset(table, rows[i], mode, mode_rng);
        MomentSummary nbr_raw = moments(neighbor);
        max_raw = std::max(max_raw,
                           detail::neighbor_query(base_raw.mean, base_raw.trace(),
                                                  nbr_raw.mean, nbr_raw.trace()));
        detail::AveragedMoments nbr_syn = detail::averaged_output_moments(
            neighbor, generator, trials, derive_seed(seed, "sens_nbr", i), "sens_trial");
        max_syn = std::max(max_syn,
                           detail::neighbor_query(base_syn.mean, base_syn.trace,
                                                  nbr_syn.mean, nbr_syn.trace));
    }

    const double safety = est.exhaustive ? 1.0 : 1.1;
    est.delta_f = safety * max_raw;
    est.delta_f_s = safety * max_syn;
    est.alpha = est.delta_f > 0.0 ? est.delta_f_s / est.delta_f : 1.0;
    return est;
}

/// The identity generator: the synthetic output is the source itself.
inline GeneratorFn identity_generator_fn() {
    return [](const Table& t, std::size_t, std::uint64_t) { return t; };
}

/// Exact raw-data sensitivity over all RemoveOne neighbors, computed with
/// O(d) mean/scatter downdates per row instead of re-scanning the table.
inline double identity_sensitivity(const Table& table) {
    require(table.n() >= 3, ErrorCode::InsufficientRows,
            "sensitivity needs at least 3 rows");
    Eigen::MatrixXd m = encode_numeric(table);
    const double n = static_cast<double>(m.rows());
    Eigen::VectorXd mean = m.colwise().mean();
    Eigen::MatrixXd centered = m.rowwise() - mean.transpose();
    Eigen::VectorXd row_dev2 = centered.rowwise().squaredNorm();
    double scatter = row_dev2.sum();  // (n-1) * trace of sample covariance
    double trace = scatter / (n - 1.0);

    double best = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        double mean_shift = std::sqrt(row_dev2(r)) / (n - 1.0);
        double scatter_wo = scatter - row_dev2(r) * n / (n - 1.0);
        double trace_wo = scatter_wo / (n - 2.0);
        best = std::max(best, mean_shift + trace + trace_wo);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Laplace mechanism on tables
// ---------------------------------------------------------------------------

/// Perturbs every cell of a continuous-only table with independent
/// Laplace(sensitivity/epsilon) noise, clamping to column bounds when present.
/// The noise stream depends only on the seed, so scaling the sensitivity
/// rescales the same draws.
inline Table laplace_mechanism(const Table& table, double sensitivity,
                               const PrivacyBudget& budget, std::uint64_t seed) {
    for (const auto& col : table.schema.columns)
        require(col.kind == ColumnKind::Continuous, ErrorCode::CategoricalUnsupported,
                "laplace_mechanism requires a continuous-only table; column '" +
                    col.name + "' is categorical");
    const double scale = laplace_scale(sensitivity, budget);

    Table out = table;
    Rng rng(derive_seed(seed, "laplace_mechanism"));
    for (auto& row : out.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            row[c] += rng.laplace(scale);
            if (const auto& bounds = table.schema.columns[c].bounds)
                row[c] = std::clamp(row[c], bounds->first, bounds->second);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Differentially private Bayesian network
// ---------------------------------------------------------------------------

enum class FitPhase { None, StructureSelection, ParameterEstimation };

/// Test hook: invoked on every raw-count scan with the fit phase that spends
/// budget on it.
struct RawAccessProbe {
    std::function<void(FitPhase)> on_access;
};

struct BayesNetModel {
    Schema schema;
    std::vector<std::size_t> attribute_order;          // column indices
    std::vector<std::vector<std::size_t>> parents;     // per column index
    std::vector<std::vector<std::vector<double>>> cpt; // [col][parent_cfg][bin]
    std::vector<std::vector<double>> bin_edges;        // per column; empty for categorical
    std::vector<std::size_t> cardinality;              // bins per column
    int degree = 0;
    double epsilon_structure = 0.0;  // zero for non-private fits
    double epsilon_params = 0.0;
    bool is_private = false;

    void validate() const {
        require(attribute_order.size() == schema.columns.size(),
                ErrorCode::InvalidArgument, "attribute order size mismatch");
        std::vector<std::size_t> position(schema.columns.size());
        for (std::size_t i = 0; i < attribute_order.size(); ++i)
            position[attribute_order[i]] = i;
        for (std::size_t col = 0; col < parents.size(); ++col)
            for (std::size_t p : parents[col])
                require(position[p] < position[col], ErrorCode::InvalidArgument,
                        "parent set breaks the topological order");
        for (const auto& table : cpt) {
            for (const auto& row : table) {
                double sum = 0.0;
                for (double v : row) {
                    require(v >= 0.0, ErrorCode::InvalidArgument, "negative CPT entry");
                    sum += v;
                }
                require(std::abs(sum - 1.0) <= 1e-9, ErrorCode::InvalidArgument,
                        "CPT row does not sum to 1");
            }
        }
    }
};

namespace detail {

struct Discretized {
    std::vector<std::vector<int>> bins;  // [row][col]
    std::vector<std::size_t> cardinality;
    std::vector<std::vector<double>> edges;  // per column; empty for categorical
};

inline Discretized discretize(const Table& table, int n_bins) {
    Discretized d;
    const std::size_t cols = table.schema.columns.size();
    d.cardinality.resize(cols);
    d.edges.resize(cols);
    d.bins.assign(table.n(), std::vector<int>(cols, 0));
    for (std::size_t c = 0; c < cols; ++c) {
        const auto& col = table.schema.columns[c];
        if (col.kind == ColumnKind::Categorical) {
            d.cardinality[c] = col.categories.size();
            for (std::size_t r = 0; r < table.n(); ++r)
                d.bins[r][c] = static_cast<int>(table.rows[r][c]);
        } else {
            double lo = table.rows[0][c], hi = table.rows[0][c];
            for (const auto& row : table.rows) {
                lo = std::min(lo, row[c]);
                hi = std::max(hi, row[c]);
            }
            double width = hi > lo ? (hi - lo) / n_bins : 1.0;
            d.cardinality[c] = static_cast<std::size_t>(n_bins);
            auto& edges = d.edges[c];
            edges.resize(static_cast<std::size_t>(n_bins) + 1);
            for (int b = 0; b <= n_bins; ++b) edges[static_cast<std::size_t>(b)] = lo + width * b;
            for (std::size_t r = 0; r < table.n(); ++r) {
                int b = static_cast<int>((table.rows[r][c] - lo) / width);
                d.bins[r][c] = std::clamp(b, 0, n_bins - 1);
            }
        }
    }
    return d;
}

inline std::size_t config_count(const Discretized& d, const std::vector<std::size_t>& attrs) {
    std::size_t n = 1;
    for (std::size_t a : attrs) n *= d.cardinality[a];
    return n;
}

inline std::size_t config_index(const Discretized& d, const std::vector<std::size_t>& attrs,
                                const std::vector<int>& row) {
    std::size_t idx = 0;
    for (std::size_t a : attrs) idx = idx * d.cardinality[a] + static_cast<std::size_t>(row[a]);
    return idx;
}

/// Joint counts of (parent configuration, attribute bin); the single place
/// raw data is scanned.
inline std::vector<std::vector<double>> joint_counts(
    const Discretized& d, std::size_t attr, const std::vector<std::size_t>& parents,
    FitPhase phase, const RawAccessProbe* probe) {
    if (probe && probe->on_access) probe->on_access(phase);
    std::vector<std::vector<double>> counts(
        config_count(d, parents), std::vector<double>(d.cardinality[attr], 0.0));
    for (const auto& row : d.bins)
        counts[config_index(d, parents, row)][static_cast<std::size_t>(row[attr])] += 1.0;
    return counts;
}

inline double mutual_information(const std::vector<std::vector<double>>& counts) {
    double n = 0.0;
    std::vector<double> row_sum(counts.size(), 0.0);
    std::vector<double> col_sum(counts.empty() ? 0 : counts[0].size(), 0.0);
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = 0; j < counts[i].size(); ++j) {
            row_sum[i] += counts[i][j];
            col_sum[j] += counts[i][j];
            n += counts[i][j];
        }
    if (n <= 0.0) return 0.0;
    double mi = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = 0; j < counts[i].size(); ++j) {
            double c = counts[i][j];
            if (c <= 0.0) continue;
            mi += (c / n) * std::log(c * n / (row_sum[i] * col_sum[j]));
        }
    return std::max(mi, 0.0);
}

/// Sensitivity bound (nats) for mutual information of discrete variables on
/// n records under a one-record change.
inline double mi_sensitivity(std::size_t n_rows) {
    double n = static_cast<double>(n_rows);
    return (2.0 / n) * std::log((n + 1.0) / 2.0) +
           ((n - 1.0) / n) * std::log((n + 1.0) / (n - 1.0));
}

/// Parent-set candidates: subsets of `pool` with size <= degree, enumerated
/// by size then lexicographically, the empty set first.
inline std::vector<std::vector<std::size_t>> parent_candidates(
    const std::vector<std::size_t>& pool, int degree) {
    std::vector<std::vector<std::size_t>> out = {{}};
    for (int size = 1; size <= degree; ++size) {
        std::vector<std::size_t> stack;
        auto emit = [&](auto&& self, std::size_t start, int left) -> void {
            if (left == 0) {
                out.push_back(stack);
                return;
            }
            for (std::size_t i = start; i + static_cast<std::size_t>(left) <= pool.size(); ++i) {
                stack.push_back(pool[i]);
                self(self, i + 1, left - 1);
                stack.pop_back();
            }
        };
        emit(emit, 0, size);
    }
    return out;
}

inline BayesNetModel fit_bayesnet_impl(const Table& table, double epsilon, int degree,
                                       int n_bins, std::uint64_t seed, bool noisy,
                                       const RawAccessProbe* probe) {
    require(table.n() > 0, ErrorCode::EmptyTable, "cannot fit on an empty table");
    require(degree >= 0, ErrorCode::InvalidDegree, "degree must be >= 0");
    require(n_bins >= 2, ErrorCode::InvalidArgument, "n_bins must be >= 2");

    const std::size_t cols = table.schema.columns.size();
    Discretized disc = discretize(table, n_bins);

    BayesNetModel model;
    model.schema = table.schema;
    model.degree = degree;
    model.bin_edges = disc.edges;
    model.cardinality = disc.cardinality;
    model.parents.resize(cols);
    model.cpt.resize(cols);
    model.is_private = noisy;
    model.epsilon_structure = noisy ? epsilon / 2.0 : 0.0;
    model.epsilon_params = noisy ? epsilon / 2.0 : 0.0;

    Rng rng(derive_seed(seed, "bayesnet_fit"));

    // Structure: greedy order, each new attribute picked together with its
    // parent set by maximum (optionally Laplace-noised) mutual information.
    // The structure half of the budget is split evenly across the selection
    // steps, one noisy-max query per step.
    std::vector<std::size_t> remaining(cols);
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    const double mi_noise_scale =
        noisy ? mi_sensitivity(table.n()) /
                    (model.epsilon_structure / static_cast<double>(cols))
              : 0.0;

    std::size_t first = remaining[rng.uniform_index(remaining.size())];
    model.attribute_order.push_back(first);
    std::erase(remaining, first);

    while (!remaining.empty()) {
        double best_score = -std::numeric_limits<double>::infinity();
        std::size_t best_attr = remaining.front();
        std::vector<std::size_t> best_parents;
        for (std::size_t attr : remaining) {
            for (const auto& cand : parent_candidates(model.attribute_order, degree)) {
                auto counts = joint_counts(disc, attr, cand,
                                           FitPhase::StructureSelection, probe);
                double score = mutual_information(counts);
                if (noisy) score += rng.laplace(mi_noise_scale);
                if (score > best_score) {
                    best_score = score;
                    best_attr = attr;
                    best_parents = cand;
                }
            }
        }
        model.attribute_order.push_back(best_attr);
        model.parents[best_attr] = best_parents;
        std::erase(remaining, best_attr);
    }

    // Parameters: per-attribute contingency counts, Laplace-noised at scale
    // 2d/eps (parameter budget eps/2 split over the d tables, count
    // sensitivity 1), clamped at zero and renormalized per parent row.
    const double count_noise_scale =
        noisy ? static_cast<double>(cols) / model.epsilon_params : 0.0;
    for (std::size_t attr = 0; attr < cols; ++attr) {
        auto counts = joint_counts(disc, attr, model.parents[attr],
                                   FitPhase::ParameterEstimation, probe);
        for (auto& row : counts) {
            double sum = 0.0;
            for (double& c : row) {
                if (noisy) c += rng.laplace(count_noise_scale);
                c = std::max(c, 0.0);
                sum += c;
            }
            if (sum <= 0.0) {
                std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(row.size()));
            } else {
                for (double& c : row) c /= sum;
            }
        }
        model.cpt[attr] = std::move(counts);
    }
    model.validate();
    return model;
}

}  // namespace detail

/// PrivBayes-style fit: equal-width discretization, greedy noisy-MI structure
/// search (budget epsilon/2) and Laplace-noised CPTs (budget epsilon/2).
inline BayesNetModel fit_dp_bayesnet(const Table& table, const PrivacyBudget& budget,
                                     int degree, int n_bins, std::uint64_t seed,
                                     const RawAccessProbe* probe = nullptr) {
    budget.validate();
    return detail::fit_bayesnet_impl(table, budget.epsilon, degree, n_bins, seed,
                                     /*noisy=*/true, probe);
}

/// Non-private fit: exact mutual information and exact conditionals (the
/// noiseless baseline generator). Budget fields are zero.
inline BayesNetModel fit_bayesnet(const Table& table, int degree, int n_bins,
                                  std::uint64_t seed,
                                  const RawAccessProbe* probe = nullptr) {
    return detail::fit_bayesnet_impl(table, 0.0, degree, n_bins, seed,
                                     /*noisy=*/false, probe);
}

/// Ancestral sampling in attribute order; continuous bins decode to a uniform
/// draw within the bin's edges. Each record uses an independent substream of
/// the seed.
inline Table sample_bayesnet(const BayesNetModel& model, std::size_t n,
                             std::uint64_t seed) {
    require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
    Table out;
    out.schema = model.schema;
    out.rows.reserve(n);
    const std::size_t cols = model.schema.columns.size();
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, "bayesnet_record", i));
        std::vector<int> bins(cols, 0);
        Record rec(cols, 0.0);
        for (std::size_t attr : model.attribute_order) {
            std::size_t cfg = 0;
            for (std::size_t p : model.parents[attr])
                cfg = cfg * model.cardinality[p] + static_cast<std::size_t>(bins[p]);
            const auto& probs = model.cpt[attr][cfg];
            double u = rng.uniform();
            std::size_t b = 0;
            double acc = 0.0;
            for (; b + 1 < probs.size(); ++b) {
                acc += probs[b];
                if (u < acc) break;
            }
            bins[attr] = static_cast<int>(b);
            if (model.schema.columns[attr].kind == ColumnKind::Categorical) {
                rec[attr] = static_cast<double>(b);
            } else {
                const auto& edges = model.bin_edges[attr];
                rec[attr] = rng.uniform(edges[b], edges[b + 1]);
            }
        }
        out.rows.push_back(std::move(rec));
    }
    return out;
}

// ---------------------------------------------------------------------------
// BayesNet model serialization (JSON)
// ---------------------------------------------------------------------------

inline nlohmann::json bayesnet_to_json(const BayesNetModel& model) {
    nlohmann::json j;
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& col : model.schema.columns) {
        nlohmann::json c;
        c["name"] = col.name;
        c["kind"] = col.kind == ColumnKind::Continuous ? "continuous" : "categorical";
        if (col.kind == ColumnKind::Categorical) c["categories"] = col.categories;
        if (col.bounds) c["bounds"] = {col.bounds->first, col.bounds->second};
        cols.push_back(c);
    }
    j["columns"] = cols;
    if (model.schema.label_column) j["label_column"] = *model.schema.label_column;
    j["attribute_order"] = model.attribute_order;
    j["parents"] = model.parents;
    j["cpt"] = model.cpt;
    j["bin_edges"] = model.bin_edges;
    j["cardinality"] = model.cardinality;
    j["degree"] = model.degree;
    j["epsilon_structure"] = model.epsilon_structure;
    j["epsilon_params"] = model.epsilon_params;
    j["is_private"] = model.is_private;
    return j;
}

inline BayesNetModel bayesnet_from_json(const nlohmann::json& j) {
    BayesNetModel model;
    for (const auto& c : j.at("columns")) {
        ColumnSpec col;
        col.name = c.at("name").get<std::string>();
        col.kind = c.at("kind").get<std::string>() == "continuous"
                       ? ColumnKind::Continuous
                       : ColumnKind::Categorical;
        if (c.contains("categories"))
            col.categories = c.at("categories").get<std::vector<std::string>>();
        if (c.contains("bounds"))
            col.bounds = {c.at("bounds")[0].get<double>(), c.at("bounds")[1].get<double>()};
        model.schema.columns.push_back(std::move(col));
    }
    if (j.contains("label_column"))
        model.schema.label_column = j.at("label_column").get<std::string>();
    model.attribute_order = j.at("attribute_order").get<std::vector<std::size_t>>();
    model.parents = j.at("parents").get<std::vector<std::vector<std::size_t>>>();
    model.cpt = j.at("cpt").get<std::vector<std::vector<std::vector<double>>>>();
    model.bin_edges = j.at("bin_edges").get<std::vector<std::vector<double>>>();
    model.cardinality = j.at("cardinality").get<std::vector<std::size_t>>();
    model.degree = j.at("degree").get<int>();
    model.epsilon_structure = j.at("epsilon_structure").get<double>();
    model.epsilon_params = j.at("epsilon_params").get<double>();
    model.is_private = j.at("is_private").get<bool>();
    model.schema.validate();
    model.validate();
    return model;
}

inline void save_bayesnet(const BayesNetModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << bayesnet_to_json(model).dump(2) << '\n';
}

inline BayesNetModel load_bayesnet(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::IoError, "cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return bayesnet_from_json(j);
}

}  // namespace synthdp
