#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "synthdp/error.hpp"
#include "synthdp/rng.hpp"
#include "synthdp/tabular.hpp"

namespace synthdp {

struct SmoteConfig {
    int k = 5;                     // neighbors per base record
    std::size_t n_out = 0;         // 0 means: same size as the source table
    bool stratify_by_label = true;
    std::uint64_t seed = 0;
};

/// The k nearest rows to `query_index` by the SMOTENC distance, excluding the
/// query itself, ties broken by ascending row index. `restrict_to` limits the
/// candidate rows (the query may be listed; it is still excluded).
inline std::vector<std::size_t> knn(const Table& table, std::size_t query_index, int k,
                                    const DistanceMetric& metric,
                                    const std::optional<std::vector<std::size_t>>&
                                        restrict_to = std::nullopt) {
    require(k >= 1, ErrorCode::InvalidArgument, "k must be >= 1");
    std::vector<std::size_t> candidates;
    if (restrict_to) {
        candidates = *restrict_to;
        std::erase(candidates, query_index);
    } else {
        candidates.reserve(table.n() - 1);
        for (std::size_t r = 0; r < table.n(); ++r)
            if (r != query_index) candidates.push_back(r);
    }
    require(candidates.size() >= static_cast<std::size_t>(k),
            ErrorCode::NotEnoughNeighbors,
            "need at least k other rows for neighbor search");

    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(candidates.size());
    const Record& q = table.rows[query_index];
    for (std::size_t r : candidates)
        scored.emplace_back(squared_distance(q, table.rows[r], table.schema, metric), r);
    std::sort(scored.begin(), scored.end());
    std::vector<std::size_t> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = scored[i].second;
    return out;
}

/// SMOTE interpolation z = x0 + w*(x - x0) on continuous cells; categorical
/// cells take the most frequent category among `neighbor_set`, ties broken by
/// lowest category index.
inline Record interpolate(const Record& x0, const Record& x_neighbor, double w,
                          const Schema& schema,
                          const std::vector<const Record*>& neighbor_set) {
    require(!neighbor_set.empty(), ErrorCode::InvalidArgument,
            "neighbor set must be non-empty");
    Record z(schema.columns.size());
    for (std::size_t c = 0; c < schema.columns.size(); ++c) {
        const auto& col = schema.columns[c];
        if (col.kind == ColumnKind::Continuous) {
            z[c] = x0[c] + w * (x_neighbor[c] - x0[c]);
        } else {
            std::vector<int> votes(col.categories.size(), 0);
            for (const Record* rec : neighbor_set)
                ++votes[static_cast<std::size_t>((*rec)[c])];
            std::size_t best = 0;
            for (std::size_t v = 1; v < votes.size(); ++v)
                if (votes[v] > votes[best]) best = v;
            z[c] = static_cast<double>(best);
        }
    }
    return z;
}

/// SMOTE/SMOTENC sampler with neighbor lists computed once per source table,
/// reusable across seeds. When stratified, neighbors are searched within each
/// label class and output class counts follow the source proportions by
/// largest-remainder rounding; otherwise a single global group is used.
class SmoteSampler {
public:
    SmoteSampler(Table table, int k, bool stratify, DistanceMetric metric)
        : table_(std::move(table)), metric_(std::move(metric)), k_(k) {
        require(k_ >= 1, ErrorCode::InvalidArgument, "k must be >= 1");
        require(table_.n() > 0, ErrorCode::EmptyTable, "cannot run SMOTE on an empty table");

        if (stratify && table_.schema.label_index()) {
            groups_ = rows_by_class(table_);
            std::erase_if(groups_, [](const auto& g) { return g.empty(); });
        } else {
            groups_.emplace_back(table_.n());
            std::iota(groups_[0].begin(), groups_[0].end(), std::size_t{0});
        }
        for (const auto& group : groups_)
            require(group.size() >= static_cast<std::size_t>(k_) + 1,
                    ErrorCode::NotEnoughNeighbors,
                    "a class has fewer than k+1 members");

        build_flat();
        neighbors_.resize(table_.n());
        for (const auto& group : groups_)
            for (std::size_t row : group) neighbors_[row] = search(row, group);
    }

    const Table& source() const { return table_; }

    /// Emits n_out synthetic records. Each record uses an independent RNG
    /// substream derived from (seed, record index).
    Table sample(std::size_t n_out, std::uint64_t seed) const {
        require(n_out >= 1, ErrorCode::InvalidArgument, "n_out must be >= 1");
        std::vector<std::size_t> counts = allocate(n_out);

        Table out;
        out.schema = table_.schema;
        out.rows.reserve(n_out);
        std::size_t emitted = 0;
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            const auto& group = groups_[g];
            for (std::size_t i = 0; i < counts[g]; ++i, ++emitted) {
                Rng rng(derive_seed(seed, "smote_record", emitted));
                std::size_t base = group[rng.uniform_index(group.size())];
                const auto& nbrs = neighbors_[base];
                std::size_t pick = nbrs[rng.uniform_index(nbrs.size())];
                double w = rng.uniform();

                std::vector<const Record*> nbr_records;
                nbr_records.reserve(nbrs.size());
                for (std::size_t r : nbrs) nbr_records.push_back(&table_.rows[r]);
                Record z = interpolate(table_.rows[base], table_.rows[pick], w,
                                       table_.schema, nbr_records);
                if (auto label = table_.schema.label_index())
                    z[*label] = table_.rows[base][*label];  // label follows the base row
                out.rows.push_back(std::move(z));
            }
        }
        return out;
    }

private:
    void build_flat() {
        // pre-normalized numeric view for the distance inner loop
        cols_ = table_.schema.columns.size();
        flat_.resize(table_.n() * cols_);
        is_cat_.resize(cols_);
        std::size_t cont = 0;
        std::vector<double> scale(cols_, 1.0);
        for (std::size_t c = 0; c < cols_; ++c) {
            is_cat_[c] = table_.schema.columns[c].kind == ColumnKind::Categorical;
            if (!is_cat_[c]) scale[c] = metric_.continuous_scales[cont++];
        }
        for (std::size_t r = 0; r < table_.n(); ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                flat_[r * cols_ + c] =
                    is_cat_[c] ? table_.rows[r][c] : table_.rows[r][c] / scale[c];
    }

    std::vector<std::size_t> search(std::size_t row, const std::vector<std::size_t>& group) const {
        const double pen2 = metric_.categorical_penalty * metric_.categorical_penalty;
        const double* q = &flat_[row * cols_];
        std::vector<std::pair<double, std::size_t>> scored;
        scored.reserve(group.size() - 1);
        for (std::size_t r : group) {
            if (r == row) continue;
            const double* x = &flat_[r * cols_];
            double d2 = 0.0;
            for (std::size_t c = 0; c < cols_; ++c) {
                if (is_cat_[c]) {
                    if (q[c] != x[c]) d2 += pen2;
                } else {
                    double diff = q[c] - x[c];
                    d2 += diff * diff;
                }
            }
            scored.emplace_back(d2, r);
        }
        auto kth = scored.begin() + k_;
        std::nth_element(scored.begin(), kth - 1, scored.end());
        std::sort(scored.begin(), kth);
        std::vector<std::size_t> out(static_cast<std::size_t>(k_));
        for (int i = 0; i < k_; ++i) out[static_cast<std::size_t>(i)] = scored[i].second;
        return out;
    }

    /// Largest-remainder apportionment of n_out across groups.
    std::vector<std::size_t> allocate(std::size_t n_out) const {
        std::vector<std::size_t> counts(groups_.size(), 0);
        std::vector<std::pair<double, std::size_t>> remainders;
        std::size_t assigned = 0;
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            double quota = static_cast<double>(n_out) *
                           static_cast<double>(groups_[g].size()) /
                           static_cast<double>(table_.n());
            counts[g] = static_cast<std::size_t>(std::floor(quota));
            assigned += counts[g];
            remainders.emplace_back(quota - std::floor(quota), g);
        }
        std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (std::size_t i = 0; assigned < n_out; ++i, ++assigned)
            ++counts[remainders[i % remainders.size()].second];
        return counts;
    }

    Table table_;
    DistanceMetric metric_;
    int k_;
    std::vector<std::vector<std::size_t>> groups_;
    std::vector<std::vector<std::size_t>> neighbors_;
    std::vector<double> flat_;
    std::vector<char> is_cat_;
    std::size_t cols_ = 0;
};

/// One-shot SMOTE generation; see SmoteSampler for the mechanics.
inline Table smote_generate(const Table& table, const SmoteConfig& cfg,
                            const DistanceMetric& metric) {
    SmoteSampler sampler(table, cfg.k, cfg.stratify_by_label, metric);
    return sampler.sample(cfg.n_out == 0 ? table.n() : cfg.n_out, cfg.seed);
}

}  // namespace synthdp
