#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "synthdp/dp.hpp"
#include "synthdp/error.hpp"
#include "synthdp/parallel.hpp"
#include "synthdp/smote.hpp"
#include "synthdp/tabular.hpp"

namespace synthdp {

struct Privacy {
    bool is_private = false;
    double epsilon = 0.0;  // meaningful only when is_private

    static Privacy non_private() { return {false, 0.0}; }
    static Privacy dp(double epsilon) { return {true, epsilon}; }
};

/// Uniform synthesizer contract: fit on a source table, emit n records.
/// Implementations must return a table with the input schema and exactly n
/// rows, deterministically for a given seed.
class Generator {
public:
    virtual ~Generator() = default;
    virtual Table fit_and_sample(const Table& table, std::size_t n,
                                 std::uint64_t seed) const = 0;
    virtual std::string name() const = 0;
    virtual Privacy privacy() const = 0;

    /// True when the "synthetic" output is the raw data itself (the linkage
    /// game then scores the adversary by direct presence verification).
    virtual bool releases_raw() const { return false; }

    GeneratorFn as_fn() const {
        return [this](const Table& t, std::size_t n, std::uint64_t seed) {
            return fit_and_sample(t, n, seed);
        };
    }
};

using GeneratorPtr = std::shared_ptr<const Generator>;

/// Publishes the source rows themselves; when n differs from the source size
/// the rows are resampled uniformly with replacement.
class IdentityGenerator : public Generator {
public:
    Table fit_and_sample(const Table& table, std::size_t n,
                         std::uint64_t seed) const override {
        require(table.n() > 0, ErrorCode::EmptyTable, "identity needs source rows");
        if (n == table.n()) return table;
        Table out;
        out.schema = table.schema;
        out.rows.reserve(n);
        Rng rng(derive_seed(seed, "identity_resample"));
        for (std::size_t i = 0; i < n; ++i)
            out.rows.push_back(table.rows[rng.uniform_index(table.n())]);
        return out;
    }
    std::string name() const override { return "identity"; }
    Privacy privacy() const override { return Privacy::non_private(); }
    bool releases_raw() const override { return true; }
};

class SmoteGenerator : public Generator {
public:
    explicit SmoteGenerator(int k, bool stratify = true) : k_(k), stratify_(stratify) {}

    Table fit_and_sample(const Table& table, std::size_t n,
                         std::uint64_t seed) const override {
        SmoteSampler sampler(table, k_, stratify_, make_distance_metric(table));
        return sampler.sample(n, seed);
    }
    std::string name() const override { return "smote_k" + std::to_string(k_); }
    Privacy privacy() const override { return Privacy::non_private(); }

    int k() const { return k_; }
    bool stratify() const { return stratify_; }

private:
    int k_;
    bool stratify_;
};

/// Laplace mechanism on continuous-only tables. The noise scale is calibrated
/// to the exact leave-one-out sensitivity of the fitted table, so the stage
/// never consults anything but its own input. Row counts other than the input
/// size are produced by resampling the perturbed rows (post-processing).
class LaplaceDpGenerator : public Generator {
public:
    explicit LaplaceDpGenerator(double epsilon) : epsilon_(epsilon) {}

    Table fit_and_sample(const Table& table, std::size_t n,
                         std::uint64_t seed) const override {
        double sens = identity_sensitivity(table);
        require(sens > 0.0, ErrorCode::InvalidSensitivity,
                "degenerate table: zero sensitivity");
        Table noised = laplace_mechanism(table, sens, {epsilon_}, seed);
        if (n == noised.n()) return noised;
        Table out;
        out.schema = noised.schema;
        out.rows.reserve(n);
        Rng rng(derive_seed(seed, "laplace_resample"));
        for (std::size_t i = 0; i < n; ++i)
            out.rows.push_back(noised.rows[rng.uniform_index(noised.n())]);
        return out;
    }
    std::string name() const override { return "dp_laplace"; }
    Privacy privacy() const override { return Privacy::dp(epsilon_); }

private:
    double epsilon_;
};

class DpBayesNetGenerator : public Generator {
public:
    DpBayesNetGenerator(double epsilon, int degree, int bins)
        : epsilon_(epsilon), degree_(degree), bins_(bins) {}

    Table fit_and_sample(const Table& table, std::size_t n,
                         std::uint64_t seed) const override {
        BayesNetModel model =
            fit_dp_bayesnet(table, {epsilon_}, degree_, bins_, derive_seed(seed, "fit"));
        return sample_bayesnet(model, n, derive_seed(seed, "sample"));
    }
    std::string name() const override { return "dp_bayesnet"; }
    Privacy privacy() const override { return Privacy::dp(epsilon_); }

private:
    double epsilon_;
    int degree_;
    int bins_;
};

/// The noise-free greedy Bayesian network baseline.
class BayesNetGenerator : public Generator {
public:
    BayesNetGenerator(int degree, int bins) : degree_(degree), bins_(bins) {}

    Table fit_and_sample(const Table& table, std::size_t n,
                         std::uint64_t seed) const override {
        BayesNetModel model =
            fit_bayesnet(table, degree_, bins_, derive_seed(seed, "fit"));
        return sample_bayesnet(model, n, derive_seed(seed, "sample"));
    }
    std::string name() const override { return "bayesnet"; }
    Privacy privacy() const override { return Privacy::non_private(); }

private:
    int degree_;
    int bins_;
};

/// SMOTE followed by a DP stage; the DP stage is fitted on the SMOTE output
/// only, so the raw table is consulted exactly once.
class SmoteDpGenerator : public Generator {
public:
    SmoteDpGenerator(int k, bool stratify, std::size_t smote_n_out, GeneratorPtr dp_stage)
        : k_(k), stratify_(stratify), smote_n_out_(smote_n_out),
          dp_stage_(std::move(dp_stage)) {
        require(dp_stage_ != nullptr, ErrorCode::InvalidArgument, "missing DP stage");
        require(dp_stage_->privacy().is_private, ErrorCode::InvalidArgument,
                "the second stage of SMOTE-DP must be differentially private");
    }

    Table fit_and_sample(const Table& table, std::size_t n,
                         std::uint64_t seed) const override {
        SmoteSampler sampler(table, k_, stratify_, make_distance_metric(table));
        std::size_t smote_n = smote_n_out_ == 0 ? table.n() : smote_n_out_;
        Table transformed = sampler.sample(smote_n, derive_seed(seed, "smote_stage"));
        return dp_stage_->fit_and_sample(transformed, n, derive_seed(seed, "dp_stage"));
    }
    std::string name() const override { return "smote_" + dp_stage_->name(); }
    Privacy privacy() const override { return dp_stage_->privacy(); }

    int k() const { return k_; }
    bool stratify() const { return stratify_; }

private:
    int k_;
    bool stratify_;
    std::size_t smote_n_out_;
    GeneratorPtr dp_stage_;
};

// ---------------------------------------------------------------------------
// Effective privacy budget
// ---------------------------------------------------------------------------

struct EffectiveBudget {
    double nominal_epsilon = 0.0;
    double alpha = 1.0;
    double effective_epsilon = 0.0;
    bool contraction_warning = false;  // set when delta_f_s exceeded delta_f
};

/// alpha = delta_f_s / delta_f clamped into (0, 1]; ratios above 1 clamp to 1
/// with the warning flag raised instead of failing the run.
inline EffectiveBudget effective_epsilon(const PrivacyBudget& nominal,
                                         const SensitivityEstimate& sens) {
    nominal.validate();
    require(sens.delta_f > 0.0, ErrorCode::ZeroRawSensitivity,
            "raw sensitivity is zero; alpha undefined");
    EffectiveBudget out;
    out.nominal_epsilon = nominal.epsilon;
    double ratio = sens.delta_f_s / sens.delta_f;
    out.contraction_warning = ratio > 1.0;
    out.alpha = std::min(ratio, 1.0);
    out.effective_epsilon = out.alpha * nominal.epsilon;
    return out;
}

struct SmoteDpResult {
    Table released;
    EffectiveBudget budget;
    SensitivityEstimate sensitivity;
};

/// Full SMOTE-DP release: runs the two-stage pipeline and measures the SMOTE
/// stage's sensitivity reduction to report the effective budget alongside the
/// released table.
inline SmoteDpResult smote_dp_generate(const Table& table, const SmoteConfig& smote_cfg,
                                       const GeneratorPtr& dp_generator,
                                       std::size_t n_out, std::uint64_t seed,
                                       int sens_trials = 3,
                                       std::size_t sens_neighbors = 20) {
    require(dp_generator && dp_generator->privacy().is_private, ErrorCode::InvalidArgument,
            "smote_dp_generate needs a DP second stage");
    SmoteDpGenerator pipeline(smote_cfg.k, smote_cfg.stratify_by_label, smote_cfg.n_out,
                              dp_generator);
    SmoteDpResult result;
    result.released = pipeline.fit_and_sample(table, n_out, seed);

    const int k = smote_cfg.k;
    const bool stratify = smote_cfg.stratify_by_label;
    GeneratorFn smote_fn = [k, stratify](const Table& src, std::size_t n,
                                         std::uint64_t s) {
        SmoteSampler sampler(src, k, stratify, make_distance_metric(src));
        return sampler.sample(n, s);
    };
    result.sensitivity =
        estimate_sensitivity(table, smote_fn, sens_trials,
                             std::min(sens_neighbors, table.n()),
                             derive_seed(seed, "sens_stage"));
    result.budget =
        effective_epsilon({dp_generator->privacy().epsilon}, result.sensitivity);
    return result;
}

// ---------------------------------------------------------------------------
// Contraction verification
// ---------------------------------------------------------------------------

struct ContractionReport {
    std::vector<std::pair<double, double>> traces;  // (source, smote) per seed
    double contraction_rate = 0.0;
};

/// Per-seed covariance traces of the one-hot encoding for SMOTE output versus
/// source; the rate counts strict contractions. Neighbor lists are computed
/// once and shared across seeds.
inline ContractionReport contraction_report(const Table& table,
                                            const SmoteConfig& smote_cfg,
                                            std::size_t n_seeds) {
    require(n_seeds >= 1, ErrorCode::InvalidArgument, "n_seeds must be >= 1");
    SmoteSampler sampler(table, smote_cfg.k, smote_cfg.stratify_by_label,
                         make_distance_metric(table));
    const double source_trace = moments(table).trace();
    const std::size_t n_out = smote_cfg.n_out == 0 ? table.n() : smote_cfg.n_out;

    ContractionReport report;
    report.traces.assign(n_seeds, {source_trace, 0.0});
    parallel_for(n_seeds, [&](std::size_t i) {
        Table out = sampler.sample(n_out, derive_seed(smote_cfg.seed, "contraction", i));
        report.traces[i].second = moments(out).trace();
    });
    std::size_t contracted = 0;
    for (const auto& [src, smote] : report.traces) contracted += smote < src;
    report.contraction_rate =
        static_cast<double>(contracted) / static_cast<double>(n_seeds);
    return report;
}

// ---------------------------------------------------------------------------
// Generator factory (shared by CLI and experiments)
// ---------------------------------------------------------------------------

struct GeneratorParams {
    double epsilon = 1.0;
    int k = 5;
    int degree = 1;
    int bins = 10;
    bool stratify = true;
    std::size_t smote_n_out = 0;            // 0: source size
    std::string dp_stage = "dp-bayes";      // second stage of smote-dp
};

inline GeneratorPtr make_generator(const std::string& kind, const GeneratorParams& p) {
    if (kind == "identity") return std::make_shared<IdentityGenerator>();
    if (kind == "smote") return std::make_shared<SmoteGenerator>(p.k, p.stratify);
    if (kind == "dp-laplace") return std::make_shared<LaplaceDpGenerator>(p.epsilon);
    if (kind == "dp-bayes")
        return std::make_shared<DpBayesNetGenerator>(p.epsilon, p.degree, p.bins);
    if (kind == "bayes") return std::make_shared<BayesNetGenerator>(p.degree, p.bins);
    if (kind == "smote-dp") {
        require(p.dp_stage != "smote-dp", ErrorCode::InvalidArgument,
                "smote-dp cannot nest itself");
        GeneratorPtr stage = make_generator(p.dp_stage, p);
        return std::make_shared<SmoteDpGenerator>(p.k, p.stratify, p.smote_n_out, stage);
    }
    raise(ErrorCode::InvalidArgument, "unknown generator '" + kind + "'");
}

inline const std::vector<std::string>& generator_kinds() {
    static const std::vector<std::string> kinds = {
        "identity", "smote", "dp-laplace", "dp-bayes", "bayes", "smote-dp"};
    return kinds;
}

}  // namespace synthdp
