#include "synthdp/pipeline.hpp"
#include "test_helpers.hpp"

using namespace synthdp;
using testutil::gaussian_table;
using testutil::make_continuous;
using testutil::random_mixed;

namespace {

/// Identity transform carrying a DP flag: wiring probe for the pipeline.
class IdentityDpStage : public Generator {
public:
    explicit IdentityDpStage(double epsilon) : epsilon_(epsilon) {}
    Table fit_and_sample(const Table& table, std::size_t n,
                         std::uint64_t seed) const override {
        return IdentityGenerator().fit_and_sample(table, n, seed);
    }
    std::string name() const override { return "identity_dp"; }
    Privacy privacy() const override { return Privacy::dp(epsilon_); }

private:
    double epsilon_;
};

/// Records every table it is fitted on.
class RecordingDpStage : public Generator {
public:
    explicit RecordingDpStage(std::vector<Table>* log) : log_(log) {}
    Table fit_and_sample(const Table& table, std::size_t n,
                         std::uint64_t seed) const override {
        log_->push_back(table);
        return IdentityGenerator().fit_and_sample(table, n, seed);
    }
    std::string name() const override { return "recording_dp"; }
    Privacy privacy() const override { return Privacy::dp(1.0); }

private:
    std::vector<Table>* log_;
};

SensitivityEstimate fake_sens(double delta_f, double delta_f_s) {
    SensitivityEstimate s;
    s.delta_f = delta_f;
    s.delta_f_s = delta_f_s;
    s.alpha = delta_f > 0 ? delta_f_s / delta_f : 1.0;
    s.trials = 1;
    return s;
}

}  // namespace

TEST_CASE("effective_epsilon arithmetic and clamping", "[pipeline]") {
    EffectiveBudget b = effective_epsilon({50.0}, fake_sens(10.0, 5.0));
    REQUIRE(b.alpha == Catch::Approx(0.5));
    REQUIRE(b.effective_epsilon == Catch::Approx(25.0));
    REQUIRE(!b.contraction_warning);

    EffectiveBudget c = effective_epsilon({50.0}, fake_sens(10.0, 4.0));
    REQUIRE(c.effective_epsilon == Catch::Approx(20.0));

    EffectiveBudget same = effective_epsilon({7.0}, fake_sens(3.0, 3.0));
    REQUIRE(same.alpha == 1.0);
    REQUIRE(same.effective_epsilon == Catch::Approx(7.0));

    EffectiveBudget clamped = effective_epsilon({7.0}, fake_sens(3.0, 4.5));
    REQUIRE(clamped.alpha == 1.0);
    REQUIRE(clamped.contraction_warning);

    REQUIRE_ERROR(effective_epsilon({1.0}, fake_sens(0.0, 1.0)),
                  ErrorCode::ZeroRawSensitivity);
}

TEST_CASE("effective_epsilon is monotone in delta_f_s", "[pipeline]") {
    double last = 0.0;
    for (double dfs : {0.5, 1.0, 2.0, 5.0, 9.0, 12.0}) {
        EffectiveBudget b = effective_epsilon({10.0}, fake_sens(9.0, dfs));
        REQUIRE(b.effective_epsilon >= last);
        last = b.effective_epsilon;
    }
}

TEST_CASE("smote-dp with an identity DP stage reduces to SMOTE", "[pipeline]") {
    Table t = random_mixed(80, 2, {3}, 7, /*label=*/true);
    auto stage = std::make_shared<IdentityDpStage>(50.0);
    SmoteDpGenerator pipeline(3, true, 0, stage);
    Table released = pipeline.fit_and_sample(t, t.n(), 42);

    SmoteSampler sampler(t, 3, true, make_distance_metric(t));
    Table expected = sampler.sample(t.n(), derive_seed(42, "smote_stage"));
    REQUIRE(released == expected);
}

TEST_CASE("the DP stage never sees the raw table", "[pipeline]") {
    Table t = random_mixed(60, 2, {2}, 13, /*label=*/true);
    std::vector<Table> fitted;
    auto stage = std::make_shared<RecordingDpStage>(&fitted);
    SmoteDpGenerator pipeline(3, true, 0, stage);
    pipeline.fit_and_sample(t, 30, 5);

    REQUIRE(fitted.size() == 1);  // raw data consulted exactly once, by SMOTE
    REQUIRE(fitted[0].schema == t.schema);
    REQUIRE(fitted[0].rows != t.rows);
}

TEST_CASE("smote_dp_generate reports a contracting budget", "[pipeline]") {
    GaussianMixtureSpec spec;
    spec.classes.push_back({Eigen::VectorXd::Zero(4),
                            Eigen::MatrixXd::Identity(4, 4), 300});
    Table t = sample_gaussian_mixture(spec, 3);

    auto stage = std::make_shared<DpBayesNetGenerator>(50.0, 1, 8);
    SmoteConfig cfg{.k = 5, .n_out = 0, .stratify_by_label = true, .seed = 0};
    SmoteDpResult res = smote_dp_generate(t, cfg, stage, 200, 11);

    REQUIRE(res.released.n() == 200);
    REQUIRE(res.released.schema == t.schema);
    REQUIRE(res.budget.nominal_epsilon == 50.0);
    REQUIRE(res.budget.alpha < 1.0);
    REQUIRE(res.budget.effective_epsilon ==
            Catch::Approx(res.budget.alpha * 50.0));
    REQUIRE(res.sensitivity.delta_f > 0.0);

    SECTION("non-private stage is rejected") {
        auto nonprivate = std::make_shared<SmoteGenerator>(3);
        REQUIRE_ERROR(smote_dp_generate(t, cfg, nonprivate, 100, 1),
                      ErrorCode::InvalidArgument);
    }
}

TEST_CASE("contraction_report on Gaussian data", "[pipeline]") {
    Table t = gaussian_table(2000, 2, 99);
    // large n_out keeps the output-trace estimator noise well below the
    // contraction being measured
    SmoteConfig cfg{.k = 5, .n_out = 60000, .stratify_by_label = false, .seed = 1};
    ContractionReport report = contraction_report(t, cfg, 40);
    REQUIRE(report.traces.size() == 40);
    REQUIRE(report.contraction_rate >= 0.95);
    for (const auto& [src, smote] : report.traces) REQUIRE(src > 0.0);
}

TEST_CASE("contraction_report degenerate table", "[pipeline]") {
    Table flat = make_continuous(std::vector<Record>(20, {1.0, 2.0}), 2);
    SmoteConfig cfg{.k = 3, .n_out = 0, .stratify_by_label = false, .seed = 5};
    ContractionReport report = contraction_report(flat, cfg, 10);
    REQUIRE(report.contraction_rate == 0.0);
    for (const auto& [src, smote] : report.traces) {
        REQUIRE(src == 0.0);
        REQUIRE(smote == 0.0);
    }
}

TEST_CASE("every registered generator honors the contract", "[pipeline]") {
    Table mixed = random_mixed(120, 2, {3, 2}, 17, /*label=*/true);
    Table continuous = gaussian_table(120, 3, 18);

    for (const auto& kind : generator_kinds()) {
        GeneratorParams params;
        params.epsilon = 10.0;
        params.k = 3;
        params.degree = 1;
        params.bins = 6;
        GeneratorPtr gen = make_generator(kind, params);
        const Table& input = kind == "dp-laplace" ? continuous : mixed;
        for (std::size_t n : {40UL, 120UL, 260UL}) {
            Table out = gen->fit_and_sample(input, n, 23);
            INFO("generator " << kind << " n " << n);
            REQUIRE(out.schema == input.schema);
            REQUIRE(out.n() == n);
            out.validate();
            // determinism
            REQUIRE(gen->fit_and_sample(input, n, 23) == out);
        }
    }

    REQUIRE_ERROR(make_generator("nope", {}), ErrorCode::InvalidArgument);
}

TEST_CASE("smote-dp pipeline determinism end to end", "[pipeline]") {
    Table t = random_mixed(150, 2, {3}, 29, /*label=*/true);
    GeneratorParams params;
    params.epsilon = 5.0;
    params.k = 3;
    params.dp_stage = "dp-bayes";
    GeneratorPtr gen = make_generator("smote-dp", params);
    Table a = gen->fit_and_sample(t, 150, 77);
    Table b = gen->fit_and_sample(t, 150, 77);
    Table c = gen->fit_and_sample(t, 150, 78);
    REQUIRE(a == b);
    REQUIRE(a != c);
}
