#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "synthdp/attack.hpp"
#include "synthdp/datasets.hpp"
#include "synthdp/dp.hpp"
#include "synthdp/pipeline.hpp"
#include "synthdp/smote.hpp"
#include "synthdp/tabular.hpp"
#include "synthdp/utility.hpp"

namespace synthdp {

namespace detail {

inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

inline double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, 0.5);
}

inline double iqr_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, 0.75) - quantile_sorted(values, 0.25);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << content;
    require(out.good(), ErrorCode::IoError, "failed writing '" + path + "'");
}

/// Plain CSV writer for report tables; all cells pre-formatted.
inline std::string csv_of(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out += ',';
        out += header[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

inline std::string fmt(double v) { return format_double(v); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Artificial-data experiment (moment fidelity of DP / SMOTE / SMOTE-DP)
// ---------------------------------------------------------------------------

struct Fig3Config {
    int dims = 2;  // 2 or 10
    std::size_t per_class = 4000;
    int k = 5;
    double epsilon = 6.0;
    std::vector<std::uint64_t> seeds = {1,  2,  3,  4,  5,  6,  7,  8,  9,  10,
                                        11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
    std::uint64_t source_seed = 777;
    std::string out_dir;  // empty: compute only, write nothing
};

struct MethodStats {
    std::vector<double> mean_fnorms;
    std::vector<double> cov_fnorms;
    double mean_median = 0.0;
    double mean_iqr = 0.0;
    double cov_median = 0.0;
    double cov_iqr = 0.0;
};

struct Fig3Result {
    std::map<std::string, MethodStats> methods;  // dp, smote, smote_dp
    std::vector<double> alphas;                  // per seed: measured delta ratio
    double alpha_median = 1.0;
};

/// Reproduces the artificial-data experiment: a fixed two-class Gaussian
/// source, per-seed releases from direct Laplace DP, SMOTE, and SMOTE-DP, and
/// mean/covariance Frobenius distances to the source. Processing is per
/// class on the continuous columns with labels reattached, since the Laplace
/// mechanism is defined on continuous data. Within a seed, the direct-DP run
/// and the SMOTE-DP stage share the noise substream, so the comparison
/// between the two is paired (common random numbers).
inline Fig3Result run_fig3(const Fig3Config& cfg) {
    require(cfg.dims == 2 || cfg.dims == 10, ErrorCode::InvalidArgument,
            "dims must be 2 or 10");
    require(!cfg.seeds.empty(), ErrorCode::InvalidArgument, "seed list is empty");
    GaussianMixtureSpec spec = cfg.dims == 2 ? gaussian_benchmark_2d(cfg.per_class)
                                             : gaussian_benchmark_10d(cfg.per_class);
    Table source = sample_gaussian_mixture(spec, cfg.source_seed);
    auto groups = rows_by_class(source);

    // per-class continuous views, their sensitivities and SMOTE samplers
    std::vector<Table> class_feats;
    std::vector<double> class_sens;
    std::vector<SmoteSampler> samplers;
    for (const auto& group : groups) {
        Table feats = continuous_only(take_rows(source, group));
        class_sens.push_back(identity_sensitivity(feats));
        samplers.emplace_back(feats, cfg.k, /*stratify=*/false,
                              make_distance_metric(feats));
        class_feats.push_back(std::move(feats));
    }

    Table source_feats = continuous_only(source);
    MomentSummary source_moments = moments(source_feats);

    auto relabel = [&](const std::vector<Table>& per_class) {
        Table out;
        out.schema = source.schema;
        for (std::size_t c = 0; c < per_class.size(); ++c) {
            for (const auto& row : per_class[c].rows) {
                Record rec = row;
                rec.push_back(static_cast<double>(c));
                out.rows.push_back(std::move(rec));
            }
        }
        return out;
    };

    Fig3Result result;
    for (const char* m : {"dp", "smote", "smote_dp"}) result.methods[m] = {};
    std::map<std::string, Table> first_seed_outputs;

    for (std::size_t si = 0; si < cfg.seeds.size(); ++si) {
        const std::uint64_t seed = cfg.seeds[si];
        std::vector<Table> dp_out, smote_out, smote_dp_out;
        double alpha_num = 0.0, alpha_den = 0.0;
        for (std::size_t c = 0; c < class_feats.size(); ++c) {
            const std::uint64_t noise_seed = derive_seed(seed, "fig3_noise", c);
            dp_out.push_back(laplace_mechanism(class_feats[c], class_sens[c],
                                               {cfg.epsilon}, noise_seed));
            Table z = samplers[c].sample(class_feats[c].n(),
                                         derive_seed(seed, "fig3_smote", c));
            double sens_z = identity_sensitivity(z);
            smote_dp_out.push_back(
                laplace_mechanism(z, sens_z, {cfg.epsilon}, noise_seed));
            smote_out.push_back(std::move(z));
            alpha_num += sens_z;
            alpha_den += class_sens[c];
        }
        result.alphas.push_back(alpha_num / alpha_den);

        std::map<std::string, Table> outputs;
        outputs["dp"] = relabel(dp_out);
        outputs["smote"] = relabel(smote_out);
        outputs["smote_dp"] = relabel(smote_dp_out);
        for (auto& [name, table] : outputs) {
            auto [mf, cf] =
                frobenius_diff(source_moments, moments(continuous_only(table)));
            result.methods[name].mean_fnorms.push_back(mf);
            result.methods[name].cov_fnorms.push_back(cf);
        }
        if (si == 0) first_seed_outputs = std::move(outputs);
    }

    for (auto& [name, stats] : result.methods) {
        stats.mean_median = detail::median_of(stats.mean_fnorms);
        stats.mean_iqr = detail::iqr_of(stats.mean_fnorms);
        stats.cov_median = detail::median_of(stats.cov_fnorms);
        stats.cov_iqr = detail::iqr_of(stats.cov_fnorms);
    }
    result.alpha_median = detail::median_of(result.alphas);

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        write_csv(source, (fs::path(cfg.out_dir) / "original.csv").string());
        for (const auto& [name, table] : first_seed_outputs)
            write_csv(table, (fs::path(cfg.out_dir) / (name + ".csv")).string());

        std::vector<std::vector<std::string>> rows;
        for (const auto& [name, stats] : result.methods)
            rows.push_back({name, detail::fmt(stats.mean_median),
                            detail::fmt(stats.mean_iqr), detail::fmt(stats.cov_median),
                            detail::fmt(stats.cov_iqr)});
        detail::write_text_file(
            (fs::path(cfg.out_dir) / "summary.csv").string(),
            detail::csv_of({"method", "mean_fnorm_median", "mean_fnorm_iqr",
                            "cov_fnorm_median", "cov_fnorm_iqr"},
                           rows));

        nlohmann::json j;
        j["dims"] = cfg.dims;
        j["per_class"] = cfg.per_class;
        j["k"] = cfg.k;
        j["epsilon"] = cfg.epsilon;
        j["seeds"] = cfg.seeds;
        j["source_seed"] = cfg.source_seed;
        j["alpha_median"] = result.alpha_median;
        j["alphas"] = result.alphas;
        for (const auto& [name, stats] : result.methods) {
            j["methods"][name] = {{"mean_fnorms", stats.mean_fnorms},
                                  {"cov_fnorms", stats.cov_fnorms},
                                  {"mean_median", stats.mean_median},
                                  {"mean_iqr", stats.mean_iqr},
                                  {"cov_median", stats.cov_median},
                                  {"cov_iqr", stats.cov_iqr}};
        }
        detail::write_text_file((fs::path(cfg.out_dir) / "summary.json").string(),
                                j.dump(2) + "\n");
    }
    return result;
}

// ---------------------------------------------------------------------------
// Linkage attack + utility experiment
// ---------------------------------------------------------------------------

struct LinkageGeneratorSpec {
    std::string kind;  // factory kind
    GeneratorParams params;
    std::string display;  // row label in reports; defaults to generator name
};

struct LinkageConfig {
    Table data;
    std::vector<LinkageGeneratorSpec> generators;
    AttackConfig attack;  // seed is re-derived per experiment seed
    ForestConfig forest;
    std::size_t n_outlier_targets = 5;
    std::size_t n_random_targets = 10;
    double outlier_quantile = 0.95;
    double train_fraction = 0.8;
    std::vector<std::uint64_t> seeds;
    std::uint64_t target_seed = 1234;  // target choice is fixed across seeds
    bool measure_alpha = true;
    std::string out_dir;  // empty: compute only
};

struct LinkageAttackRow {
    std::uint64_t seed = 0;
    std::string target_kind;  // "outlier" or "random"
    PrivacyGainResult game;
    std::string display;
    bool is_private = false;
    double nominal_epsilon = 0.0;
    bool has_alpha = false;
    double alpha = 1.0;
    double effective_epsilon = 0.0;
};

struct LinkageUtilityRow {
    std::uint64_t seed = 0;
    std::string display;
    UtilityReport report;
};

struct LinkageSummary {
    std::map<std::string, double> pg_median_outlier;
    std::map<std::string, double> pg_median_random;
    std::map<std::string, double> accuracy_drop_median;
    std::map<std::string, double> alpha_median;
};

struct LinkageResult {
    std::vector<std::size_t> outlier_targets;
    std::vector<std::size_t> random_targets;
    std::vector<LinkageAttackRow> attacks;
    std::vector<LinkageUtilityRow> utilities;
    LinkageSummary summary;
};

/// Shadow-model linkage games on outlier and random targets plus a utility
/// report, across generators and seeds. The train split serves as the
/// adversary's reference pool and the publisher's source; the held-out test
/// split only scores downstream accuracy.
inline LinkageResult run_linkage_experiment(const LinkageConfig& cfg) {
    require(!cfg.generators.empty(), ErrorCode::InvalidArgument,
            "at least one generator must be selected");
    require(!cfg.seeds.empty(), ErrorCode::InvalidArgument, "seed list is empty");
    require(cfg.data.schema.label_index().has_value(), ErrorCode::NoLabelColumn,
            "linkage experiment needs a labeled dataset");

    // deterministic train/test split
    std::vector<std::size_t> order(cfg.data.n());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng split_rng(derive_seed(cfg.target_seed, "split"));
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[split_rng.uniform_index(i)]);
    std::size_t n_train = static_cast<std::size_t>(
        cfg.train_fraction * static_cast<double>(cfg.data.n()));
    require(n_train >= 2 && n_train < cfg.data.n(), ErrorCode::InvalidArgument,
            "train fraction leaves an empty split");
    Table pool = take_rows(cfg.data, {order.begin(), order.begin() + n_train});
    Table test = take_rows(cfg.data, {order.begin() + n_train, order.end()});

    LinkageResult result;
    if (cfg.n_outlier_targets > 0)
        result.outlier_targets =
            select_outliers(pool, cfg.outlier_quantile, cfg.n_outlier_targets);
    {
        Rng rng(derive_seed(cfg.target_seed, "random_targets"));
        std::vector<std::size_t> candidates(pool.n());
        std::iota(candidates.begin(), candidates.end(), std::size_t{0});
        std::erase_if(candidates, [&](std::size_t i) {
            return std::find(result.outlier_targets.begin(), result.outlier_targets.end(),
                             i) != result.outlier_targets.end();
        });
        for (std::size_t i = 0; i < cfg.n_random_targets && i < candidates.size(); ++i) {
            std::size_t j = i + rng.uniform_index(candidates.size() - i);
            std::swap(candidates[i], candidates[j]);
            result.random_targets.push_back(candidates[i]);
        }
    }

    std::map<std::string, std::vector<double>> pg_outlier, pg_random, drops, alphas;

    for (std::size_t gi = 0; gi < cfg.generators.size(); ++gi) {
        const auto& spec = cfg.generators[gi];
        GeneratorPtr gen = make_generator(spec.kind, spec.params);
        std::string display = spec.display.empty() ? gen->name() : spec.display;

        for (std::uint64_t seed : cfg.seeds) {
            bool has_alpha = false;
            double alpha = 1.0, effective = 0.0;
            if (cfg.measure_alpha && spec.kind == "smote-dp") {
                const int k = spec.params.k;
                const bool strat = spec.params.stratify;
                GeneratorFn smote_fn = [k, strat](const Table& src, std::size_t n,
                                                  std::uint64_t s) {
                    SmoteSampler sampler(src, k, strat, make_distance_metric(src));
                    return sampler.sample(n, s);
                };
                SensitivityEstimate sens = estimate_sensitivity(
                    pool, smote_fn, 2, std::min<std::size_t>(10, pool.n()),
                    derive_seed(seed, "alpha", gi));
                EffectiveBudget budget =
                    effective_epsilon({spec.params.epsilon}, sens);
                has_alpha = true;
                alpha = budget.alpha;
                effective = budget.effective_epsilon;
                alphas[display].push_back(alpha);
            }

            auto run_targets = [&](const std::vector<std::size_t>& targets,
                                   const std::string& kind,
                                   std::map<std::string, std::vector<double>>& sink) {
                for (std::size_t ti = 0; ti < targets.size(); ++ti) {
                    AttackConfig game_cfg = cfg.attack;
                    game_cfg.seed = derive_seed(
                        seed, kind == "outlier" ? "game_outlier" : "game_random",
                        ti * cfg.generators.size() + gi);
                    LinkageAttackRow row;
                    row.seed = seed;
                    row.target_kind = kind;
                    row.game = run_linkage_game(pool, targets[ti], *gen, game_cfg);
                    row.display = display;
                    row.is_private = gen->privacy().is_private;
                    row.nominal_epsilon = gen->privacy().epsilon;
                    row.has_alpha = has_alpha;
                    row.alpha = alpha;
                    row.effective_epsilon = effective;
                    sink[display].push_back(row.game.privacy_gain);
                    result.attacks.push_back(std::move(row));
                }
            };
            run_targets(result.outlier_targets, "outlier", pg_outlier);
            run_targets(result.random_targets, "random", pg_random);

            ForestConfig forest_cfg = cfg.forest;
            forest_cfg.seed = derive_seed(seed, "forest", gi);
            Table synth =
                gen->fit_and_sample(pool, pool.n(), derive_seed(seed, "utility", gi));
            LinkageUtilityRow urow;
            urow.seed = seed;
            urow.display = display;
            urow.report = utility_report(pool, synth, test, forest_cfg);
            drops[display].push_back(urow.report.accuracy_drop);
            result.utilities.push_back(std::move(urow));
        }
    }

    for (const auto& [name, values] : pg_outlier)
        result.summary.pg_median_outlier[name] = detail::median_of(values);
    for (const auto& [name, values] : pg_random)
        result.summary.pg_median_random[name] = detail::median_of(values);
    for (const auto& [name, values] : drops)
        result.summary.accuracy_drop_median[name] = detail::median_of(values);
    for (const auto& [name, values] : alphas)
        result.summary.alpha_median[name] = detail::median_of(values);

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);

        std::vector<std::vector<std::string>> rows;
        for (const auto& row : result.attacks)
            rows.push_back(
                {std::to_string(row.seed), row.target_kind,
                 std::to_string(row.game.target_index), row.display,
                 row.is_private ? detail::fmt(row.nominal_epsilon) : "",
                 row.has_alpha ? detail::fmt(row.alpha) : "",
                 row.has_alpha ? detail::fmt(row.effective_epsilon) : "",
                 detail::fmt(row.game.advantage), detail::fmt(row.game.privacy_gain),
                 detail::fmt(row.game.p_yes_in), detail::fmt(row.game.p_yes_out),
                 detail::fmt(row.game.err_in), detail::fmt(row.game.err_out)});
        detail::write_text_file(
            (fs::path(cfg.out_dir) / "attacks.csv").string(),
            detail::csv_of({"seed", "target_kind", "target_index", "generator",
                            "epsilon", "alpha", "effective_epsilon", "advantage",
                            "privacy_gain", "p_yes_in", "p_yes_out", "err_in",
                            "err_out"},
                           rows));

        rows.clear();
        for (const auto& row : result.utilities)
            rows.push_back({std::to_string(row.seed), row.display,
                            detail::fmt(row.report.mean_fnorm),
                            detail::fmt(row.report.cov_fnorm),
                            detail::fmt(row.report.accuracy_raw),
                            detail::fmt(row.report.accuracy_synth),
                            detail::fmt(row.report.accuracy_drop)});
        detail::write_text_file(
            (fs::path(cfg.out_dir) / "utility.csv").string(),
            detail::csv_of({"seed", "generator", "mean_fnorm", "cov_fnorm",
                            "accuracy_raw", "accuracy_synth", "accuracy_drop"},
                           rows));

        nlohmann::json j;
        j["outlier_targets"] = result.outlier_targets;
        j["random_targets"] = result.random_targets;
        j["seeds"] = cfg.seeds;
        j["pg_median_outlier"] = result.summary.pg_median_outlier;
        j["pg_median_random"] = result.summary.pg_median_random;
        j["accuracy_drop_median"] = result.summary.accuracy_drop_median;
        j["alpha_median"] = result.summary.alpha_median;
        detail::write_text_file((fs::path(cfg.out_dir) / "summary.json").string(),
                                j.dump(2) + "\n");
    }
    return result;
}

// ---------------------------------------------------------------------------
// Single-generator release with provenance (the CLI `gen` engine)
// ---------------------------------------------------------------------------

struct GenRunConfig {
    std::string kind;
    GeneratorParams params;
    std::size_t n_out = 0;  // 0: source size
    std::uint64_t seed = 0;
    bool non_private_bayes_marker = false;  // `gen bayes --epsilon inf`
    int sens_trials = 2;
    std::size_t sens_neighbors = 10;
};

/// Generates a release and a provenance record with the full parameter set,
/// the nominal budget, and (for SMOTE-DP) the measured alpha and effective
/// budget.
inline std::pair<Table, nlohmann::json> run_generation(const Table& source,
                                                       const GenRunConfig& cfg) {
    GeneratorPtr gen = make_generator(cfg.kind, cfg.params);
    std::size_t n = cfg.n_out == 0 ? source.n() : cfg.n_out;

    nlohmann::json prov;
    prov["generator"] = cfg.kind;
    prov["name"] = gen->name();
    prov["seed"] = cfg.seed;
    prov["n_out"] = n;
    prov["parameters"] = {{"k", cfg.params.k},
                          {"degree", cfg.params.degree},
                          {"bins", cfg.params.bins},
                          {"stratify", cfg.params.stratify}};
    if (cfg.kind == "smote-dp") prov["parameters"]["dp_stage"] = cfg.params.dp_stage;

    Table released;
    if (cfg.kind == "smote-dp") {
        SmoteConfig smote_cfg{.k = cfg.params.k, .n_out = cfg.params.smote_n_out,
                              .stratify_by_label = cfg.params.stratify, .seed = 0};
        GeneratorPtr stage = make_generator(cfg.params.dp_stage, cfg.params);
        SmoteDpResult res = smote_dp_generate(source, smote_cfg, stage, n, cfg.seed,
                                              cfg.sens_trials, cfg.sens_neighbors);
        released = std::move(res.released);
        prov["privacy"] = "dp";
        prov["nominal_epsilon"] = res.budget.nominal_epsilon;
        prov["alpha"] = res.budget.alpha;
        prov["effective_epsilon"] = res.budget.effective_epsilon;
        prov["contraction_warning"] = res.budget.contraction_warning;
        prov["sensitivity"] = {{"delta_f", res.sensitivity.delta_f},
                               {"delta_f_s", res.sensitivity.delta_f_s},
                               {"trials", res.sensitivity.trials}};
    } else {
        released = gen->fit_and_sample(source, n, cfg.seed);
        Privacy privacy = gen->privacy();
        if (privacy.is_private) {
            prov["privacy"] = "dp";
            prov["nominal_epsilon"] = privacy.epsilon;
            prov["alpha"] = 1.0;
            prov["effective_epsilon"] = privacy.epsilon;
        } else {
            prov["privacy"] = "non-private";
        }
    }
    return {std::move(released), std::move(prov)};
}

}  // namespace synthdp
