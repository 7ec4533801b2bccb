// synthdp: privacy-preserving synthetic tabular data via SMOTE-DP, with
// moment-based utility metrics and a shadow-model linkage attack.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synthdp/attack.hpp"
#include "synthdp/datasets.hpp"
#include "synthdp/dp.hpp"
#include "synthdp/experiments.hpp"
#include "synthdp/pipeline.hpp"
#include "synthdp/tabular.hpp"
#include "synthdp/utility.hpp"

using namespace synthdp;

namespace {

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) seeds.push_back(std::stoull(tok));
    }
    require(!seeds.empty(), ErrorCode::InvalidArgument, "empty seed list");
    return seeds;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) values.push_back(std::stod(tok));
    }
    return values;
}

Table load_input(const std::string& data_path, const std::string& schema_path) {
    require(!data_path.empty() && !schema_path.empty(), ErrorCode::InvalidArgument,
            "--data and --schema are required");
    Schema schema = load_schema(schema_path);
    return load_csv(data_path, schema);
}

FeatureSet parse_feature_set(const std::string& name) {
    if (name == "naive") return FeatureSet::Naive;
    if (name == "histogram") return FeatureSet::Histogram;
    if (name == "correlation") return FeatureSet::Correlation;
    raise(ErrorCode::InvalidArgument, "unknown feature set '" + name + "'");
}

Distinguisher parse_distinguisher(const std::string& name) {
    if (name == "logreg") return Distinguisher::LogisticRegression;
    if (name == "forest") return Distinguisher::RandomForest;
    raise(ErrorCode::InvalidArgument, "unknown distinguisher '" + name + "'");
}

struct CommonGenOpts {
    std::string data, schema, out, provenance;
    double epsilon = 1.0;
    int k = 5;
    int degree = 1;
    int bins = 10;
    bool no_stratify = false;
    std::uint64_t seed = 0;
    std::size_t n_out = 0;
    std::string dp_stage = "dp-bayes";
    std::string save_model;
};

void add_gen_options(CLI::App* cmd, CommonGenOpts& opts, bool with_epsilon) {
    cmd->add_option("--data", opts.data, "input CSV")->required();
    cmd->add_option("--schema", opts.schema, "schema sidecar")->required();
    cmd->add_option("--out", opts.out, "output CSV path")->required();
    cmd->add_option("--provenance", opts.provenance,
                    "provenance JSON path (default: <out>.provenance.json)");
    if (with_epsilon)
        cmd->add_option("--epsilon", opts.epsilon, "privacy budget")->required();
    cmd->add_option("--k", opts.k, "SMOTE neighbor count");
    cmd->add_option("--degree", opts.degree, "BayesNet parent limit");
    cmd->add_option("--bins", opts.bins, "discretization bins");
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--n", opts.n_out, "output rows (default: source size)");
    cmd->add_flag("--no-stratify", opts.no_stratify, "disable per-class SMOTE");
}

int run_gen(const std::string& kind, const CommonGenOpts& opts) {
    Table source = load_input(opts.data, opts.schema);
    GenRunConfig cfg;
    cfg.kind = kind;
    cfg.params.epsilon = opts.epsilon;
    cfg.params.k = opts.k;
    cfg.params.degree = opts.degree;
    cfg.params.bins = opts.bins;
    cfg.params.stratify = !opts.no_stratify;
    cfg.params.dp_stage = opts.dp_stage;
    cfg.n_out = opts.n_out;
    cfg.seed = opts.seed;

    auto [released, provenance] = run_generation(source, cfg);
    write_csv(released, opts.out);
    provenance["data"] = opts.data;
    provenance["schema"] = opts.schema;
    std::string prov_path =
        opts.provenance.empty() ? opts.out + ".provenance.json" : opts.provenance;
    detail::write_text_file(prov_path, provenance.dump(2) + "\n");

    if (!opts.save_model.empty()) {
        BayesNetModel model =
            kind == "bayes"
                ? fit_bayesnet(source, opts.degree, opts.bins, derive_seed(opts.seed, "fit"))
                : fit_dp_bayesnet(source, {opts.epsilon}, opts.degree, opts.bins,
                                  derive_seed(opts.seed, "fit"));
        save_bayesnet(model, opts.save_model);
    }
    std::cout << "wrote " << opts.out << " (" << released.n() << " rows) and "
              << prov_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "synthdp: SMOTE-DP synthetic data generation and privacy-utility evaluation\n"
        "Thread cap: set SYNTHDP_THREADS (0 or unset = auto)."};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a synthetic release");
    gen->require_subcommand(1);
    std::map<std::string, CommonGenOpts> gen_opts;
    struct GenSub {
        const char* kind;
        bool with_epsilon;
    };
    for (const auto& sub : {GenSub{"smote", false}, GenSub{"dp-laplace", true},
                            GenSub{"dp-bayes", true}, GenSub{"smote-dp", true},
                            GenSub{"bayes", false}}) {
        auto* cmd = gen->add_subcommand(sub.kind);
        auto& opts = gen_opts[sub.kind];
        add_gen_options(cmd, opts, sub.with_epsilon);
        if (std::string(sub.kind) == "smote-dp")
            cmd->add_option("--dp-stage", opts.dp_stage,
                            "second stage: dp-bayes or dp-laplace");
        if (std::string(sub.kind) == "dp-bayes" || std::string(sub.kind) == "bayes")
            cmd->add_option("--save-model", opts.save_model, "write fitted model JSON");
        if (std::string(sub.kind) == "bayes") {
            static std::string eps_text;
            cmd->add_option("--epsilon", eps_text,
                            "accepted for symmetry; only 'inf' (non-private) is valid")
                ->check([](const std::string& v) {
                    return v == "inf" ? std::string{}
                                      : std::string("the bayes generator is non-private; "
                                                    "use dp-bayes for finite budgets");
                });
        }
    }

    // gen from-model: sample a previously saved BayesNet model
    auto* from_model = gen->add_subcommand("from-model", "sample a saved BayesNet model");
    struct {
        std::string model, out;
        std::size_t n = 1000;
        std::uint64_t seed = 0;
    } fm;
    from_model->add_option("--model", fm.model, "model JSON path")->required();
    from_model->add_option("--n", fm.n, "rows to sample");
    from_model->add_option("--seed", fm.seed, "RNG seed");
    from_model->add_option("--out", fm.out, "output CSV path")->required();

    // ---- sens ----
    auto* sens = app.add_subcommand("sens", "estimate generator-output sensitivity");
    struct {
        std::string data, schema, generator = "smote", mode = "remove", out;
        int k = 5, trials = 3;
        std::size_t neighbor_samples = 10;
        std::uint64_t seed = 0;
    } sens_opts;
    sens->add_option("--data", sens_opts.data)->required();
    sens->add_option("--schema", sens_opts.schema)->required();
    sens->add_option("--generator", sens_opts.generator, "smote or identity");
    sens->add_option("--k", sens_opts.k, "SMOTE neighbor count");
    sens->add_option("--trials", sens_opts.trials, "runs averaged per neighbor");
    sens->add_option("--neighbor-samples", sens_opts.neighbor_samples,
                     "leave-one-out neighbors sampled");
    sens->add_option("--mode", sens_opts.mode, "remove or replace");
    sens->add_option("--seed", sens_opts.seed, "RNG seed");
    sens->add_option("--out", sens_opts.out, "JSON output path (default: stdout)");

    // ---- attack linkage ----
    auto* attack = app.add_subcommand("attack", "membership attacks");
    auto* linkage = attack->add_subcommand("linkage", "shadow-model linkage game");
    struct {
        std::string data, schema, generator = "dp-bayes", targets = "outliers", out;
        double epsilon = 50.0;
        int k = 1, degree = 1, bins = 10;
        std::string dp_stage = "dp-bayes";
        int n_targets = 5;
        int shadow_pairs = 50, test_pairs = 100;
        std::size_t subset_size = 500, synth_size = 500;
        std::string features = "naive", distinguisher = "logreg";
        std::uint64_t seed = 0;
    } atk;
    linkage->add_option("--data", atk.data)->required();
    linkage->add_option("--schema", atk.schema)->required();
    linkage->add_option("--generator", atk.generator, "generator kind");
    linkage->add_option("--epsilon", atk.epsilon, "budget for DP generators");
    linkage->add_option("--k", atk.k, "SMOTE neighbor count");
    linkage->add_option("--degree", atk.degree, "BayesNet parent limit");
    linkage->add_option("--bins", atk.bins, "discretization bins");
    linkage->add_option("--dp-stage", atk.dp_stage, "smote-dp second stage");
    linkage->add_option("--targets", atk.targets,
                        "outliers, random, or comma-separated row indices");
    linkage->add_option("--n-targets", atk.n_targets, "target count");
    linkage->add_option("--shadow-pairs", atk.shadow_pairs, "shadow rounds per label");
    linkage->add_option("--test-pairs", atk.test_pairs, "test rounds per label");
    linkage->add_option("--subset-size", atk.subset_size, "publisher sample size");
    linkage->add_option("--synth-size", atk.synth_size, "released rows per round");
    linkage->add_option("--features", atk.features, "naive|histogram|correlation");
    linkage->add_option("--distinguisher", atk.distinguisher, "logreg|forest");
    linkage->add_option("--seed", atk.seed, "RNG seed");
    linkage->add_option("--out", atk.out, "output directory")->required();

    // ---- utility ----
    auto* utility = app.add_subcommand("utility", "moment + accuracy utility report");
    struct {
        std::string data, schema, generator = "smote-dp", out;
        double epsilon = 50.0, split = 0.8;
        int k = 1, degree = 1, bins = 10;
        std::string dp_stage = "dp-bayes";
        int trees = 100, depth = 12, min_leaf = 2;
        std::uint64_t seed = 0;
    } uti;
    utility->add_option("--data", uti.data)->required();
    utility->add_option("--schema", uti.schema)->required();
    utility->add_option("--generator", uti.generator, "generator kind");
    utility->add_option("--epsilon", uti.epsilon, "budget for DP generators");
    utility->add_option("--k", uti.k, "SMOTE neighbor count");
    utility->add_option("--degree", uti.degree, "BayesNet parent limit");
    utility->add_option("--bins", uti.bins, "discretization bins");
    utility->add_option("--dp-stage", uti.dp_stage, "smote-dp second stage");
    utility->add_option("--split", uti.split, "train fraction");
    utility->add_option("--trees", uti.trees, "forest size");
    utility->add_option("--depth", uti.depth, "tree depth limit");
    utility->add_option("--min-leaf", uti.min_leaf, "minimum leaf size");
    utility->add_option("--seed", uti.seed, "RNG seed");
    utility->add_option("--out", uti.out, "report JSON path")->required();

    // ---- experiment ----
    auto* experiment = app.add_subcommand("experiment", "canned paper-style experiments");
    experiment->require_subcommand(1);

    auto* fig3 = experiment->add_subcommand(
        "fig3", "artificial-data moment fidelity (DP vs SMOTE vs SMOTE-DP)");
    struct {
        int dims = 2;
        std::size_t per_class = 4000;
        int k = 5;
        double epsilon = 6.0;
        std::string seeds = "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20";
        std::uint64_t source_seed = 777;
        std::string out;
    } f3;
    fig3->add_option("--dims", f3.dims, "2 or 10");
    fig3->add_option("--per-class", f3.per_class, "rows per class");
    fig3->add_option("--k", f3.k, "SMOTE neighbor count");
    fig3->add_option("--epsilon", f3.epsilon, "privacy budget");
    fig3->add_option("--seeds", f3.seeds, "comma-separated seed list");
    fig3->add_option("--source-seed", f3.source_seed, "source sample seed");
    fig3->add_option("--out", f3.out, "output directory")->required();

    auto* explink = experiment->add_subcommand(
        "linkage", "privacy gain vs utility across generators");
    struct {
        std::string data, schema;
        std::string generators = "identity,bayes,dp-bayes,smote-dp";
        std::string epsilons = "0.1,1,50";
        int k = 1, degree = 1, bins = 10;
        int n_outliers = 5, n_random = 10;
        int shadow_pairs = 25, test_pairs = 50;
        std::size_t subset_size = 400, synth_size = 400;
        std::string features = "naive", distinguisher = "logreg";
        std::string seeds = "1,2,3,4,5";
        int trees = 60, depth = 10;
        std::uint64_t target_seed = 1234;
        std::string out;
    } el;
    explink->add_option("--data", el.data, "CSV (default: bundled german-like sample)");
    explink->add_option("--schema", el.schema, "schema sidecar");
    explink->add_option("--generators", el.generators, "comma list of kinds");
    explink->add_option("--epsilons", el.epsilons, "budgets for DP kinds");
    explink->add_option("--k", el.k, "SMOTE neighbor count");
    explink->add_option("--degree", el.degree, "BayesNet parent limit");
    explink->add_option("--bins", el.bins, "discretization bins");
    explink->add_option("--n-outliers", el.n_outliers, "outlier targets");
    explink->add_option("--n-random", el.n_random, "random targets");
    explink->add_option("--shadow-pairs", el.shadow_pairs, "shadow rounds per label");
    explink->add_option("--test-pairs", el.test_pairs, "test rounds per label");
    explink->add_option("--subset-size", el.subset_size, "publisher sample size");
    explink->add_option("--synth-size", el.synth_size, "released rows per round");
    explink->add_option("--features", el.features, "naive|histogram|correlation");
    explink->add_option("--distinguisher", el.distinguisher, "logreg|forest");
    explink->add_option("--seeds", el.seeds, "comma-separated seed list");
    explink->add_option("--trees", el.trees, "forest size");
    explink->add_option("--depth", el.depth, "tree depth limit");
    explink->add_option("--target-seed", el.target_seed, "target selection seed");
    explink->add_option("--out", el.out, "output directory")->required();

    // ---- dataset ----
    auto* dataset = app.add_subcommand("dataset", "write bundled datasets");
    auto* german = dataset->add_subcommand("german", "German-Credit-shaped sample");
    struct {
        std::size_t n = 1000;
        std::uint64_t seed = 20240901;
        std::string out_csv = "german_like.csv", out_schema = "german_like.schema";
    } ger;
    german->add_option("--n", ger.n, "row count");
    german->add_option("--seed", ger.seed, "RNG seed");
    german->add_option("--out-csv", ger.out_csv, "CSV path");
    german->add_option("--out-schema", ger.out_schema, "schema path");

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& kind : {"smote", "dp-laplace", "dp-bayes", "smote-dp", "bayes"}) {
            if (gen->got_subcommand(kind)) return run_gen(kind, gen_opts[kind]);
        }

        if (gen->got_subcommand(from_model)) {
            BayesNetModel model = load_bayesnet(fm.model);
            Table sample = sample_bayesnet(model, fm.n, fm.seed);
            write_csv(sample, fm.out);
            std::cout << "wrote " << fm.out << " (" << sample.n() << " rows)\n";
            return 0;
        }

        if (app.got_subcommand(sens)) {
            Table source = load_input(sens_opts.data, sens_opts.schema);
            GeneratorFn fn;
            if (sens_opts.generator == "identity") {
                fn = identity_generator_fn();
            } else if (sens_opts.generator == "smote") {
                int k = sens_opts.k;
                fn = [k](const Table& src, std::size_t n, std::uint64_t s) {
                    SmoteSampler sampler(src, k, src.schema.label_index().has_value(),
                                         make_distance_metric(src));
                    return sampler.sample(n, s);
                };
            } else {
                raise(ErrorCode::InvalidArgument,
                      "sens generator must be smote or identity");
            }
            NeighborMode mode = sens_opts.mode == "replace" ? NeighborMode::ReplaceOne
                                                            : NeighborMode::RemoveOne;
            SensitivityEstimate est =
                estimate_sensitivity(source, fn, sens_opts.trials,
                                     sens_opts.neighbor_samples, sens_opts.seed, mode);
            nlohmann::json j;
            j["delta_f"] = est.delta_f;
            j["delta_f_s"] = est.delta_f_s;
            j["alpha"] = est.alpha;
            j["trials"] = est.trials;
            j["neighbor_mode"] =
                est.neighbor_mode == NeighborMode::RemoveOne ? "remove" : "replace";
            j["exhaustive"] = est.exhaustive;
            if (sens_opts.out.empty())
                std::cout << j.dump(2) << "\n";
            else
                detail::write_text_file(sens_opts.out, j.dump(2) + "\n");
            return 0;
        }

        if (attack->got_subcommand(linkage)) {
            Table pool = load_input(atk.data, atk.schema);
            GeneratorParams params;
            params.epsilon = atk.epsilon;
            params.k = atk.k;
            params.degree = atk.degree;
            params.bins = atk.bins;
            params.dp_stage = atk.dp_stage;
            GeneratorPtr generator = make_generator(atk.generator, params);

            std::vector<std::size_t> targets;
            if (atk.targets == "outliers") {
                targets = select_outliers(pool, 0.95,
                                          static_cast<std::size_t>(atk.n_targets));
                require(!targets.empty(), ErrorCode::InvalidArgument,
                        "no outliers above the quantile");
            } else if (atk.targets == "random") {
                Rng rng(derive_seed(atk.seed, "cli_targets"));
                for (int i = 0; i < atk.n_targets; ++i)
                    targets.push_back(rng.uniform_index(pool.n()));
            } else {
                for (std::uint64_t v : parse_seed_list(atk.targets))
                    targets.push_back(static_cast<std::size_t>(v));
            }

            AttackConfig cfg;
            cfg.n_shadow_pairs = atk.shadow_pairs;
            cfg.n_test_pairs = atk.test_pairs;
            cfg.train_subset_size = atk.subset_size;
            cfg.synth_size = atk.synth_size;
            cfg.feature_set = parse_feature_set(atk.features);
            cfg.distinguisher = parse_distinguisher(atk.distinguisher);
            cfg.seed = atk.seed;
            auto results = attack_sweep(pool, targets, {generator}, cfg);

            namespace fs = std::filesystem;
            fs::create_directories(atk.out);
            std::vector<std::vector<std::string>> rows;
            std::vector<double> gains;
            for (const auto& r : results) {
                rows.push_back({std::to_string(r.target_index), r.generator,
                                detail::fmt(atk.epsilon), detail::fmt(r.advantage),
                                detail::fmt(r.privacy_gain), detail::fmt(r.p_yes_in),
                                detail::fmt(r.p_yes_out), detail::fmt(r.err_in),
                                detail::fmt(r.err_out)});
                gains.push_back(r.privacy_gain);
            }
            detail::write_text_file(
                (fs::path(atk.out) / "attacks.csv").string(),
                detail::csv_of({"target_index", "generator", "epsilon", "advantage",
                                "privacy_gain", "p_yes_in", "p_yes_out", "err_in",
                                "err_out"},
                               rows));
            nlohmann::json j;
            j["generator"] = generator->name();
            j["targets"] = targets;
            j["pg_median"] = detail::median_of(gains);
            detail::write_text_file((fs::path(atk.out) / "summary.json").string(),
                                    j.dump(2) + "\n");
            std::cout << "wrote " << atk.out << "/attacks.csv (" << results.size()
                      << " games)\n";
            return 0;
        }

        if (app.got_subcommand(utility)) {
            Table data = load_input(uti.data, uti.schema);
            std::vector<std::size_t> order(data.n());
            std::iota(order.begin(), order.end(), std::size_t{0});
            Rng rng(derive_seed(uti.seed, "utility_split"));
            for (std::size_t i = order.size(); i > 1; --i)
                std::swap(order[i - 1], order[rng.uniform_index(i)]);
            std::size_t n_train =
                static_cast<std::size_t>(uti.split * static_cast<double>(data.n()));
            require(n_train >= 2 && n_train < data.n(), ErrorCode::InvalidArgument,
                    "--split leaves an empty side");
            Table train = take_rows(data, {order.begin(), order.begin() + n_train});
            Table test = take_rows(data, {order.begin() + n_train, order.end()});

            GeneratorParams params;
            params.epsilon = uti.epsilon;
            params.k = uti.k;
            params.degree = uti.degree;
            params.bins = uti.bins;
            params.dp_stage = uti.dp_stage;
            GeneratorPtr generator = make_generator(uti.generator, params);
            Table synth =
                generator->fit_and_sample(train, train.n(), derive_seed(uti.seed, "gen"));

            ForestConfig forest_cfg{.n_trees = uti.trees, .max_depth = uti.depth,
                                    .min_leaf = uti.min_leaf,
                                    .features_per_split = ForestConfig::FeatureRule::Sqrt,
                                    .seed = derive_seed(uti.seed, "forest")};
            UtilityReport report = utility_report(train, synth, test, forest_cfg);
            nlohmann::json j;
            j["generator"] = generator->name();
            j["mean_fnorm"] = report.mean_fnorm;
            j["cov_fnorm"] = report.cov_fnorm;
            j["accuracy_raw"] = report.accuracy_raw;
            j["accuracy_synth"] = report.accuracy_synth;
            j["accuracy_drop"] = report.accuracy_drop;
            detail::write_text_file(uti.out, j.dump(2) + "\n");
            std::cout << "wrote " << uti.out << "\n";
            return 0;
        }

        if (experiment->got_subcommand(fig3)) {
            Fig3Config cfg;
            cfg.dims = f3.dims;
            cfg.per_class = f3.per_class;
            cfg.k = f3.k;
            cfg.epsilon = f3.epsilon;
            cfg.seeds = parse_seed_list(f3.seeds);
            cfg.source_seed = f3.source_seed;
            cfg.out_dir = f3.out;
            Fig3Result res = run_fig3(cfg);
            std::cout << "cov F-norm medians: smote=" << res.methods["smote"].cov_median
                      << " smote_dp=" << res.methods["smote_dp"].cov_median
                      << " dp=" << res.methods["dp"].cov_median << "\n";
            return 0;
        }

        if (experiment->got_subcommand(explink)) {
            LinkageConfig cfg;
            if (el.data.empty()) {
                cfg.data = make_german_like();
            } else {
                cfg.data = load_input(el.data, el.schema);
            }
            std::vector<double> epsilons = parse_double_list(el.epsilons);
            std::stringstream ss(el.generators);
            std::string kind;
            while (std::getline(ss, kind, ',')) {
                if (kind.empty()) continue;
                GeneratorParams params;
                params.k = el.k;
                params.degree = el.degree;
                params.bins = el.bins;
                bool is_dp =
                    kind == "dp-bayes" || kind == "dp-laplace" || kind == "smote-dp";
                if (is_dp) {
                    for (double eps : epsilons) {
                        GeneratorParams p = params;
                        p.epsilon = eps;
                        cfg.generators.push_back({kind, p, kind + "_eps" + detail::fmt(eps)});
                    }
                } else {
                    cfg.generators.push_back({kind, params, kind});
                }
            }
            cfg.attack.n_shadow_pairs = el.shadow_pairs;
            cfg.attack.n_test_pairs = el.test_pairs;
            cfg.attack.train_subset_size = el.subset_size;
            cfg.attack.synth_size = el.synth_size;
            cfg.attack.feature_set = parse_feature_set(el.features);
            cfg.attack.distinguisher = parse_distinguisher(el.distinguisher);
            cfg.forest.n_trees = el.trees;
            cfg.forest.max_depth = el.depth;
            cfg.n_outlier_targets = static_cast<std::size_t>(el.n_outliers);
            cfg.n_random_targets = static_cast<std::size_t>(el.n_random);
            cfg.seeds = parse_seed_list(el.seeds);
            cfg.target_seed = el.target_seed;
            cfg.out_dir = el.out;
            LinkageResult res = run_linkage_experiment(cfg);
            std::cout << "wrote " << el.out << " (" << res.attacks.size() << " games, "
                      << res.utilities.size() << " utility rows)\n";
            return 0;
        }

        if (dataset->got_subcommand(german)) {
            Table t = make_german_like(ger.n, ger.seed);
            write_csv(t, ger.out_csv);
            write_schema(t.schema, ger.out_schema);
            std::cout << "wrote " << ger.out_csv << " and " << ger.out_schema << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
