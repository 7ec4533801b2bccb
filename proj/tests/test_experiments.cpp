#include <filesystem>
#include <fstream>

#include "synthdp/datasets.hpp"
#include "synthdp/experiments.hpp"
#include "test_helpers.hpp"

using namespace synthdp;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("german-like sample is deterministic and well-formed", "[experiments]") {
    Table t = make_german_like(300, 7);
    REQUIRE(t.n() == 300);
    REQUIRE(t.schema.columns.size() == 10);
    REQUIRE(t.schema.label_column == "class");
    t.validate();
    REQUIRE(make_german_like(300, 7) == t);
    REQUIRE(make_german_like(300, 8) != t);

    // both classes present with the bad class in the minority
    auto groups = rows_by_class(t);
    REQUIRE(groups[0].size() > groups[1].size());
    REQUIRE(groups[1].size() > 30);

    for (const auto& row : t.rows) {
        REQUIRE(row[1] >= 6.0);
        REQUIRE(row[1] <= 72.0);
        REQUIRE(row[5] >= 19.0);
        REQUIRE(row[5] <= 75.0);
    }
}

TEST_CASE("bundled data files match the generator", "[experiments]") {
    fs::path data_dir(SYNTHDP_DATA_DIR);
    Table bundled = load_csv((data_dir / "german_like.csv").string(),
                             load_schema((data_dir / "german_like.schema").string()));
    REQUIRE(bundled == make_german_like());
    REQUIRE(slurp(data_dir / "german_like.csv") == write_csv_text(make_german_like()));
}

TEST_CASE("fig3 experiment writes a reproducible bundle", "[experiments]") {
    TempDir dir_a("synthdp_fig3_a");
    TempDir dir_b("synthdp_fig3_b");
    Fig3Config cfg;
    cfg.dims = 2;
    cfg.per_class = 500;
    cfg.k = 5;
    cfg.epsilon = 6.0;
    cfg.seeds = {1, 2, 3};
    cfg.out_dir = dir_a.path.string();
    Fig3Result res = run_fig3(cfg);

    for (const char* name :
         {"original.csv", "dp.csv", "smote.csv", "smote_dp.csv", "summary.csv",
          "summary.json"})
        REQUIRE(fs::exists(dir_a.path / name));

    // SMOTE tracks the source far better than the noisy releases
    REQUIRE(res.methods["smote"].cov_median < res.methods["dp"].cov_median);
    REQUIRE(res.methods["smote"].cov_median < res.methods["smote_dp"].cov_median);
    for (double a : res.alphas) REQUIRE(a < 1.05);

    cfg.out_dir = dir_b.path.string();
    run_fig3(cfg);
    for (const char* name : {"original.csv", "dp.csv", "smote.csv", "smote_dp.csv",
                             "summary.csv", "summary.json"})
        REQUIRE(slurp(dir_a.path / name) == slurp(dir_b.path / name));
}

TEST_CASE("fig3 on 10-D data keeps the ordering", "[experiments]") {
    Fig3Config cfg;
    cfg.dims = 10;
    cfg.per_class = 500;
    cfg.k = 5;
    cfg.epsilon = 6.0;
    cfg.seeds = {1, 2, 3, 4, 5};
    Fig3Result res = run_fig3(cfg);
    REQUIRE(res.methods["smote"].cov_median < res.methods["smote_dp"].cov_median);
    REQUIRE(res.methods["smote_dp"].cov_median < res.methods["dp"].cov_median);
    REQUIRE(res.alpha_median < 1.0);
}

TEST_CASE("linkage experiment produces the report bundle", "[experiments]") {
    TempDir dir_a("synthdp_link_a");
    TempDir dir_b("synthdp_link_b");

    LinkageConfig cfg;
    cfg.data = make_german_like(400, 3);
    cfg.generators.push_back({"identity", {}, "identity"});
    GeneratorParams dp_params;
    dp_params.epsilon = 50.0;
    dp_params.degree = 1;
    dp_params.bins = 8;
    cfg.generators.push_back({"dp-bayes", dp_params, "dp_bayes_eps50"});
    cfg.attack.n_shadow_pairs = 4;
    cfg.attack.n_test_pairs = 12;
    cfg.attack.train_subset_size = 150;
    cfg.attack.synth_size = 150;
    cfg.attack.feature_set = FeatureSet::Naive;
    cfg.forest.n_trees = 15;
    cfg.forest.max_depth = 8;
    cfg.n_outlier_targets = 2;
    cfg.n_random_targets = 2;
    cfg.seeds = {1};
    cfg.out_dir = dir_a.path.string();

    LinkageResult res = run_linkage_experiment(cfg);
    REQUIRE(res.attacks.size() == 2 * (2 + 2));  // generators x (outlier + random)
    REQUIRE(res.utilities.size() == 2);
    REQUIRE(fs::exists(dir_a.path / "attacks.csv"));
    REQUIRE(fs::exists(dir_a.path / "utility.csv"));
    REQUIRE(fs::exists(dir_a.path / "summary.json"));

    // raw release: presence verification nails the membership call
    REQUIRE(res.summary.pg_median_outlier.at("identity") <= 0.1);

    cfg.out_dir = dir_b.path.string();
    run_linkage_experiment(cfg);
    for (const char* name : {"attacks.csv", "utility.csv", "summary.json"})
        REQUIRE(slurp(dir_a.path / name) == slurp(dir_b.path / name));

    SECTION("config validation runs before any computation") {
        LinkageConfig bad = cfg;
        bad.generators.clear();
        REQUIRE_ERROR(run_linkage_experiment(bad), ErrorCode::InvalidArgument);
        LinkageConfig no_seeds = cfg;
        no_seeds.seeds.clear();
        REQUIRE_ERROR(run_linkage_experiment(no_seeds), ErrorCode::InvalidArgument);
    }
}

TEST_CASE("generation provenance records the effective budget", "[experiments]") {
    Table source = make_german_like(300, 5);

    GenRunConfig cfg;
    cfg.kind = "smote-dp";
    cfg.params.epsilon = 50.0;
    cfg.params.k = 1;
    cfg.params.degree = 1;
    cfg.params.bins = 8;
    cfg.seed = 9;
    auto [released, prov] = run_generation(source, cfg);
    REQUIRE(released.n() == source.n());
    REQUIRE(prov.at("privacy") == "dp");
    REQUIRE(prov.at("nominal_epsilon").get<double>() == 50.0);
    double alpha = prov.at("alpha").get<double>();
    REQUIRE(alpha > 0.0);
    REQUIRE(alpha <= 1.0);
    REQUIRE(prov.at("effective_epsilon").get<double>() == Catch::Approx(alpha * 50.0));
    REQUIRE(prov.at("parameters").at("k").get<int>() == 1);

    GenRunConfig nonpriv;
    nonpriv.kind = "bayes";
    nonpriv.params.degree = 1;
    nonpriv.params.bins = 8;
    auto [t2, prov2] = run_generation(source, nonpriv);
    REQUIRE(prov2.at("privacy") == "non-private");
    REQUIRE(!prov2.contains("nominal_epsilon"));

    // identical run is byte-identical through CSV serialization
    auto [released_again, _] = run_generation(source, cfg);
    REQUIRE(write_csv_text(released_again) == write_csv_text(released));
}
