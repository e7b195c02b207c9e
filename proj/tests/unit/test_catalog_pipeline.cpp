#include "moela/catalog.hpp"
#include "moela/feature_pipeline.hpp"
#include "moela/io.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>

using namespace moela;

TEST_SUITE("catalog") {

TEST_CASE("group sizes")
{
    for (int m : {2, 3}) {
        CAPTURE(m);
        CHECK(catalog_group_size(m, "nds") == 17);
        CHECK(catalog_group_size(m, "stats") == (m == 2 ? 11 : 12));
        CHECK(catalog_group_size(m, "pca") == 9);
        CHECK(catalog_group_size(m, "graph.mst") == 50);
        CHECK(catalog_group_size(m, "graph.nn") == 80);
        CHECK(catalog_group_size(m, "grad") == 4);
        CHECK(catalog_group_size(m, "meta") == 2);
        CHECK(feature_catalog(m).size() == (m == 2 ? 173u : 174u));
    }
}

TEST_CASE("catalog ids are unique and match the emitted columns")
{
    for (int m : {2, 3}) {
        auto cat = feature_catalog(m);
        std::vector<std::string> ids;
        for (const auto& e : cat) {
            ids.push_back(e.id);
        }
        auto sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());

        auto spec = m == 2 ? make_zdt(1, 4) : make_dtlz(2, 4, 3);
        auto v = compute_all_features(draw_sample(spec, 60, 1));
        CHECK(v.features.names == ids);
        CHECK(v.catalog_version == catalog_version);
    }
}

TEST_CASE("fixed single-point values agree with the emitters")
{
    // Two points where one dominates the other leave a single first-layer point.
    auto s = sample_from_scaled("t", testing::to_matrix({{0.2, 0.3}, {0.7, 0.9}}),
            testing::to_matrix({{0.0, 0.0}, {1.0, 1.0}}));
    auto v = compute_all_features(s);
    auto cat = feature_catalog(2);
    REQUIRE(cat.size() == v.features.size());
    for (std::size_t i = 0; i < cat.size(); ++i) {
        if (cat[i].degenerate_value) {
            CAPTURE(cat[i].id);
            CHECK(v.features.values[i] == doctest::Approx(*cat[i].degenerate_value));
        }
    }
}

TEST_CASE("shipped catalog document is current")
{
    auto shipped = io::read_json(std::filesystem::path(MOELA_SOURCE_DIR) / "docs" / "feature_catalog.json");
    CHECK(shipped == catalog_json());
}

}

TEST_SUITE("feature_pipeline") {

TEST_CASE("feature vectors carry their key and meta columns")
{
    auto v = compute_all_features(draw_sample(make_zdt(2, 3), 50, 7));
    CHECK(v.key.problem_id == "zdt2-d3");
    CHECK(v.key.dim == 3);
    CHECK(v.key.n_objectives == 2);
    CHECK(v.key.sample_size == 50);
    CHECK(v.key.seed == 7);
    CHECK(v.features.names.back() == "meta.sample_size");
    CHECK(v.features.values.back() == 50.0);
    CHECK(v.features.values[v.features.size() - 2] == 3.0);
}

TEST_CASE("grid covers every combination in key order")
{
    GridRequest req;
    req.suite = {make_zdt(1, 2), make_zdt(3, 2)};
    req.sizes = {30, 40};
    req.seeds = {0, 1, 2};
    auto t = run_grid(req);
    REQUIRE(t.size() == 12);
    CHECK(t.columns.size() == 173);
    CHECK(std::is_sorted(t.keys.begin(), t.keys.end()));
    CHECK(std::adjacent_find(t.keys.begin(), t.keys.end()) == t.keys.end());
}

TEST_CASE("resuming reuses finished rows and reproduces a fresh run")
{
    GridRequest req;
    req.suite = {make_zdt(1, 3)};
    req.sizes = {30};
    req.seeds = {0, 1};
    auto partial = run_grid(req);

    req.seeds = {0, 1, 2, 3};
    // Poison one cached value: if it survives, the row was reused rather than recomputed.
    auto cached = partial;
    cached.rows[0][0] = -123.0;
    auto resumed = run_grid(req, &cached);
    auto fresh = run_grid(req);
    REQUIRE(resumed.size() == 4);
    CHECK(resumed.rows[0][0] == -123.0);
    for (std::size_t r = 1; r < fresh.size(); ++r) {
        CHECK(resumed.rows[r] == fresh.rows[r]);
    }
    auto again = run_grid(req, &fresh);
    CHECK(io::to_csv_string(table_to_csv(again)) == io::to_csv_string(table_to_csv(fresh)));
}

TEST_CASE("parallel grid output is byte-identical")
{
    GridRequest req;
    req.suite = {make_zdt(1, 2), make_zdt(2, 2), make_zdt(3, 2)};
    req.sizes = {40};
    req.seeds = {0, 1};
    auto serial = run_grid(req);
    req.jobs = 3;
    auto parallel = run_grid(req);
    CHECK(io::to_csv_string(table_to_csv(serial)) == io::to_csv_string(table_to_csv(parallel)));
}

TEST_CASE("mixed objective counts are rejected")
{
    GridRequest req;
    req.suite = {make_zdt(1, 3), make_dtlz(2, 3, 3)};
    req.sizes = {30};
    req.seeds = {0};
    CHECK_THROWS_AS(run_grid(req), Error);
}

TEST_CASE("feature table CSV round-trip")
{
    GridRequest req;
    req.suite = {make_dtlz(1, 3, 3)};
    req.sizes = {40};
    req.seeds = {5, 6};
    auto t = run_grid(req);
    CHECK(t.columns.size() == 174);
    testing::TempDir dir("pipeline");
    write_feature_table(dir / "f.csv", t);
    auto back = read_feature_table(dir / "f.csv");
    CHECK(back.columns == t.columns);
    CHECK(back.keys == t.keys);
    REQUIRE(back.size() == t.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            CHECK(back.rows[r][c] == t.rows[r][c]);
        }
    }
    CHECK_THROWS_AS(t.column("nope"), Error);
}

TEST_CASE("malformed feature tables are schema errors")
{
    io::CsvTable csv;
    csv.header = {"problem_id", "x"};
    csv.rows = {{"a", "1"}};
    try {
        table_from_csv(csv);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Schema);
    }
}

}
