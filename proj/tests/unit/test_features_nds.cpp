#include "moela/dominance.hpp"
#include "moela/features_nds.hpp"
#include "moela/indicators.hpp"
#include "moela/problems.hpp"
#include "moela/sampling.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace moela;

TEST_SUITE("features_nds") {

TEST_CASE("six-point example counts")
{
    auto s = sample_from_scaled("example", testing::to_matrix(oracle::two_space_decision()),
            testing::to_matrix(oracle::two_space_objective()));
    auto f = compute_nds_features(s);
    CHECK(f.no_non_dom_points == 3);
    CHECK(f.max_rank == 3);
    CHECK(f.avg_points_per_layer == 2.0);
    CHECK(f.hv_dom_layer[3] == 0.0);
    CHECK(f.hv_dom_layer[4] == 0.0);
    CHECK(f.sp_dom_layer[3] == 0.0);
}

TEST_CASE("single-point sample")
{
    auto s = draw_sample(make_dtlz(2, 4, 3), 1, 0);
    auto f = compute_nds_features(s);
    CHECK(f.no_non_dom_points == 1);
    CHECK(f.max_rank == 1);
    CHECK(f.hv_dom_layer[0] == doctest::Approx(std::pow(1.1, 3)).epsilon(1e-12));
    CHECK(f.sp_dom_layer[0] == doctest::Approx(1.0));
    for (int l = 1; l < nds_layer_count; ++l) {
        CHECK(f.hv_dom_layer[static_cast<std::size_t>(l)] == 0.0);
        CHECK(f.sp_dom_layer[static_cast<std::size_t>(l)] == 0.0);
    }
    for (double r : f.r) {
        CHECK(r == 1.0);
    }
}

TEST_CASE("layer HV uses the scaled objectives and the 1.1 reference")
{
    auto s = draw_sample(make_zdt(2, 3), 60, 4);
    auto layers = non_dominated_sort(s.Y);
    auto f = compute_nds_features(s, layers);
    auto ref = RefPoint::uniform(2, 1.1);
    for (std::size_t l = 0; l < std::min<std::size_t>(layers.size(), nds_layer_count); ++l) {
        auto pts = testing::to_points(select_rows(s.Y, layers.layers[l]));
        CHECK(f.hv_dom_layer[l] == doctest::Approx(hv(select_rows(s.Y, layers.layers[l]), ref)));
        if (pts.size() <= 12) {
            CHECK(std::abs(f.hv_dom_layer[l] - oracle::hv_inclusion_exclusion(pts, {1.1, 1.1})) < 1e-12);
        }
    }
}

TEST_CASE("regression targets cover every layer")
{
    auto s = draw_sample(make_dtlz(1, 5, 2), 200, 3);
    auto layers = non_dominated_sort(s.Y);
    REQUIRE(layers.size() > nds_layer_count);
    std::vector<double> all;
    for (const auto& layer : layers.layers) {
        all.push_back(hv(select_rows(s.Y, layer), RefPoint::uniform(2, 1.1)));
    }
    auto f = compute_nds_features(s, layers);
    for (int p = 1; p <= 4; ++p) {
        if (all.size() > static_cast<std::size_t>(p + 1)) {
            CHECK(f.r[static_cast<std::size_t>(p - 1)] == doctest::Approx(oracle::normal_equations_r2(all, p)).epsilon(1e-6));
        }
    }
}

TEST_CASE("group invariants over random samples")
{
    for (const auto& spec : {make_zdt(1, 5), make_zdt(3, 2), make_dtlz(2, 5, 3), make_bisphere(3)}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto s = draw_sample(spec, 150, seed);
            auto f = compute_nds_features(s);
            CHECK(f.avg_points_per_layer * f.max_rank == doctest::Approx(150.0));
            auto h = std::min(f.max_rank, nds_layer_count);
            for (int l = 1; l < h; ++l) {
                CHECK(f.hv_dom_layer[static_cast<std::size_t>(l)] <= f.hv_dom_layer[static_cast<std::size_t>(l - 1)] + 1e-12);
            }
            for (std::size_t p = 1; p < 4; ++p) {
                CHECK(f.r[p] >= f.r[p - 1] - 1e-9);
            }
        }
    }
}

TEST_CASE("two-sphere control problem has near-linear layer HV decay")
{
    auto f = compute_nds_features(draw_sample(make_bisphere(2), 500, 1));
    CHECK(f.r[0] >= 0.9);
    CHECK(std::abs(f.r[3] - f.r[0]) < 0.1);
}

TEST_CASE("feature names")
{
    auto names = NdsFeatures{}.to_features().names;
    REQUIRE(names.size() == 17);
    CHECK(names.front() == "no_non_dom_points");
    CHECK(names[3] == "hv_dom_layer_1");
    CHECK(names[8] == "sp_dom_layer_1");
    CHECK(names.back() == "r4");
}

}
