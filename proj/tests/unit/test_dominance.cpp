#include "moela/dominance.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace moela;
using testing::to_matrix;

namespace {

std::vector<double> v(std::initializer_list<double> l) { return l; }

}

TEST_SUITE("dominance") {

TEST_CASE("dominates on small vectors")
{
    CHECK(dominates(v({1, 2}), v({2, 3})));
    CHECK_FALSE(dominates(v({1, 2}), v({2, 1})));
    CHECK_FALSE(dominates(v({1, 2}), v({1, 2})));
    CHECK(dominates(v({1, 2}), v({1, 3})));
}

TEST_CASE("dominates rejects vectors of different length")
{
    try {
        (void)dominates(v({1, 2}), v({1, 2, 3}));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Contract);
    }
}

TEST_CASE("worked six-point example")
{
    auto Y = to_matrix(oracle::two_space_objective());
    CHECK(nd_filter(Y) == IndexList{0, 3, 4});
    auto p = non_dominated_sort(Y);
    REQUIRE(p.size() == 3);
    CHECK(p.layers[0] == IndexList{0, 3, 4});
    CHECK(p.layers[1] == IndexList{1, 2});
    CHECK(p.layers[2] == IndexList{5});
    CHECK(p.rank == std::vector<std::size_t>{0, 1, 1, 0, 0, 2});
}

TEST_CASE("single point and identical points")
{
    Matrix one(1, 2);
    one << 0.3, 0.4;
    CHECK(nd_filter(one) == IndexList{0});

    Matrix same = Matrix::Constant(7, 3, 0.5);
    auto p = non_dominated_sort(same);
    REQUIRE(p.size() == 1);
    CHECK(p.front().size() == 7);
    CHECK(nd_filter(same).size() == 7);
}

TEST_CASE("strict chain gives one point per layer")
{
    Matrix Y(6, 3);
    for (int i = 0; i < 6; ++i) {
        Y.row(5 - i).setConstant(i);
    }
    auto p = non_dominated_sort(Y);
    REQUIRE(p.size() == 6);
    for (std::size_t l = 0; l < 6; ++l) {
        CHECK(p.layers[l] == IndexList{5 - l});
    }
}

TEST_CASE("nd_filter matches the pairwise oracle")
{
    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 20; ++rep) {
        auto pts = testing::random_points(gen, 30, 3);
        auto layers = oracle::peel_layers(pts);
        CHECK(nd_filter(to_matrix(pts)) == layers.front());
    }
}

TEST_CASE("non_dominated_sort matches peeling and the layer invariants hold")
{
    std::mt19937_64 gen(12);
    for (int rep = 0; rep < 20; ++rep) {
        auto pts = testing::random_points(gen, 50, 2);
        // Discretise so that ties and duplicates occur.
        for (auto& p : pts) {
            for (auto& x : p) {
                x = std::round(x * 8.0);
            }
        }
        auto Y = to_matrix(pts);
        auto p = non_dominated_sort(Y);
        auto expected = oracle::peel_layers(pts);
        REQUIRE(p.size() == expected.size());
        for (std::size_t l = 0; l < p.size(); ++l) {
            CHECK(p.layers[l] == expected[l]);
        }
        for (std::size_t l = 1; l < p.size(); ++l) {
            for (auto i : p.layers[l]) {
                bool covered = std::any_of(p.layers[l - 1].begin(), p.layers[l - 1].end(),
                        [&](std::size_t j) { return oracle::dominates(pts[j], pts[i]); });
                CHECK(covered);
            }
        }
    }
}

TEST_CASE("layer assignment follows a row permutation")
{
    std::mt19937_64 gen(13);
    auto pts = testing::random_points(gen, 40, 3);
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), gen);
    oracle::Points shuffled;
    for (auto i : perm) {
        shuffled.push_back(pts[i]);
    }
    auto a = non_dominated_sort(to_matrix(pts));
    auto b = non_dominated_sort(to_matrix(shuffled));
    for (std::size_t i = 0; i < perm.size(); ++i) {
        CHECK(b.rank[i] == a.rank[perm[i]]);
    }
}

TEST_CASE("layer CSV is one-based")
{
    auto p = non_dominated_sort(to_matrix(oracle::two_space_objective()));
    CHECK(layers_to_csv(p) == "index,layer\n0,1\n1,2\n2,2\n3,1\n4,1\n5,3\n");
}

}
