#include "moela/indicators.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace moela;
using testing::to_matrix;

TEST_SUITE("indicators") {

TEST_CASE("hypervolume of hand-computed sets")
{
    auto ref = RefPoint::uniform(2, 1.1);
    CHECK(hv(to_matrix({{0.5, 0.5}}), ref) == doctest::Approx(0.36).epsilon(1e-12));
    // 0.27 + 0.27 - 0.09
    CHECK(std::abs(hv(to_matrix({{0.2, 0.8}, {0.8, 0.2}}), ref) - 0.45) < 1e-12);
    CHECK(hv(Matrix(0, 2), ref) == 0.0);
    // A point on or beyond the reference adds nothing.
    CHECK(hv(to_matrix({{1.1, 0.0}, {0.0, 1.2}}), ref) == 0.0);
    CHECK(std::abs(hv(to_matrix({{0.5, 0.5}, {1.1, 0.0}}), ref) - 0.36) < 1e-12);
}

TEST_CASE("hypervolume agrees with inclusion-exclusion")
{
    std::mt19937_64 gen(21);
    for (std::size_t m : {2u, 3u}) {
        for (int rep = 0; rep < 40; ++rep) {
            auto pts = testing::random_points(gen, 1 + static_cast<std::size_t>(rep % 10), m, 0.0, 1.2);
            oracle::Point r(m, 1.1);
            CHECK(std::abs(hv(to_matrix(pts), RefPoint{r}) - oracle::hv_inclusion_exclusion(pts, r)) < 1e-12);
        }
    }
}

TEST_CASE("three-objective hypervolume agrees with Monte Carlo")
{
    std::mt19937_64 gen(22);
    auto pts = testing::random_points(gen, 20, 3);
    oracle::Point r(3, 1.1);
    double mc = oracle::hv_monte_carlo(pts, r, 1'000'000, 5);
    CHECK(std::abs(hv(to_matrix(pts), RefPoint{r}) - mc) < 1e-2);
}

TEST_CASE("hypervolume is unsupported beyond three objectives")
{
    try {
        (void)hv(Matrix::Zero(2, 4), RefPoint::uniform(4, 1.1));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unsupported);
    }
}

TEST_CASE("hypervolume is monotone and ignores dominated points")
{
    std::mt19937_64 gen(23);
    for (std::size_t m : {2u, 3u}) {
        auto ref = RefPoint::uniform(m, 1.1);
        auto pts = testing::random_points(gen, 15, m);
        double base = hv(to_matrix(pts), ref);
        auto more = pts;
        more.push_back(testing::random_points(gen, 1, m).front());
        CHECK(hv(to_matrix(more), ref) >= base - 1e-15);

        auto dominated = pts;
        oracle::Point worse = pts[0];
        for (auto& x : worse) {
            x += 0.01;
        }
        dominated.push_back(worse);
        CHECK(std::abs(hv(to_matrix(dominated), ref) - base) < 1e-12);
    }
}

TEST_CASE("contributions equal leave-one-out differences")
{
    std::mt19937_64 gen(24);
    for (std::size_t m : {2u, 3u}) {
        auto pts = testing::random_points(gen, 8, m);
        oracle::Point r(m, 1.1);
        auto contrib = hv_contributions(to_matrix(pts), RefPoint{r});
        double all = oracle::hv_inclusion_exclusion(pts, r);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto rest = pts;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            CHECK(std::abs(contrib[i] - (all - oracle::hv_inclusion_exclusion(rest, r))) < 1e-12);
        }
    }
}

TEST_CASE("Solow-Polasky closed forms")
{
    CHECK(solow_polasky(to_matrix({{0.3, 0.3}})) == doctest::Approx(1.0));
    // 2 / (1 + exp(-theta d)) with d = ln 2
    Matrix two(2, 1);
    two << 0.0, std::log(2.0);
    CHECK(solow_polasky(two, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(solow_polasky(to_matrix({{0.2, 0.7}, {0.2, 0.7}})) - 1.0) < 1e-6);
}

TEST_CASE("Solow-Polasky is permutation symmetric and grows with separation")
{
    std::mt19937_64 gen(25);
    auto pts = testing::random_points(gen, 12, 3);
    auto reversed = oracle::Points(pts.rbegin(), pts.rend());
    CHECK(solow_polasky(to_matrix(pts)) == doctest::Approx(solow_polasky(to_matrix(reversed))).epsilon(1e-10));
    double last = 0.0;
    for (double d : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        Matrix two(2, 1);
        two << 0.0, d;
        double sp = solow_polasky(two);
        CHECK(sp >= last);
        CHECK(sp <= 2.0);
        last = sp;
    }
}

TEST_CASE("polynomial R2")
{
    std::vector<double> linear{1.0, 0.8, 0.6, 0.4, 0.2};
    CHECK(poly_r2(linear, 1) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> constant{1, 1, 1, 1};
    for (int p = 1; p <= 4; ++p) {
        CHECK(poly_r2(constant, p) == 1.0);
    }
    CHECK(poly_r2(std::vector<double>{0.3, 0.1, 0.7}, 2) == 1.0);

    std::vector<double> decay{1.0, 0.5, 0.3, 0.2, 0.15, 0.12};
    CHECK(std::abs(poly_r2(decay, 1) - oracle::normal_equations_r2(decay, 1)) < 1e-9);
    CHECK(std::abs(poly_r2(decay, 2) - oracle::normal_equations_r2(decay, 2)) < 1e-9);
}

TEST_CASE("polynomial R2 does not decrease with the degree")
{
    std::mt19937_64 gen(26);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<double> y(12);
        for (auto& x : y) {
            x = u(gen);
        }
        for (int p = 1; p < 4; ++p) {
            CHECK(poly_r2(y, p + 1) >= poly_r2(y, p) - 1e-12);
        }
    }
}

}
