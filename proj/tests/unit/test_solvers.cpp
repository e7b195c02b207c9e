#include "moela/dominance.hpp"
#include "moela/indicators.hpp"
#include "moela/solvers.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace moela;

namespace {

bool inside_box(const ProblemSpec& spec, const Matrix& X)
{
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            auto c = static_cast<std::size_t>(j);
            if (X(i, j) < spec.box_lower[c] || X(i, j) > spec.box_upper[c]) {
                return false;
            }
        }
    }
    return true;
}

}

TEST_SUITE("solvers") {

TEST_CASE("budget table")
{
    CHECK(budget_for(2, 2) == 3000);
    CHECK(budget_for(2, 5) == 8000);
    CHECK(budget_for(2, 10) == 15000);
    CHECK(budget_for(2, 20) == 20000);
    CHECK(budget_for(3, 2) == 7000);
    CHECK(budget_for(3, 5) == 25000);
    CHECK(budget_for(3, 10) == 50000);
    CHECK(budget_for(3, 20) == 100000);
    CHECK_THROWS_AS(budget_for(2, 3), Error);
    CHECK(default_population(2) == 100);
    CHECK(default_population(3) == 105);
}

TEST_CASE("solver names")
{
    CHECK(solver_from_string("nsga2") == SolverId::NSGA2);
    CHECK(solver_from_string("SMS-EMOA") == SolverId::SMSEMOA);
    CHECK(solver_from_string("MOEA/D") == SolverId::MOEAD);
    CHECK(std::string(to_string(SolverId::SMSEMOA)) == "SMSEMOA");
    CHECK_THROWS_AS(solver_from_string("cmaes"), Error);
}

TEST_CASE("budget below the population size is a configuration error")
{
    Problem p(make_zdt(1, 5));
    for (auto s : all_solvers) {
        try {
            run_solver(s, p, 99, 0);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Config);
        }
    }
}

TEST_CASE("budget equal to the population returns the initial population")
{
    Problem p(make_zdt(2, 3));
    for (auto s : all_solvers) {
        auto run = run_solver(s, p, 100, 4);
        CHECK(run.eval_count == 100);
        CHECK(run.X.rows() == 100);
    }
}

TEST_CASE("runs are deterministic, stay in the box and respect the budget")
{
    for (const auto& spec : {make_zdt(4, 5), make_dtlz(1, 4, 3)}) {
        Problem p(spec);
        for (auto s : all_solvers) {
            CAPTURE(to_string(s));
            CAPTURE(spec.id);
            auto a = run_solver(s, p, 1234, 9);
            auto b = run_solver(s, p, 1234, 9);
            auto c = run_solver(s, p, 1234, 10);
            CHECK(a.X == b.X);
            CHECK(a.Y == b.Y);
            CHECK(a.X != c.X);
            CHECK(a.eval_count <= 1234);
            CHECK(a.eval_count > 1234 - a.population);
            CHECK(a.X.rows() == a.population);
            CHECK(inside_box(spec, a.X));
            for (Eigen::Index i = 0; i < a.X.rows(); ++i) {
                std::vector<double> x(a.X.row(i).begin(), a.X.row(i).end());
                auto y = p.evaluate(x);
                for (std::size_t k = 0; k < y.size(); ++k) {
                    CHECK(y[k] == a.Y(i, static_cast<Eigen::Index>(k)));
                }
            }
        }
    }
}

TEST_CASE("MOEA/D weights")
{
    auto w2 = moead_weights(2, 100);
    CHECK(w2.rows() == 100);
    auto w3 = moead_weights(3, 105);
    CHECK(w3.rows() == 105);
    for (Eigen::Index i = 0; i < w3.rows(); ++i) {
        CHECK(w3.row(i).sum() == doctest::Approx(1.0));
        CHECK(w3.row(i).minCoeff() >= 0.0);
    }
    CHECK(moead_weights(3, 100).rows() == 91);
}

TEST_CASE("Tchebycheff scalarisation")
{
    std::vector<double> f{3.0, 2.0};
    std::vector<double> w{0.5, 0.5};
    std::vector<double> z{1.0, 1.0};
    CHECK(tchebycheff(f, w, z) == doctest::Approx(1.0));
    std::vector<double> axis{1.0, 0.0};
    // A zero weight is floored, so the second objective still counts a little.
    CHECK(tchebycheff(f, axis, z) == doctest::Approx(2.0));
    CHECK(tchebycheff(std::vector<double>{1.0, 1e9}, axis, z) > 0.0);
}

TEST_CASE("crowding distance")
{
    auto Y = testing::to_matrix({{0, 4}, {1, 2}, {2, 1}, {4, 0}});
    auto cd = crowding_distance(Y, IndexList{0, 1, 2, 3});
    CHECK(std::isinf(cd[0]));
    CHECK(std::isinf(cd[3]));
    CHECK(cd[1] == doctest::Approx(2.0 / 4.0 + 3.0 / 4.0));
    CHECK(cd[2] == doctest::Approx(3.0 / 4.0 + 2.0 / 4.0));
}

TEST_CASE("SMS-EMOA never loses hypervolume")
{
    Problem p(make_zdt(1, 5));
    std::vector<Matrix> snapshots;
    SolverConfig cfg;
    cfg.observer = [&](const SolverState& s) { snapshots.push_back(s.Y); };
    auto run = run_solver(SolverId::SMSEMOA, p, 1500, 3, cfg);
    RefPoint ref{run.hyperparameters.at("hv_reference").get<std::vector<double>>()};
    REQUIRE(snapshots.size() == 1 + (1500 - 100));
    double prev = hv(snapshots.front(), ref);
    for (std::size_t t = 1; t < snapshots.size(); ++t) {
        double now = hv(snapshots[t], ref);
        REQUIRE(now >= prev - 1e-12);
        prev = now;
    }
}

TEST_CASE("NSGA-II keeps every non-dominated point it has seen")
{
    Problem p(make_zdt(3, 5));
    std::vector<Matrix> fronts;
    SolverConfig cfg;
    cfg.observer = [&](const SolverState& s) { fronts.push_back(select_rows(s.Y, nd_filter(s.Y))); };
    run_solver(SolverId::NSGA2, p, 3000, 5, cfg);
    REQUIRE(fronts.size() > 20);
    for (std::size_t t = 1; t < fronts.size(); ++t) {
        auto prev = testing::to_points(fronts[t - 1]);
        auto now = testing::to_points(fronts[t]);
        bool ok = true;
        for (const auto& a : now) {
            for (const auto& b : prev) {
                ok = ok && !oracle::dominates(b, a);
            }
        }
        CAPTURE(t);
        REQUIRE(ok);
    }
}

TEST_CASE("MOEA/D subproblem values never increase")
{
    Problem p(make_dtlz(2, 4, 3));
    auto w = moead_weights(3, 105);
    Matrix prev;
    int steps = 0;
    SolverConfig cfg;
    cfg.observer = [&](const SolverState& s) {
        if (prev.size() > 0) {
            for (Eigen::Index j = 0; j < s.Y.rows(); ++j) {
                std::vector<double> wj(w.row(j).begin(), w.row(j).end());
                std::vector<double> now(s.Y.row(j).begin(), s.Y.row(j).end());
                std::vector<double> before(prev.row(j).begin(), prev.row(j).end());
                REQUIRE(tchebycheff(now, wj, s.ideal) <= tchebycheff(before, wj, s.ideal));
            }
        }
        prev = s.Y;
        ++steps;
    };
    run_solver(SolverId::MOEAD, p, 800, 2, cfg);
    CHECK(steps == 1 + (800 - 105));
}

TEST_CASE("run files round-trip")
{
    Problem p(make_zdt(1, 3));
    auto run = run_solver(SolverId::MOEAD, p, 300, 11);
    run.sample_size = 50;
    CHECK(run_stem(run) == "moead__zdt1-d3__seed11");
    testing::TempDir dir("runs");
    write_run(dir.path(), run);
    CHECK(std::filesystem::exists(dir / (run_stem(run) + ".json")));
    auto back = read_run(dir / (run_stem(run) + ".csv"));
    CHECK(back.solver == run.solver);
    CHECK(back.problem_id == run.problem_id);
    CHECK(back.seed == run.seed);
    CHECK(back.budget == run.budget);
    CHECK(back.eval_count == run.eval_count);
    CHECK(back.sample_size == 50);
    CHECK(back.X == run.X);
    CHECK(back.Y == run.Y);
    CHECK(back.hyperparameters == run.hyperparameters);
}

}
