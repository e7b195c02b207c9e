#ifndef MOELA_SOLVERS_HPP
#define MOELA_SOLVERS_HPP

#include "moela/io.hpp"
#include "moela/problems.hpp"
#include "moela/types.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>

namespace moela {

// Declaration order is the tie-break order used for labels.
enum class SolverId { NSGA2, SMSEMOA, MOEAD };
inline constexpr std::array all_solvers{SolverId::NSGA2, SolverId::SMSEMOA, SolverId::MOEAD};

const char* to_string(SolverId id) noexcept;
SolverId solver_from_string(std::string_view text);

// Evaluations per solver run, keyed by (m, d).
int budget_for(int n_objectives, int dim);

struct SolverState {
    const Matrix& X;
    const Matrix& Y;
    int evaluations;
    std::span<const double> ideal;  // MOEA/D only
};

struct SolverConfig {
    int population = 0;        // 0: 100 for m=2, 105 for m=3
    double sbx_eta = 15.0;
    double sbx_prob = 0.9;
    double mutation_eta = 20.0;
    double mutation_prob = -1.0;  // negative: 1/d
    int neighborhood = 20;     // MOEA/D
    // Called after every generation (NSGA-II) or steady-state step (SMS-EMOA, MOEA/D).
    std::function<void(const SolverState&)> observer;
};

int default_population(int n_objectives);

struct SolverRun {
    SolverId solver = SolverId::NSGA2;
    std::string problem_id;
    std::uint64_t seed = 0;
    int budget = 0;
    int population = 0;
    Matrix X;  // raw decision vectors of the final population
    Matrix Y;  // raw objective vectors
    int eval_count = 0;
    int sample_size = 0;  // evaluations reserved for feature sampling (already subtracted from budget)
    nlohmann::json hyperparameters;
};

// Deterministic per (solver, problem id, budget, seed). Throws Error(Config)
// when the budget cannot pay for the initial population.
SolverRun run_solver(SolverId solver, const Problem& problem, int budget, std::uint64_t seed,
        const SolverConfig& config = {});

// MOEA/D weight vectors: evenly spaced for m=2, simplex lattice for m=3
// (the largest lattice with at most `population` points).
Matrix moead_weights(int n_objectives, int population);
double tchebycheff(std::span<const double> f, std::span<const double> weight, std::span<const double> ideal);

// Fast non-dominated sorting helper shared by the solvers: crowding distance of one front.
std::vector<double> crowding_distance(const Matrix& Y, const IndexList& front);

// Run files: `<stem>.csv` (x1..xd,y1..ym raw) and `<stem>.json` manifest.
std::string run_stem(const SolverRun& run);
void write_run(const std::filesystem::path& dir, const SolverRun& run);
SolverRun read_run(const std::filesystem::path& csv_path);

} // namespace moela

#endif
