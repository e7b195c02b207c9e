#ifndef MOELA_SAMPLING_HPP
#define MOELA_SAMPLING_HPP

#include "moela/problems.hpp"
#include "moela/types.hpp"
#include "moela/io.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace moela {

// The evaluated sample S: index-aligned decision and objective rows, both
// in original coordinates and scaled (decision space into [0,1] via the box,
// objectives min-max scaled on the sample itself).
struct EvaluatedSample {
    std::string problem_id;
    std::uint64_t seed = 0;
    Matrix X;      // N x d, scaled
    Matrix Y;      // N x m, scaled
    Matrix X_raw;  // N x d
    Matrix Y_raw;  // N x m
    Vector y_min;
    Vector y_max;
    std::vector<double> box_lower;
    std::vector<double> box_upper;

    Eigen::Index size() const noexcept { return X.rows(); }
    Eigen::Index dim() const noexcept { return X.cols(); }
    Eigen::Index n_objectives() const noexcept { return Y.cols(); }
};

// Latin hypercube in [0,1]^d: each of the n strata [i/n, (i+1)/n) of every
// coordinate holds exactly one point, placed uniformly inside its stratum.
Matrix lhs(int n, int d, std::uint64_t seed);

// Column-wise min-max scaling; constant columns scale to all zeros.
Matrix minmax_scale(const Matrix& Y, Vector& y_min, Vector& y_max);

EvaluatedSample draw_sample(const Problem& problem, int n, std::uint64_t seed);
EvaluatedSample draw_sample(const ProblemSpec& spec, int n, std::uint64_t seed);

// Builds a sample directly from already-scaled matrices (tests, hand-made fixtures).
EvaluatedSample sample_from_scaled(std::string problem_id, Matrix X, Matrix Y);

// Sample CSV (`x1..xd,y1..ym`, scaled values) plus sidecar JSON manifest.
io::CsvTable sample_to_csv(const EvaluatedSample& sample);
nlohmann::json sample_manifest(const EvaluatedSample& sample);
void write_sample(const std::filesystem::path& csv_path, const EvaluatedSample& sample);
// Reads a sample CSV and its manifest (`<csv>.json`). Raw coordinates are
// reconstructed from the box and the scaling anchors.
EvaluatedSample read_sample(const std::filesystem::path& csv_path);
std::filesystem::path manifest_path(const std::filesystem::path& csv_path);

} // namespace moela

#endif
