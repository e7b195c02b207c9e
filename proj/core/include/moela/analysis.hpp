#ifndef MOELA_ANALYSIS_HPP
#define MOELA_ANALYSIS_HPP

#include "moela/feature_pipeline.hpp"
#include "moela/io.hpp"
#include "moela/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace moela {

// Columns used by the analyses: every column except the meta.* ones, or the
// given subset (which must exist in the table).
std::vector<std::size_t> analysis_columns(const FeatureTable& table,
        const std::optional<std::vector<std::string>>& subset);

struct StabilityRow {
    std::string problem_id;
    int dim = 0;
    int sample_size = 0;
    std::size_t seeds = 0;
    std::size_t pairs = 0;          // correlations that entered the mean
    std::size_t skipped_pairs = 0;  // a vector was constant
    double mean_corr = 0.0;         // NaN when every pair was skipped
};

struct StabilityReport {
    std::vector<StabilityRow> rows;
    double mean = 0.0;  // mean of the row means
};

// Groups rows by (problem id, dim, sample size) and averages the Pearson
// correlation of every pair of seed feature vectors inside a group.
StabilityReport stability(const FeatureTable& table,
        const std::optional<std::vector<std::string>>& subset = std::nullopt);
io::CsvTable stability_to_csv(const StabilityReport& report);

struct CorrelationMatrix {
    std::vector<std::string> names;     // non-constant columns
    std::vector<std::string> constant;  // excluded
    Matrix corr;
    double mean_abs_offdiag = 0.0;
};

CorrelationMatrix feature_correlation(const FeatureTable& table,
        const std::optional<std::vector<std::string>>& subset = std::nullopt);
io::CsvTable correlation_to_csv(const CorrelationMatrix& c);

// Greedy redundancy filter: starts from the column with the smallest mean
// absolute correlation and repeatedly adds the column whose largest absolute
// correlation with the chosen ones is smallest.
std::vector<std::string> decorrelated_subset(const FeatureTable& table, std::size_t count);

// First two principal components of the z-scored non-constant columns. Each
// component is oriented so that its largest-magnitude loading is positive.
// Throws Error(Degenerate) with fewer than two non-constant columns.
Matrix embed_2d(const FeatureTable& table, const std::optional<std::vector<std::string>>& subset = std::nullopt);
io::CsvTable embedding_to_csv(const FeatureTable& table, const Matrix& embedding);

} // namespace moela

#endif
