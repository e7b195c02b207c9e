#ifndef MOELA_STATISTICS_HPP
#define MOELA_STATISTICS_HPP

#include "moela/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace moela::stats {

double mean(std::span<const double> v);
// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_std(std::span<const double> v);
// Population standard deviation (n denominator); 0 for an empty input.
double population_std(std::span<const double> v);

// Pearson correlation; nullopt when either side has zero variance or n < 2.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);
// Ranks starting at 1; ties receive the average of their positions.
std::vector<double> average_ranks(std::span<const double> v);
std::optional<double> spearman(std::span<const double> a, std::span<const double> b);

// Eigenvalues of the covariance of the column-centered design, descending,
// clipped at zero.
std::vector<double> covariance_eigenvalues(const Matrix& design);

} // namespace moela::stats

#endif
