#ifndef MOELA_INDICATORS_HPP
#define MOELA_INDICATORS_HPP

#include "moela/types.hpp"

#include <span>
#include <vector>

namespace moela {

struct RefPoint {
    std::vector<double> r;

    static RefPoint uniform(std::size_t m, double value) { return {std::vector<double>(m, value)}; }
};

// Exact hypervolume for m in {2,3}: the measure of the union of the boxes
// [y, ref] over rows y that are strictly below ref in every objective.
// Unsupported dimensions throw Error(Unsupported).
double hv(const Matrix& Y, const RefPoint& ref);

// hv(Y) - hv(Y without row i) for every row.
std::vector<double> hv_contributions(const Matrix& Y, const RefPoint& ref);

// Solow-Polasky diversity 1' C^-1 1 with C_ij = exp(-theta |x_i - x_j|).
// A ridge of 1e-10 is added to the diagonal and grown tenfold (up to 1e-4)
// when the factorisation fails. The result is clipped to [1, k].
double solow_polasky(const Matrix& X, double theta = 1.0);

// R^2 of a least-squares polynomial of the given degree fitted to values
// against the positions 1..h. Returns 1 for a constant target or when the
// polynomial interpolates (h <= degree + 1). Not clipped below zero.
double poly_r2(std::span<const double> values, int degree);

} // namespace moela

#endif
