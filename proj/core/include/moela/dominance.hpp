#ifndef MOELA_DOMINANCE_HPP
#define MOELA_DOMINANCE_HPP

#include "moela/types.hpp"

#include <span>
#include <string>

namespace moela {

// Non-domination layers L1..Lh over row indices; indices inside a layer are ascending.
struct LayerPartition {
    std::vector<IndexList> layers;
    std::vector<std::size_t> rank;  // rank[i] = zero-based layer of row i

    std::size_t size() const noexcept { return layers.size(); }
    const IndexList& front() const { return layers.front(); }
};

// a <= b componentwise with at least one strict improvement (minimisation).
bool dominates(std::span<const double> a, std::span<const double> b);
bool dominates_rows(const Matrix& Y, Eigen::Index a, Eigen::Index b) noexcept;

// Rows not dominated by any other row. Duplicates of a non-dominated vector are all kept.
IndexList nd_filter(const Matrix& Y);

// Fast non-dominated sorting with domination counts, O(N^2 m).
LayerPartition non_dominated_sort(const Matrix& Y);

// `index,layer` CSV with one-based layers.
std::string layers_to_csv(const LayerPartition& partition);

} // namespace moela

#endif
