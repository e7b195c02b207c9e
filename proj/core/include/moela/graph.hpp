#ifndef MOELA_GRAPH_HPP
#define MOELA_GRAPH_HPP

#include "moela/types.hpp"

#include <utility>
#include <vector>

namespace moela {

enum class GraphKind { MST, NN1 };
// The space a graph's weights are measured in: native decision/objective
// space, or after edge transfer from one into the other.
enum class Space { D, O, DtoO, OtoD };

const char* to_string(GraphKind kind) noexcept;
const char* to_string(Space space) noexcept;

struct Edge {
    std::size_t a = 0;  // a < b
    std::size_t b = 0;

    auto operator<=>(const Edge&) const = default;
};

// Undirected weighted graph over the rows of `points`; weights are the
// Euclidean lengths of the edges in that coordinate space.
struct SpatialGraph {
    Matrix points;
    std::vector<Edge> edges;
    std::vector<double> weights;
    GraphKind kind = GraphKind::MST;
    Space space = Space::D;

    std::size_t vertex_count() const noexcept { return static_cast<std::size_t>(points.rows()); }
    double total_weight() const;
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency() const;
};

// Prim on the complete Euclidean graph; ties are broken by the
// lexicographic order of (weight, smaller endpoint, larger endpoint).
SpatialGraph build_mst(const Matrix& points, Space space = Space::D);

// Undirected nearest-neighbour graph: edge {i, nn(i)} for every i, with
// nearest-neighbour ties going to the smallest index. Requires k >= 2;
// a single point yields an empty graph.
SpatialGraph build_1nn(const Matrix& points, Space space = Space::D);

// Same edge set re-weighted by distances between the target points.
SpatialGraph transfer(const SpatialGraph& graph, const Matrix& target_points);

// Connected components as sorted vertex lists, ordered by smallest vertex.
std::vector<IndexList> connected_components(const SpatialGraph& graph);

// Weighted shortest-path distances from `source`; +inf for unreachable vertices.
std::vector<double> shortest_paths(const SpatialGraph& graph, std::size_t source);

} // namespace moela

#endif
