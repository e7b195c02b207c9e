#ifndef MOELA_FEATURES_GRAPH_HPP
#define MOELA_FEATURES_GRAPH_HPP

#include "moela/feature_list.hpp"
#include "moela/graph.hpp"
#include "moela/sampling.hpp"

#include <array>

namespace moela {

// Per-graph aggregates. The component block is only emitted for 1-NN graphs
// and `longest_path` only for MSTs.
struct GraphStats {
    double weights_min = 0.0;
    double weights_max = 0.0;
    double weights_avg = 0.0;
    double closeness_centrality_min = 0.0;
    double closeness_centrality_max = 0.0;
    double closeness_centrality_avg = 0.0;
    double angle_min = 0.0;
    double angle_max = 0.0;
    double angle_avg = 0.0;
    double num_components = 1.0;
    double nodes_per_component_min = 1.0;
    double nodes_per_component_max = 1.0;
    double nodes_per_component_avg = 1.0;
    double longest_path_min = 0.0;
    double longest_path_max = 0.0;
    double longest_path_avg = 0.0;
    double longest_path = 0.0;

    FeatureList to_features(GraphKind kind) const;
};

inline constexpr std::array<Space, 4> graph_spaces{Space::D, Space::DtoO, Space::O, Space::OtoD};

struct GraphFeatures {
    std::array<GraphStats, 4> mst;  // indexed like graph_spaces
    std::array<GraphStats, 4> nn;
    GraphStats mst_ratio;           // D graph / O graph
    GraphStats nn_ratio;

    FeatureList to_features() const;
};

GraphStats compute_graph_stats(const SpatialGraph& graph);

// a / b with 0/0 -> 1 and x/0 -> 0.
double safe_ratio(double a, double b) noexcept;
GraphStats ratio_stats(const GraphStats& d, const GraphStats& o);

// Builds MST and 1-NN graphs over L1 in decision and objective space plus
// their edge transfers, and aggregates them.
GraphFeatures compute_graph_features(const EvaluatedSample& sample, const IndexList& front);

} // namespace moela

#endif
