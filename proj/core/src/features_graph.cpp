#include "moela/features_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace moela {

namespace {
    struct Summary {
        double min = 0.0;
        double max = 0.0;
        double avg = 0.0;
    };

    Summary summarize(const std::vector<double>& v)
    {
        if (v.empty()) {
            return {};
        }
        Summary s{v.front(), v.front(), 0.0};
        double sum = 0.0;
        for (double x : v) {
            s.min = std::min(s.min, x);
            s.max = std::max(s.max, x);
            sum += x;
        }
        s.avg = sum / static_cast<double>(v.size());
        return s;
    }

    double angle_between(const Matrix& p, std::size_t center, std::size_t u, std::size_t w)
    {
        Vector a = (p.row(static_cast<Eigen::Index>(u)) - p.row(static_cast<Eigen::Index>(center))).transpose();
        Vector b = (p.row(static_cast<Eigen::Index>(w)) - p.row(static_cast<Eigen::Index>(center))).transpose();
        double const na = a.norm();
        double const nb = b.norm();
        if (na == 0.0 || nb == 0.0) {
            return 0.0;
        }
        return std::acos(std::clamp(a.dot(b) / (na * nb), -1.0, 1.0));
    }
} // namespace

FeatureList GraphStats::to_features(GraphKind kind) const
{
    FeatureList out;
    out.add("weights_min", weights_min);
    out.add("weights_max", weights_max);
    out.add("weights_avg", weights_avg);
    out.add("closeness_centrality_min", closeness_centrality_min);
    out.add("closeness_centrality_max", closeness_centrality_max);
    out.add("closeness_centrality_avg", closeness_centrality_avg);
    out.add("angle_min", angle_min);
    out.add("angle_max", angle_max);
    out.add("angle_avg", angle_avg);
    if (kind == GraphKind::NN1) {
        out.add("num_components", num_components);
        out.add("nodes_per_component_min", nodes_per_component_min);
        out.add("nodes_per_component_max", nodes_per_component_max);
        out.add("nodes_per_component_avg", nodes_per_component_avg);
        out.add("longest_path_min", longest_path_min);
        out.add("longest_path_max", longest_path_max);
        out.add("longest_path_avg", longest_path_avg);
    } else {
        out.add("longest_path", longest_path);
    }
    return out;
}

FeatureList GraphFeatures::to_features() const
{
    FeatureList out;
    for (auto kind : {GraphKind::MST, GraphKind::NN1}) {
        auto const& blocks = kind == GraphKind::MST ? mst : nn;
        std::string const k = to_string(kind);
        for (std::size_t s = 0; s < graph_spaces.size(); ++s) {
            out.append(blocks[s].to_features(kind), k + "." + to_string(graph_spaces[s]) + ".");
        }
        out.append((kind == GraphKind::MST ? mst_ratio : nn_ratio).to_features(kind), k + ".ratio.");
    }
    return out;
}

GraphStats compute_graph_stats(const SpatialGraph& graph)
{
    GraphStats s;
    auto const n = graph.vertex_count();
    if (n <= 1) {
        return s;
    }

    auto w = summarize(graph.weights);
    s.weights_min = w.min;
    s.weights_max = w.max;
    s.weights_avg = w.avg;

    std::vector<double> closeness(n, 0.0);
    std::vector<double> eccentricity(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        auto dist = shortest_paths(graph, v);
        std::size_t reach = 0;
        double total = 0.0;
        for (double d : dist) {
            if (std::isfinite(d)) {
                ++reach;
                total += d;
                eccentricity[v] = std::max(eccentricity[v], d);
            }
        }
        if (reach > 1 && total > 0.0) {
            closeness[v] = static_cast<double>(reach - 1) / total;
        }
    }
    auto c = summarize(closeness);
    s.closeness_centrality_min = c.min;
    s.closeness_centrality_max = c.max;
    s.closeness_centrality_avg = c.avg;

    std::vector<double> angles;
    auto adj = graph.adjacency();
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < adj[v].size(); ++i) {
            for (std::size_t j = i + 1; j < adj[v].size(); ++j) {
                angles.push_back(angle_between(graph.points, v, adj[v][i].first, adj[v][j].first));
            }
        }
    }
    auto a = summarize(angles);
    s.angle_min = a.min;
    s.angle_max = a.max;
    s.angle_avg = a.avg;

    auto comps = connected_components(graph);
    std::vector<double> sizes;
    std::vector<double> diameters;
    for (auto const& comp : comps) {
        sizes.push_back(static_cast<double>(comp.size()));
        double diameter = 0.0;
        for (auto v : comp) {
            diameter = std::max(diameter, eccentricity[v]);
        }
        diameters.push_back(diameter);
    }
    s.num_components = static_cast<double>(comps.size());
    auto sz = summarize(sizes);
    s.nodes_per_component_min = sz.min;
    s.nodes_per_component_max = sz.max;
    s.nodes_per_component_avg = sz.avg;
    auto dm = summarize(diameters);
    s.longest_path_min = dm.min;
    s.longest_path_max = dm.max;
    s.longest_path_avg = dm.avg;
    s.longest_path = dm.max;
    return s;
}

double safe_ratio(double a, double b) noexcept
{
    if (b == 0.0) {
        return a == 0.0 ? 1.0 : 0.0;
    }
    return a / b;
}

GraphStats ratio_stats(const GraphStats& d, const GraphStats& o)
{
    GraphStats r;
    r.weights_min = safe_ratio(d.weights_min, o.weights_min);
    r.weights_max = safe_ratio(d.weights_max, o.weights_max);
    r.weights_avg = safe_ratio(d.weights_avg, o.weights_avg);
    r.closeness_centrality_min = safe_ratio(d.closeness_centrality_min, o.closeness_centrality_min);
    r.closeness_centrality_max = safe_ratio(d.closeness_centrality_max, o.closeness_centrality_max);
    r.closeness_centrality_avg = safe_ratio(d.closeness_centrality_avg, o.closeness_centrality_avg);
    r.angle_min = safe_ratio(d.angle_min, o.angle_min);
    r.angle_max = safe_ratio(d.angle_max, o.angle_max);
    r.angle_avg = safe_ratio(d.angle_avg, o.angle_avg);
    r.num_components = safe_ratio(d.num_components, o.num_components);
    r.nodes_per_component_min = safe_ratio(d.nodes_per_component_min, o.nodes_per_component_min);
    r.nodes_per_component_max = safe_ratio(d.nodes_per_component_max, o.nodes_per_component_max);
    r.nodes_per_component_avg = safe_ratio(d.nodes_per_component_avg, o.nodes_per_component_avg);
    r.longest_path_min = safe_ratio(d.longest_path_min, o.longest_path_min);
    r.longest_path_max = safe_ratio(d.longest_path_max, o.longest_path_max);
    r.longest_path_avg = safe_ratio(d.longest_path_avg, o.longest_path_avg);
    r.longest_path = safe_ratio(d.longest_path, o.longest_path);
    return r;
}

GraphFeatures compute_graph_features(const EvaluatedSample& sample, const IndexList& front)
{
    if (front.empty()) {
        throw Error(ErrorCode::Contract, "graph features need a non-empty first layer");
    }
    GraphFeatures f;
    if (front.size() == 1) {
        // One node, no edges: distance and angle features stay 0, component counts 1,
        // and the ratio blocks follow the same pattern.
        return f;
    }
    Matrix X = select_rows(sample.X, front);
    Matrix Y = select_rows(sample.Y, front);

    auto mst_d = build_mst(X, Space::D);
    auto mst_o = build_mst(Y, Space::O);
    auto nn_d = build_1nn(X, Space::D);
    auto nn_o = build_1nn(Y, Space::O);

    f.mst = {compute_graph_stats(mst_d), compute_graph_stats(transfer(mst_d, Y)), compute_graph_stats(mst_o),
        compute_graph_stats(transfer(mst_o, X))};
    f.nn = {compute_graph_stats(nn_d), compute_graph_stats(transfer(nn_d, Y)), compute_graph_stats(nn_o),
        compute_graph_stats(transfer(nn_o, X))};
    f.mst_ratio = ratio_stats(f.mst[0], f.mst[2]);
    f.nn_ratio = ratio_stats(f.nn[0], f.nn[2]);
    return f;
}

} // namespace moela
