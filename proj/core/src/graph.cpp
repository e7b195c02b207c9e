#include "moela/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

namespace moela {

const char* to_string(GraphKind kind) noexcept
{
    return kind == GraphKind::MST ? "mst" : "nn";
}

const char* to_string(Space space) noexcept
{
    switch (space) {
    case Space::D: return "D";
    case Space::O: return "O";
    case Space::DtoO: return "D_to_O";
    case Space::OtoD: return "O_to_D";
    }
    return "?";
}

namespace {
    double distance(const Matrix& p, std::size_t i, std::size_t j)
    {
        return (p.row(static_cast<Eigen::Index>(i)) - p.row(static_cast<Eigen::Index>(j))).norm();
    }

    Edge make_edge(std::size_t i, std::size_t j) { return i < j ? Edge{i, j} : Edge{j, i}; }
} // namespace

double SpatialGraph::total_weight() const
{
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

std::vector<std::vector<std::pair<std::size_t, double>>> SpatialGraph::adjacency() const
{
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(vertex_count());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].a].emplace_back(edges[e].b, weights[e]);
        adj[edges[e].b].emplace_back(edges[e].a, weights[e]);
    }
    return adj;
}

SpatialGraph build_mst(const Matrix& points, Space space)
{
    SpatialGraph g;
    g.points = points;
    g.kind = GraphKind::MST;
    g.space = space;
    auto const n = static_cast<std::size_t>(points.rows());
    if (n < 2) {
        return g;
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, inf);
    std::vector<std::size_t> parent(n, 0);
    in_tree[0] = true;
    for (std::size_t v = 1; v < n; ++v) {
        best[v] = distance(points, 0, v);
    }
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t pick = n;
        auto key = [&](std::size_t v) {
            auto e = make_edge(parent[v], v);
            return std::make_tuple(best[v], e.a, e.b);
        };
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && (pick == n || key(v) < key(pick))) {
                pick = v;
            }
        }
        in_tree[pick] = true;
        g.edges.push_back(make_edge(parent[pick], pick));
        g.weights.push_back(best[pick]);
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) {
                continue;
            }
            double const w = distance(points, pick, v);
            auto const candidate = make_edge(pick, v);
            auto const current = make_edge(parent[v], v);
            if (std::tie(w, candidate.a, candidate.b) < std::tie(best[v], current.a, current.b)) {
                best[v] = w;
                parent[v] = pick;
            }
        }
    }
    // Canonical edge order keeps downstream aggregates independent of Prim's visit order.
    std::vector<std::size_t> order(g.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return g.edges[x] < g.edges[y]; });
    SpatialGraph sorted = g;
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.edges[i] = g.edges[order[i]];
        sorted.weights[i] = g.weights[order[i]];
    }
    return sorted;
}

SpatialGraph build_1nn(const Matrix& points, Space space)
{
    SpatialGraph g;
    g.points = points;
    g.kind = GraphKind::NN1;
    g.space = space;
    auto const n = static_cast<std::size_t>(points.rows());
    if (n < 2) {
        return g;
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t nn = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            double const d = distance(points, i, j);
            if (d < best) {
                best = d;
                nn = j;
            }
        }
        edges.push_back(make_edge(i, nn));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto const& e : edges) {
        g.edges.push_back(e);
        g.weights.push_back(distance(points, e.a, e.b));
    }
    return g;
}

SpatialGraph transfer(const SpatialGraph& graph, const Matrix& target_points)
{
    if (target_points.rows() != graph.points.rows()) {
        throw Error(ErrorCode::Contract, "transfer: target point count differs from graph vertex count");
    }
    SpatialGraph out = graph;
    out.points = target_points;
    for (std::size_t e = 0; e < out.edges.size(); ++e) {
        out.weights[e] = distance(target_points, out.edges[e].a, out.edges[e].b);
    }
    switch (graph.space) {
    case Space::D: out.space = Space::DtoO; break;
    case Space::O: out.space = Space::OtoD; break;
    case Space::DtoO: out.space = Space::D; break;
    case Space::OtoD: out.space = Space::O; break;
    }
    return out;
}

std::vector<IndexList> connected_components(const SpatialGraph& graph)
{
    auto const n = graph.vertex_count();
    std::vector<std::size_t> label(n, n);
    auto adj = graph.adjacency();
    std::vector<IndexList> comps;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] != n) {
            continue;
        }
        IndexList comp;
        std::vector<std::size_t> stack{s};
        label[s] = comps.size();
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (auto [u, w] : adj[v]) {
                if (label[u] == n) {
                    label[u] = comps.size();
                    stack.push_back(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<double> shortest_paths(const SpatialGraph& graph, std::size_t source)
{
    auto adj = graph.adjacency();
    std::vector<double> dist(graph.vertex_count(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v]) {
            continue;
        }
        for (auto [u, w] : adj[v]) {
            if (d + w < dist[u]) {
                dist[u] = d + w;
                queue.emplace(dist[u], u);
            }
        }
    }
    return dist;
}

} // namespace moela
