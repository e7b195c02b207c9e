#include "moela/features_gradient.hpp"

#include "moela/graph.hpp"
#include "moela/statistics.hpp"

#include <algorithm>
#include <cmath>

namespace moela {

FeatureList GradientFeatures::to_features() const
{
    FeatureList out;
    out.add("mo_gradient_min", mo_gradient_min);
    out.add("mo_gradient_max", mo_gradient_max);
    out.add("mo_gradient_avg", mo_gradient_avg);
    out.add("mo_gradient_std", mo_gradient_std);
    return out;
}

std::vector<double> mo_gradient_vector(const EvaluatedSample& sample, const IndexList& front)
{
    std::vector<double> g;
    if (front.size() < 2) {
        return g;
    }
    Matrix X = select_rows(sample.X, front);
    Matrix Y = select_rows(sample.Y, front);
    auto const tree = build_mst(Y, Space::O);
    auto const d = X.cols();
    auto const m = Y.cols();
    g.reserve(tree.edges.size() * static_cast<std::size_t>(d));
    for (auto const& e : tree.edges) {
        auto const i = static_cast<Eigen::Index>(e.a);
        auto const j = static_cast<Eigen::Index>(e.b);
        for (Eigen::Index p = 0; p < d; ++p) {
            double const dx = std::abs(X(i, p) - X(j, p));
            double entry = 0.0;
            if (dx >= gradient_epsilon) {
                for (Eigen::Index k = 0; k < m; ++k) {
                    entry += std::abs(Y(i, k) - Y(j, k)) / dx;
                }
                entry /= static_cast<double>(m);
            }
            g.push_back(entry);
        }
    }
    return g;
}

GradientFeatures compute_gradient_features(const EvaluatedSample& sample, const IndexList& front)
{
    auto g = mo_gradient_vector(sample, front);
    GradientFeatures f;
    if (g.empty()) {
        return f;
    }
    f.mo_gradient_min = *std::min_element(g.begin(), g.end());
    f.mo_gradient_max = *std::max_element(g.begin(), g.end());
    f.mo_gradient_avg = stats::mean(g);
    f.mo_gradient_std = stats::population_std(g);
    return f;
}

} // namespace moela
