#include "moela/features_stats_pca.hpp"

#include "moela/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace moela {

FeatureList StatsFeatures::to_features() const
{
    FeatureList out;
    for (std::size_t k = 0; k < min.size(); ++k) {
        auto const suffix = "_" + std::to_string(k + 1);
        out.add("min" + suffix, min[k]);
        out.add("max" + suffix, max[k]);
        out.add("avg" + suffix, avg[k]);
        out.add("std" + suffix, std[k]);
    }
    if (obj_std_diff) {
        out.add("obj_std_diff", *obj_std_diff);
    }
    if (corr_obj) {
        out.add("corr_obj", *corr_obj);
    }
    if (spearman_corr_obj) {
        out.add("spearman_corr_obj", *spearman_corr_obj);
    }
    return out;
}

FeatureList PcaFeatures::to_features() const
{
    FeatureList out;
    auto emit = [&](const char* tag, const PcaSummary& s) {
        out.add(std::string("min_pc_") + tag, s.min);
        out.add(std::string("max_pc_") + tag, s.max);
        out.add(std::string("avg_pc_") + tag, s.avg);
    };
    emit("X", x);
    emit("Y", y);
    emit("X_Y", xy);
    return out;
}

StatsFeatures compute_stats_features(const EvaluatedSample& sample, const IndexList& front)
{
    if (front.empty()) {
        throw Error(ErrorCode::Contract, "descriptive statistics need a non-empty first layer");
    }
    auto const m = static_cast<std::size_t>(sample.n_objectives());
    std::vector<std::vector<double>> cols(m);
    for (std::size_t k = 0; k < m; ++k) {
        for (auto i : front) {
            cols[k].push_back(sample.Y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
        }
    }
    StatsFeatures f;
    for (auto const& c : cols) {
        f.min.push_back(*std::min_element(c.begin(), c.end()));
        f.max.push_back(*std::max_element(c.begin(), c.end()));
        f.avg.push_back(stats::mean(c));
        f.std.push_back(stats::sample_std(c));
    }
    if (m == 2) {
        f.obj_std_diff = std::abs(f.std[0] - f.std[1]);
        // A single point, or duplicates of one point, count as perfectly correlated.
        f.corr_obj = stats::pearson(cols[0], cols[1]).value_or(1.0);
        f.spearman_corr_obj = stats::spearman(cols[0], cols[1]).value_or(1.0);
    }
    return f;
}

PcaSummary explained_variance_summary(const Matrix& design)
{
    auto const p = design.cols();
    double const uniform = 1.0 / static_cast<double>(p);
    auto ev = stats::covariance_eigenvalues(design);
    double const total = std::accumulate(ev.begin(), ev.end(), 0.0);
    if (ev.empty() || !(total > 0.0)) {
        return {uniform, uniform, uniform};
    }
    PcaSummary s;
    s.max = ev.front() / total;
    s.min = ev.back() / total;
    s.avg = uniform;
    return s;
}

PcaFeatures compute_pca_features(const EvaluatedSample& sample, const IndexList& front)
{
    if (front.empty()) {
        throw Error(ErrorCode::Contract, "PCA features need a non-empty first layer");
    }
    Matrix X = select_rows(sample.X, front);
    Matrix Y = select_rows(sample.Y, front);
    Matrix XY(X.rows(), X.cols() + Y.cols());
    XY << X, Y;
    return {explained_variance_summary(X), explained_variance_summary(Y), explained_variance_summary(XY)};
}

} // namespace moela
