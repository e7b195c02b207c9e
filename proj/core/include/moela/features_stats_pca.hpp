#ifndef MOELA_FEATURES_STATS_PCA_HPP
#define MOELA_FEATURES_STATS_PCA_HPP

#include "moela/feature_list.hpp"
#include "moela/sampling.hpp"

#include <optional>

namespace moela {

// Descriptive statistics of the objective vectors in L1.
struct StatsFeatures {
    std::vector<double> min;
    std::vector<double> max;
    std::vector<double> avg;
    std::vector<double> std;
    // Bi-objective only.
    std::optional<double> obj_std_diff;
    std::optional<double> corr_obj;
    std::optional<double> spearman_corr_obj;

    FeatureList to_features() const;
};

struct PcaSummary {
    double min = 0.0;
    double max = 0.0;
    double avg = 0.0;
};

// Explained-variance ratios of the principal components of the decision
// (X), objective (Y) and concatenated (X_Y) designs of L1.
struct PcaFeatures {
    PcaSummary x;
    PcaSummary y;
    PcaSummary xy;

    FeatureList to_features() const;
};

StatsFeatures compute_stats_features(const EvaluatedSample& sample, const IndexList& front);
PcaFeatures compute_pca_features(const EvaluatedSample& sample, const IndexList& front);

// Degenerate designs (one row or zero total variance) give 1/cols everywhere.
PcaSummary explained_variance_summary(const Matrix& design);

} // namespace moela

#endif
