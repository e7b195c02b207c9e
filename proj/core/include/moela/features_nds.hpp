#ifndef MOELA_FEATURES_NDS_HPP
#define MOELA_FEATURES_NDS_HPP

#include "moela/dominance.hpp"
#include "moela/feature_list.hpp"
#include "moela/sampling.hpp"

#include <array>

namespace moela {

inline constexpr int nds_layer_count = 5;
inline constexpr double nds_hv_reference = 1.1;
inline constexpr double sp_theta = 1.0;

struct NdsFeatures {
    int no_non_dom_points = 0;
    int max_rank = 0;
    double avg_points_per_layer = 0.0;
    std::array<double, nds_layer_count> hv_dom_layer{};  // 0 for missing layers
    std::array<double, nds_layer_count> sp_dom_layer{};
    std::array<double, 4> r{};                           // R^2 for degrees 1..4

    FeatureList to_features() const;
};

NdsFeatures compute_nds_features(const EvaluatedSample& sample, const LayerPartition& layers);
NdsFeatures compute_nds_features(const EvaluatedSample& sample);

} // namespace moela

#endif
