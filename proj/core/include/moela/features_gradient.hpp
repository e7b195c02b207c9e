#ifndef MOELA_FEATURES_GRADIENT_HPP
#define MOELA_FEATURES_GRADIENT_HPP

#include "moela/feature_list.hpp"
#include "moela/sampling.hpp"

namespace moela {

// Slopes |dy_k| / |dx_p| with |dx_p| below this threshold are recorded as 0.
inline constexpr double gradient_epsilon = 1e-12;

struct GradientFeatures {
    double mo_gradient_min = 0.0;
    double mo_gradient_max = 0.0;
    double mo_gradient_avg = 0.0;
    double mo_gradient_std = 0.0;

    FeatureList to_features() const;
};

// Objective-averaged absolute per-variable slopes along the edges of the
// objective-space MST of L1 (edge-major, variable-minor order).
std::vector<double> mo_gradient_vector(const EvaluatedSample& sample, const IndexList& front);

GradientFeatures compute_gradient_features(const EvaluatedSample& sample, const IndexList& front);

} // namespace moela

#endif
