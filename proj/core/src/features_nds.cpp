#include "moela/features_nds.hpp"

#include "moela/indicators.hpp"

namespace moela {

FeatureList NdsFeatures::to_features() const
{
    FeatureList out;
    out.add("no_non_dom_points", no_non_dom_points);
    out.add("max_rank", max_rank);
    out.add("avg_points_per_layer", avg_points_per_layer);
    for (int i = 0; i < nds_layer_count; ++i) {
        out.add("hv_dom_layer_" + std::to_string(i + 1), hv_dom_layer[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < nds_layer_count; ++i) {
        out.add("sp_dom_layer_" + std::to_string(i + 1), sp_dom_layer[static_cast<std::size_t>(i)]);
    }
    for (int p = 1; p <= 4; ++p) {
        out.add("r" + std::to_string(p), r[static_cast<std::size_t>(p - 1)]);
    }
    return out;
}

NdsFeatures compute_nds_features(const EvaluatedSample& sample, const LayerPartition& layers)
{
    if (sample.size() < 1) {
        throw Error(ErrorCode::Contract, "NDS features need a non-empty sample");
    }
    NdsFeatures f;
    auto const h = layers.size();
    f.no_non_dom_points = static_cast<int>(layers.front().size());
    f.max_rank = static_cast<int>(h);
    f.avg_points_per_layer = static_cast<double>(sample.size()) / static_cast<double>(h);

    auto const ref = RefPoint::uniform(static_cast<std::size_t>(sample.n_objectives()), nds_hv_reference);
    std::vector<double> hv_all(h);
    for (std::size_t i = 0; i < h; ++i) {
        hv_all[i] = hv(select_rows(sample.Y, layers.layers[i]), ref);
    }
    for (std::size_t i = 0; i < std::min<std::size_t>(h, nds_layer_count); ++i) {
        f.hv_dom_layer[i] = hv_all[i];
        f.sp_dom_layer[i] = solow_polasky(select_rows(sample.X, layers.layers[i]), sp_theta);
    }
    for (int p = 1; p <= 4; ++p) {
        f.r[static_cast<std::size_t>(p - 1)] = poly_r2(hv_all, p);
    }
    return f;
}

NdsFeatures compute_nds_features(const EvaluatedSample& sample)
{
    return compute_nds_features(sample, non_dominated_sort(sample.Y));
}

} // namespace moela
