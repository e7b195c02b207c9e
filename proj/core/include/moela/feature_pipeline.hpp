#ifndef MOELA_FEATURE_PIPELINE_HPP
#define MOELA_FEATURE_PIPELINE_HPP

#include "moela/catalog.hpp"
#include "moela/feature_list.hpp"
#include "moela/io.hpp"
#include "moela/problems.hpp"
#include "moela/sampling.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace moela {

struct FeatureKey {
    std::string problem_id;
    int dim = 0;
    int n_objectives = 0;
    int sample_size = 0;
    std::uint64_t seed = 0;

    auto operator<=>(const FeatureKey&) const = default;
};

struct FeatureVector {
    FeatureKey key;
    FeatureList features;
    std::string catalog_version = moela::catalog_version;
};

// All five groups for one sample, in catalog order, followed by the
// meta.dim and meta.sample_size columns.
FeatureVector compute_all_features(const EvaluatedSample& sample);

// Feature rows sharing one column set.
struct FeatureTable {
    std::vector<std::string> columns;
    std::vector<FeatureKey> keys;
    std::vector<std::vector<double>> rows;

    std::size_t size() const noexcept { return rows.size(); }
    std::size_t column(const std::string& name) const;
    std::vector<double> column_values(std::size_t c) const;
    void sort_by_key();
};

FeatureTable to_table(const std::vector<FeatureVector>& vectors);
io::CsvTable table_to_csv(const FeatureTable& table);
FeatureTable table_from_csv(const io::CsvTable& csv);
FeatureTable read_feature_table(const std::filesystem::path& path);
// Sidecar `<path>.json`: catalog version, table shape and the fixed feature
// parameters (Solow-Polasky theta, layer HV reference, layer count).
nlohmann::json feature_table_manifest(const FeatureTable& table);
void write_feature_table(const std::filesystem::path& path, const FeatureTable& table);

struct GridRequest {
    std::vector<ProblemSpec> suite;
    std::vector<int> sizes;
    std::vector<std::uint64_t> seeds;
    unsigned jobs = 1;
};

// One feature vector per (spec, size, seed), sorted by key. Rows already in
// `existing` are reused, so an interrupted grid can be resumed. All specs
// must share one objective count.
FeatureTable run_grid(const GridRequest& request, const FeatureTable* existing = nullptr);

} // namespace moela

#endif
