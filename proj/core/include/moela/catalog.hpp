#ifndef MOELA_CATALOG_HPP
#define MOELA_CATALOG_HPP

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace moela {

inline constexpr const char* catalog_version = "moela-features/1.0";

struct CatalogEntry {
    std::string id;            // column name, e.g. "graph.nn.D_to_O.angle_min"
    std::string group;         // nds | stats | pca | graph.mst | graph.nn | grad | meta
    std::string table_name;    // name used in the published feature overview
    std::optional<double> degenerate_value;  // value when |L1| = 1, if fixed
};

// Ordered catalog for m objectives (2 or 3), including the two meta columns.
std::vector<CatalogEntry> feature_catalog(int n_objectives);

// Number of catalog entries in one group for m objectives.
std::size_t catalog_group_size(int n_objectives, const std::string& group);

// Catalog document: version, both objective counts, per-group counts and the
// published totals (226 / 233) next to the enumerable ones.
nlohmann::json catalog_json();

} // namespace moela

#endif
