#include "moela/catalog.hpp"

#include "moela/types.hpp"

#include <array>
#include <cmath>

namespace moela {

namespace {
    void nds(std::vector<CatalogEntry>& out)
    {
        out.push_back({"nds.no_non_dom_points", "nds", "no_non_dom_points", std::nullopt});
        out.push_back({"nds.max_rank", "nds", "max_rank", std::nullopt});
        out.push_back({"nds.avg_points_per_layer", "nds", "avg_points_per_layer", std::nullopt});
        for (int i = 1; i <= 5; ++i) {
            out.push_back({"nds.hv_dom_layer_" + std::to_string(i), "nds", "hv_dom_layer_" + std::to_string(i),
                    std::nullopt});
        }
        for (int i = 1; i <= 5; ++i) {
            out.push_back({"nds.sp_dom_layer_" + std::to_string(i), "nds", "sp_dom_layer_" + std::to_string(i),
                    std::nullopt});
        }
        for (int p = 1; p <= 4; ++p) {
            out.push_back({"nds.r" + std::to_string(p), "nds", "r" + std::to_string(p), std::nullopt});
        }
    }

    void descriptive(std::vector<CatalogEntry>& out, int m)
    {
        for (int k = 1; k <= m; ++k) {
            auto const s = "_" + std::to_string(k);
            out.push_back({"stats.min" + s, "stats", "min" + s, std::nullopt});
            out.push_back({"stats.max" + s, "stats", "max" + s, std::nullopt});
            out.push_back({"stats.avg" + s, "stats", "avg" + s, std::nullopt});
            out.push_back({"stats.std" + s, "stats", "std" + s, 0.0});
        }
        if (m == 2) {
            out.push_back({"stats.obj_std_diff", "stats", "obj_std_diff", 0.0});
            out.push_back({"stats.corr_obj", "stats", "corr_obj", 1.0});
            out.push_back({"stats.spearman_corr_obj", "stats", "spearman_corr_obj", 1.0});
        }
    }

    void pca(std::vector<CatalogEntry>& out)
    {
        for (const char* design : {"X", "Y", "X_Y"}) {
            for (const char* stat : {"min", "max", "avg"}) {
                auto const name = std::string(stat) + "_pc_" + design;
                // Degenerate value is 1/cols, which depends on d; recorded as unset.
                out.push_back({"pca." + name, "pca", name, std::nullopt});
            }
        }
    }

    void graph(std::vector<CatalogEntry>& out, const std::string& kind)
    {
        std::vector<std::pair<std::string, double>> stats{
            {"weights_min", 0.0}, {"weights_max", 0.0}, {"weights_avg", 0.0},
            {"closeness_centrality_min", 0.0}, {"closeness_centrality_max", 0.0},
            {"closeness_centrality_avg", 0.0}, {"angle_min", 0.0}, {"angle_max", 0.0}, {"angle_avg", 0.0}};
        if (kind == "nn") {
            stats.insert(stats.end(), {{"num_components", 1.0}, {"nodes_per_component_min", 1.0},
                    {"nodes_per_component_max", 1.0}, {"nodes_per_component_avg", 1.0},
                    {"longest_path_min", 0.0}, {"longest_path_max", 0.0}, {"longest_path_avg", 0.0}});
        } else {
            stats.emplace_back("longest_path", 0.0);
        }
        auto const group = "graph." + kind;
        for (const char* space : {"D", "D_to_O", "O", "O_to_D", "ratio"}) {
            for (auto const& [stat, degenerate] : stats) {
                out.push_back({"graph." + kind + "." + space + "." + stat, group, stat, degenerate});
            }
        }
    }

    void gradient(std::vector<CatalogEntry>& out)
    {
        for (const char* stat : {"min", "max", "avg", "std"}) {
            auto const name = std::string("mo_gradient_") + stat;
            out.push_back({"grad." + name, "grad", name, 0.0});
        }
    }
} // namespace

std::vector<CatalogEntry> feature_catalog(int n_objectives)
{
    if (n_objectives != 2 && n_objectives != 3) {
        throw Error(ErrorCode::Unsupported, "feature catalog exists for m in {2,3}");
    }
    std::vector<CatalogEntry> out;
    nds(out);
    descriptive(out, n_objectives);
    pca(out);
    graph(out, "mst");
    graph(out, "nn");
    gradient(out);
    out.push_back({"meta.dim", "meta", "dimension", std::nullopt});
    out.push_back({"meta.sample_size", "meta", "sample size", std::nullopt});
    return out;
}

std::size_t catalog_group_size(int n_objectives, const std::string& group)
{
    std::size_t count = 0;
    for (auto const& e : feature_catalog(n_objectives)) {
        count += e.group == group ? 1 : 0;
    }
    return count;
}

nlohmann::json catalog_json()
{
    nlohmann::json doc;
    doc["version"] = catalog_version;
    doc["published_totals"] = {{"m2", 226}, {"m3", 233}};
    doc["notes"] = {
        "NDS group: 17 enumerable features (3 counts, 5 HV, 5 SP, 4 R^2); the published group size is 19.",
        "PCA group: min/max/avg explained variance per design (9 features); the overview table also lists std.",
        "Descriptive group: correlation features are emitted for m=2 only (11 features for m=2, 12 for m=3).",
        "Graph ratio blocks divide the native decision-space graph by the native objective-space graph.",
        "Enumerable totals (171 / 172 plus 2 meta columns) do not reach the published 226 / 233.",
    };
    for (int m : {2, 3}) {
        auto const key = "m" + std::to_string(m);
        auto entries = nlohmann::json::array();
        for (auto const& e : feature_catalog(m)) {
            nlohmann::json j{{"id", e.id}, {"group", e.group}, {"table_name", e.table_name}};
            j["degenerate_value"] = e.degenerate_value ? nlohmann::json(*e.degenerate_value) : nlohmann::json(nullptr);
            entries.push_back(j);
        }
        nlohmann::json counts;
        for (const char* g : {"nds", "stats", "pca", "graph.mst", "graph.nn", "grad", "meta"}) {
            counts[g] = catalog_group_size(m, g);
        }
        doc["objectives"][key] = {{"features", entries}, {"group_counts", counts},
            {"total_without_meta", entries.size() - 2}};
    }
    return doc;
}

} // namespace moela
