#include "moela/feature_pipeline.hpp"

#include "moela/dominance.hpp"
#include "moela/features_gradient.hpp"
#include "moela/features_graph.hpp"
#include "moela/features_nds.hpp"
#include "moela/features_stats_pca.hpp"
#include "moela/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace moela {

namespace {
    const std::vector<std::string> key_columns{"problem_id", "dim", "m", "sample_size", "seed"};
}

FeatureVector compute_all_features(const EvaluatedSample& sample)
{
    if (sample.size() < 1) {
        throw Error(ErrorCode::Contract, "cannot compute features of an empty sample");
    }
    FeatureVector v;
    v.key = {sample.problem_id, static_cast<int>(sample.dim()), static_cast<int>(sample.n_objectives()),
        static_cast<int>(sample.size()), sample.seed};

    auto const layers = non_dominated_sort(sample.Y);
    auto const& front = layers.front();
    v.features.append(compute_nds_features(sample, layers).to_features(), "nds.");
    v.features.append(compute_stats_features(sample, front).to_features(), "stats.");
    v.features.append(compute_pca_features(sample, front).to_features(), "pca.");
    v.features.append(compute_graph_features(sample, front).to_features(), "graph.");
    v.features.append(compute_gradient_features(sample, front).to_features(), "grad.");
    v.features.add("meta.dim", static_cast<double>(sample.dim()));
    v.features.add("meta.sample_size", static_cast<double>(sample.size()));

    for (std::size_t i = 0; i < v.features.size(); ++i) {
        if (!std::isfinite(v.features.values[i])) {
            throw Error(ErrorCode::Degenerate, "feature " + v.features.names[i] + " is not finite for "
                    + sample.problem_id);
        }
    }
    return v;
}

std::size_t FeatureTable::column(const std::string& name) const
{
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw Error(ErrorCode::Schema, "feature table has no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> FeatureTable::column_values(std::size_t c) const
{
    std::vector<double> out;
    out.reserve(rows.size());
    for (auto const& r : rows) {
        out.push_back(r[c]);
    }
    return out;
}

void FeatureTable::sort_by_key()
{
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<FeatureKey> k;
    std::vector<std::vector<double>> r;
    for (auto i : order) {
        k.push_back(std::move(keys[i]));
        r.push_back(std::move(rows[i]));
    }
    keys = std::move(k);
    rows = std::move(r);
}

FeatureTable to_table(const std::vector<FeatureVector>& vectors)
{
    FeatureTable t;
    if (vectors.empty()) {
        return t;
    }
    t.columns = vectors.front().features.names;
    for (auto const& v : vectors) {
        if (v.features.names != t.columns) {
            throw Error(ErrorCode::Schema, "feature vectors with different column sets cannot share a table");
        }
        t.keys.push_back(v.key);
        t.rows.push_back(v.features.values);
    }
    return t;
}

io::CsvTable table_to_csv(const FeatureTable& table)
{
    io::CsvTable csv;
    csv.header = key_columns;
    csv.header.insert(csv.header.end(), table.columns.begin(), table.columns.end());
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto const& k = table.keys[i];
        std::vector<std::string> row{k.problem_id, std::to_string(k.dim), std::to_string(k.n_objectives),
            std::to_string(k.sample_size), std::to_string(k.seed)};
        for (double v : table.rows[i]) {
            row.push_back(io::format_double(v));
        }
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

FeatureTable table_from_csv(const io::CsvTable& csv)
{
    if (csv.header.size() < key_columns.size()
            || !std::equal(key_columns.begin(), key_columns.end(), csv.header.begin())) {
        throw Error(ErrorCode::Schema, "feature table must start with columns problem_id,dim,m,sample_size,seed");
    }
    FeatureTable t;
    t.columns.assign(csv.header.begin() + static_cast<std::ptrdiff_t>(key_columns.size()), csv.header.end());
    for (auto const& row : csv.rows) {
        FeatureKey k{row[0], static_cast<int>(io::parse_int(row[1])), static_cast<int>(io::parse_int(row[2])),
            static_cast<int>(io::parse_int(row[3])), static_cast<std::uint64_t>(io::parse_int(row[4]))};
        std::vector<double> values;
        for (std::size_t c = key_columns.size(); c < row.size(); ++c) {
            values.push_back(io::parse_double(row[c]));
        }
        t.keys.push_back(std::move(k));
        t.rows.push_back(std::move(values));
    }
    return t;
}

FeatureTable read_feature_table(const std::filesystem::path& path)
{
    return table_from_csv(io::read_csv(path));
}

nlohmann::json feature_table_manifest(const FeatureTable& table)
{
    return {
        {"schema", "moela.features/1"},
        {"catalog_version", catalog_version},
        {"rows", table.size()},
        {"feature_columns", table.columns.size()},
        {"parameters", {{"sp_theta", sp_theta}, {"nds_hv_reference", nds_hv_reference},
                           {"nds_layers", nds_layer_count}}},
    };
}

void write_feature_table(const std::filesystem::path& path, const FeatureTable& table)
{
    io::write_csv(path, table_to_csv(table));
    io::write_json(manifest_path(path), feature_table_manifest(table));
}

FeatureTable run_grid(const GridRequest& request, const FeatureTable* existing)
{
    if (request.suite.empty() || request.sizes.empty() || request.seeds.empty()) {
        throw Error(ErrorCode::Contract, "grid needs a non-empty suite, size list and seed list");
    }
    int const m = request.suite.front().n_objectives;
    for (auto const& s : request.suite) {
        if (s.n_objectives != m) {
            throw Error(ErrorCode::Contract, "grid suite mixes objective counts; run one table per m");
        }
    }

    std::map<FeatureKey, std::vector<double>> done;
    std::vector<std::string> columns;
    if (existing != nullptr && existing->size() > 0) {
        columns = existing->columns;
        for (std::size_t i = 0; i < existing->size(); ++i) {
            done.emplace(existing->keys[i], existing->rows[i]);
        }
    }

    struct Cell {
        std::size_t spec;
        int size;
        std::uint64_t seed;
        FeatureKey key;
    };
    std::vector<Cell> todo;
    for (std::size_t s = 0; s < request.suite.size(); ++s) {
        auto const& spec = request.suite[s];
        for (int size : request.sizes) {
            for (auto seed : request.seeds) {
                FeatureKey key{spec.id, spec.dim, spec.n_objectives, size, seed};
                if (!done.contains(key)) {
                    todo.push_back({s, size, seed, key});
                }
            }
        }
    }

    std::vector<Problem> problems;
    problems.reserve(request.suite.size());
    for (auto const& spec : request.suite) {
        problems.emplace_back(spec);
    }
    std::vector<FeatureVector> computed(todo.size());
    parallel_for(todo.size(), request.jobs, [&](std::size_t i) {
        auto const& cell = todo[i];
        computed[i] = compute_all_features(draw_sample(problems[cell.spec], cell.size, cell.seed));
    });

    for (auto& v : computed) {
        if (columns.empty()) {
            columns = v.features.names;
        } else if (v.features.names != columns) {
            throw Error(ErrorCode::Schema, "existing feature table has a different column set");
        }
        done.insert_or_assign(v.key, std::move(v.features.values));
    }

    FeatureTable out;
    out.columns = columns;
    // Keep rows from the existing table that lie outside this request as well.
    for (auto& [key, values] : done) {
        out.keys.push_back(key);
        out.rows.push_back(values);
    }
    out.sort_by_key();
    return out;
}

} // namespace moela
