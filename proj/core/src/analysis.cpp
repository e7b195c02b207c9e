#include "moela/analysis.hpp"

#include "moela/statistics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace moela {

std::vector<std::size_t> analysis_columns(const FeatureTable& table,
        const std::optional<std::vector<std::string>>& subset)
{
    std::vector<std::size_t> cols;
    if (subset) {
        for (const auto& name : *subset) {
            cols.push_back(table.column(name));
        }
        return cols;
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (table.columns[c].rfind("meta.", 0) != 0) {
            cols.push_back(c);
        }
    }
    return cols;
}

StabilityReport stability(const FeatureTable& table, const std::optional<std::vector<std::string>>& subset)
{
    auto cols = analysis_columns(table, subset);
    std::map<std::tuple<std::string, int, int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& k = table.keys[i];
        groups[{k.problem_id, k.dim, k.sample_size}].push_back(i);
    }

    StabilityReport report;
    double sum = 0.0;
    std::size_t counted = 0;
    std::vector<double> a(cols.size());
    std::vector<double> b(cols.size());
    for (const auto& [key, members] : groups) {
        StabilityRow row{std::get<0>(key), std::get<1>(key), std::get<2>(key), members.size(), 0, 0, 0.0};
        double total = 0.0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    a[c] = table.rows[members[i]][cols[c]];
                    b[c] = table.rows[members[j]][cols[c]];
                }
                auto r = stats::pearson(a, b);
                if (!r) {
                    ++row.skipped_pairs;
                    continue;
                }
                total += *r;
                ++row.pairs;
            }
        }
        row.mean_corr = row.pairs > 0 ? total / static_cast<double>(row.pairs)
                                      : std::numeric_limits<double>::quiet_NaN();
        if (row.pairs > 0) {
            sum += row.mean_corr;
            ++counted;
        }
        report.rows.push_back(row);
    }
    report.mean = counted > 0 ? sum / static_cast<double>(counted) : std::numeric_limits<double>::quiet_NaN();
    return report;
}

io::CsvTable stability_to_csv(const StabilityReport& report)
{
    io::CsvTable csv;
    csv.header = {"problem_id", "dim", "sample_size", "seeds", "pairs", "skipped_pairs", "mean_corr"};
    for (const auto& r : report.rows) {
        csv.rows.push_back({r.problem_id, std::to_string(r.dim), std::to_string(r.sample_size),
                std::to_string(r.seeds), std::to_string(r.pairs), std::to_string(r.skipped_pairs),
                io::format_double(r.mean_corr)});
    }
    return csv;
}

CorrelationMatrix feature_correlation(const FeatureTable& table, const std::optional<std::vector<std::string>>& subset)
{
    CorrelationMatrix out;
    std::vector<std::vector<double>> values;
    for (auto c : analysis_columns(table, subset)) {
        auto v = table.column_values(c);
        if (stats::population_std(v) > 0.0) {
            out.names.push_back(table.columns[c]);
            values.push_back(std::move(v));
        } else {
            out.constant.push_back(table.columns[c]);
        }
    }
    const auto n = static_cast<Eigen::Index>(values.size());
    out.corr = Matrix::Identity(n, n);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double r = stats::pearson(values[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(j)])
                               .value_or(0.0);
            out.corr(i, j) = r;
            out.corr(j, i) = r;
            total += 2.0 * std::abs(r);
        }
    }
    out.mean_abs_offdiag = n > 1 ? total / static_cast<double>(n * (n - 1)) : 0.0;
    return out;
}

io::CsvTable correlation_to_csv(const CorrelationMatrix& c)
{
    io::CsvTable csv;
    csv.header.push_back("feature");
    csv.header.insert(csv.header.end(), c.names.begin(), c.names.end());
    for (Eigen::Index i = 0; i < c.corr.rows(); ++i) {
        std::vector<std::string> row{c.names[static_cast<std::size_t>(i)]};
        for (Eigen::Index j = 0; j < c.corr.cols(); ++j) {
            row.push_back(io::format_double(c.corr(i, j)));
        }
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

std::vector<std::string> decorrelated_subset(const FeatureTable& table, std::size_t count)
{
    auto full = feature_correlation(table);
    const auto n = static_cast<std::size_t>(full.corr.rows());
    Matrix a = full.corr.cwiseAbs();
    std::vector<std::size_t> chosen;
    std::vector<bool> used(n, false);
    std::vector<double> worst(n, 0.0);  // max |r| against the chosen columns
    while (chosen.size() < std::min(count, n)) {
        std::size_t pick = n;
        double pick_score = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c]) {
                continue;
            }
            double score = chosen.empty() ? (a.row(static_cast<Eigen::Index>(c)).sum() - 1.0) : worst[c];
            if (score < pick_score) {
                pick = c;
                pick_score = score;
            }
        }
        used[pick] = true;
        chosen.push_back(pick);
        for (std::size_t c = 0; c < n; ++c) {
            worst[c] = std::max(worst[c], a(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(pick)));
        }
    }
    std::vector<std::string> names;
    for (auto c : chosen) {
        names.push_back(full.names[c]);
    }
    return names;
}

Matrix embed_2d(const FeatureTable& table, const std::optional<std::vector<std::string>>& subset)
{
    std::vector<std::vector<double>> columns;
    for (auto c : analysis_columns(table, subset)) {
        auto v = table.column_values(c);
        double sd = stats::population_std(v);
        if (sd > 0.0) {
            double mu = stats::mean(v);
            for (auto& x : v) {
                x = (x - mu) / sd;
            }
            columns.push_back(std::move(v));
        }
    }
    if (columns.size() < 2) {
        throw Error(ErrorCode::Degenerate, "embedding needs at least two non-constant feature columns, found "
                + std::to_string(columns.size()));
    }
    const auto rows = static_cast<Eigen::Index>(table.size());
    Matrix Z(rows, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            Z(i, static_cast<Eigen::Index>(c)) = columns[c][static_cast<std::size_t>(i)];
        }
    }
    Matrix cov = (Z.transpose() * Z) / static_cast<double>(std::max<Eigen::Index>(rows - 1, 1));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    const auto p = cov.cols();
    Matrix basis(p, 2);
    for (int k = 0; k < 2; ++k) {
        Vector v = eig.eigenvectors().col(p - 1 - k);
        Eigen::Index at = 0;
        v.cwiseAbs().maxCoeff(&at);
        if (v(at) < 0.0) {
            v = -v;
        }
        basis.col(k) = v;
    }
    return Z * basis;
}

io::CsvTable embedding_to_csv(const FeatureTable& table, const Matrix& embedding)
{
    io::CsvTable csv;
    csv.header = {"problem_id", "dim", "m", "sample_size", "seed", "pc1", "pc2"};
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& k = table.keys[i];
        auto r = static_cast<Eigen::Index>(i);
        csv.rows.push_back({k.problem_id, std::to_string(k.dim), std::to_string(k.n_objectives),
                std::to_string(k.sample_size), std::to_string(k.seed), io::format_double(embedding(r, 0)),
                io::format_double(embedding(r, 1))});
    }
    return csv;
}

} // namespace moela
