#include "moela/dominance.hpp"

#include "moela/io.hpp"

#include <algorithm>

namespace moela {

bool dominates(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw Error(ErrorCode::Contract, "dominates: vectors of length " + std::to_string(a.size()) + " and "
                + std::to_string(b.size()));
    }
    bool strict = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) {
            return false;
        }
        strict = strict || a[k] < b[k];
    }
    return strict;
}

bool dominates_rows(const Matrix& Y, Eigen::Index a, Eigen::Index b) noexcept
{
    bool strict = false;
    for (Eigen::Index k = 0; k < Y.cols(); ++k) {
        if (Y(a, k) > Y(b, k)) {
            return false;
        }
        strict = strict || Y(a, k) < Y(b, k);
    }
    return strict;
}

IndexList nd_filter(const Matrix& Y)
{
    IndexList out;
    for (Eigen::Index i = 0; i < Y.rows(); ++i) {
        bool dominated = false;
        for (Eigen::Index j = 0; j < Y.rows() && !dominated; ++j) {
            dominated = j != i && dominates_rows(Y, j, i);
        }
        if (!dominated) {
            out.push_back(static_cast<std::size_t>(i));
        }
    }
    return out;
}

LayerPartition non_dominated_sort(const Matrix& Y)
{
    auto const n = static_cast<std::size_t>(Y.rows());
    LayerPartition result;
    result.rank.assign(n, 0);
    if (n == 0) {
        return result;
    }
    std::vector<std::size_t> dominated_by_count(n, 0);
    std::vector<IndexList> dominates_list(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto const ii = static_cast<Eigen::Index>(i);
            auto const jj = static_cast<Eigen::Index>(j);
            if (dominates_rows(Y, ii, jj)) {
                dominates_list[i].push_back(j);
                ++dominated_by_count[j];
            } else if (dominates_rows(Y, jj, ii)) {
                dominates_list[j].push_back(i);
                ++dominated_by_count[i];
            }
        }
    }
    IndexList current;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominated_by_count[i] == 0) {
            current.push_back(i);
        }
    }
    while (!current.empty()) {
        IndexList next;
        for (auto i : current) {
            result.rank[i] = result.layers.size();
            for (auto j : dominates_list[i]) {
                if (--dominated_by_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        std::sort(next.begin(), next.end());
        result.layers.push_back(std::move(current));
        current = std::move(next);
    }
    return result;
}

std::string layers_to_csv(const LayerPartition& partition)
{
    io::CsvTable t;
    t.header = {"index", "layer"};
    for (std::size_t i = 0; i < partition.rank.size(); ++i) {
        t.rows.push_back({std::to_string(i), std::to_string(partition.rank[i] + 1)});
    }
    return io::to_csv_string(t);
}

} // namespace moela
