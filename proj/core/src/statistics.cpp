#include "moela/statistics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace moela::stats {

double mean(std::span<const double> v)
{
    if (v.empty()) {
        return 0.0;
    }
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

namespace {
    double sum_sq_dev(std::span<const double> v)
    {
        double const mu = mean(v);
        double s = 0.0;
        for (double x : v) {
            s += (x - mu) * (x - mu);
        }
        return s;
    }
} // namespace

double sample_std(std::span<const double> v)
{
    if (v.size() < 2) {
        return 0.0;
    }
    return std::sqrt(sum_sq_dev(v) / static_cast<double>(v.size() - 1));
}

double population_std(std::span<const double> v)
{
    if (v.empty()) {
        return 0.0;
    }
    return std::sqrt(sum_sq_dev(v) / static_cast<double>(v.size()));
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw Error(ErrorCode::Contract, "pearson: length mismatch");
    }
    if (a.size() < 2) {
        return std::nullopt;
    }
    double const ma = mean(a);
    double const mb = mean(b);
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double const da = a[i] - ma;
        double const db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) {
        return std::nullopt;
    }
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> v)
{
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> ranks(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) {
            ++j;
        }
        double const r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t q = i; q <= j; ++q) {
            ranks[order[q]] = r;
        }
        i = j + 1;
    }
    return ranks;
}

std::optional<double> spearman(std::span<const double> a, std::span<const double> b)
{
    auto ra = average_ranks(a);
    auto rb = average_ranks(b);
    return pearson(ra, rb);
}

std::vector<double> covariance_eigenvalues(const Matrix& design)
{
    auto const n = design.rows();
    auto const p = design.cols();
    if (n < 2 || p < 1) {
        return {};
    }
    Matrix centered = design.rowwise() - design.colwise().mean();
    Matrix cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(cov, Eigen::EigenvaluesOnly);
    std::vector<double> ev(static_cast<std::size_t>(p));
    for (Eigen::Index i = 0; i < p; ++i) {
        ev[static_cast<std::size_t>(i)] = std::max(0.0, solver.eigenvalues()(i));
    }
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

} // namespace moela::stats
