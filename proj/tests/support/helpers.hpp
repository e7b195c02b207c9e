#ifndef MOELA_TESTS_HELPERS_HPP
#define MOELA_TESTS_HELPERS_HPP

#include "moela/types.hpp"
#include "oracles.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace testing {

inline moela::Matrix to_matrix(const oracle::Points& p)
{
    moela::Matrix m(static_cast<Eigen::Index>(p.size()), p.empty() ? 0 : static_cast<Eigen::Index>(p[0].size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p[i].size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p[i][j];
        }
    }
    return m;
}

inline oracle::Points to_points(const moela::Matrix& m)
{
    oracle::Points p(static_cast<std::size_t>(m.rows()), oracle::Point(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
        }
    }
    return p;
}

inline oracle::Points random_points(std::mt19937_64& gen, std::size_t n, std::size_t m, double lo = 0.0,
        double hi = 1.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    oracle::Points p(n, oracle::Point(m));
    for (auto& row : p) {
        for (auto& v : row) {
            v = u(gen);
        }
    }
    return p;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& name)
        : path_(std::filesystem::temp_directory_path() / ("moela-test-" + name))
    {
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

private:
    std::filesystem::path path_;
};

} // namespace testing

#endif
