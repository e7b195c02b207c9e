#include "moela/indicators.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <array>
#include <map>
#include <numeric>

namespace moela {

namespace {
    // Non-dominated 2-D staircase with its dominated area maintained
    // incrementally. Keys are f1 ascending, values f2 strictly descending.
    class Staircase {
    public:
        Staircase(double r1, double r2) : r1_(r1), r2_(r2) { }

        // Inserts a point strictly below the reference and returns the area gained.
        double insert(double p1, double p2)
        {
            auto it = points_.upper_bound(p1);
            if (it != points_.begin() && std::prev(it)->second <= p2) {
                return 0.0;
            }
            auto start = points_.lower_bound(p1);
            double top = start != points_.begin() ? std::prev(start)->second : r2_;
            double x = p1;
            double gain = 0.0;
            it = start;
            while (it != points_.end() && it->second >= p2) {
                gain += (it->first - x) * (top - p2);
                x = it->first;
                top = it->second;
                it = points_.erase(it);
            }
            double const end_x = it != points_.end() ? it->first : r1_;
            gain += (end_x - x) * (top - p2);
            points_.emplace(p1, p2);
            area_ += gain;
            return gain;
        }

        double area() const noexcept { return area_; }

    private:
        double r1_;
        double r2_;
        double area_ = 0.0;
        std::map<double, double> points_;
    };

    double hv2(const std::vector<std::array<double, 3>>& pts, const RefPoint& ref)
    {
        Staircase stairs(ref.r[0], ref.r[1]);
        for (auto const& p : pts) {
            stairs.insert(p[0], p[1]);
        }
        return stairs.area();
    }

    double hv3(std::vector<std::array<double, 3>> pts, const RefPoint& ref)
    {
        std::sort(pts.begin(), pts.end(), [](auto const& a, auto const& b) { return a[2] < b[2]; });
        Staircase stairs(ref.r[0], ref.r[1]);
        double volume = 0.0;
        double z = pts.empty() ? ref.r[2] : pts.front()[2];
        for (auto const& p : pts) {
            volume += stairs.area() * (p[2] - z);
            z = p[2];
            stairs.insert(p[0], p[1]);
        }
        volume += stairs.area() * (ref.r[2] - z);
        return volume;
    }

    double hv_points(const std::vector<std::array<double, 3>>& pts, const RefPoint& ref)
    {
        return ref.r.size() == 2 ? hv2(pts, ref) : hv3(pts, ref);
    }

    std::vector<std::array<double, 3>> below_ref(const Matrix& Y, const RefPoint& ref, std::vector<Eigen::Index>* rows)
    {
        std::vector<std::array<double, 3>> pts;
        for (Eigen::Index i = 0; i < Y.rows(); ++i) {
            bool inside = true;
            std::array<double, 3> p{};
            for (Eigen::Index k = 0; k < Y.cols(); ++k) {
                p[static_cast<std::size_t>(k)] = Y(i, k);
                inside = inside && Y(i, k) < ref.r[static_cast<std::size_t>(k)];
            }
            if (inside) {
                pts.push_back(p);
                if (rows != nullptr) {
                    rows->push_back(i);
                }
            }
        }
        return pts;
    }

    void check_dims(const Matrix& Y, const RefPoint& ref)
    {
        auto const m = ref.r.size();
        if (m != 2 && m != 3) {
            throw Error(ErrorCode::Unsupported, "hypervolume supports m in {2,3}, got m=" + std::to_string(m));
        }
        if (Y.rows() > 0 && static_cast<std::size_t>(Y.cols()) != m) {
            throw Error(ErrorCode::Contract, "hypervolume: point and reference dimensions differ");
        }
    }
} // namespace

double hv(const Matrix& Y, const RefPoint& ref)
{
    check_dims(Y, ref);
    return hv_points(below_ref(Y, ref, nullptr), ref);
}

std::vector<double> hv_contributions(const Matrix& Y, const RefPoint& ref)
{
    check_dims(Y, ref);
    std::vector<Eigen::Index> rows;
    auto pts = below_ref(Y, ref, &rows);
    std::vector<double> contrib(static_cast<std::size_t>(Y.rows()), 0.0);
    double const total = hv_points(pts, ref);
    std::vector<std::array<double, 3>> rest;
    rest.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        rest.clear();
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j != i) {
                rest.push_back(pts[j]);
            }
        }
        contrib[static_cast<std::size_t>(rows[i])] = std::max(0.0, total - hv_points(rest, ref));
    }
    return contrib;
}

double solow_polasky(const Matrix& X, double theta)
{
    auto const k = X.rows();
    if (k < 1) {
        throw Error(ErrorCode::Contract, "solow_polasky needs at least one point");
    }
    if (k == 1) {
        return 1.0;
    }
    Matrix C(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        C(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < k; ++j) {
            double const v = std::exp(-theta * (X.row(i) - X.row(j)).norm());
            C(i, j) = v;
            C(j, i) = v;
        }
    }
    Vector const ones = Vector::Ones(k);
    double result = static_cast<double>(k);
    // Unregularised first; near-duplicate points make C singular, then a
    // growing ridge is tried.
    for (double ridge = 0.0; ridge <= 1e-4 * 1.0000001; ridge = ridge == 0.0 ? 1e-10 : ridge * 10.0) {
        Matrix A = C;
        A.diagonal().array() += ridge;
        Eigen::LLT<Matrix> llt(A);
        if (llt.info() != Eigen::Success) {
            continue;
        }
        Vector w = llt.solve(ones);
        double const s = w.sum();
        if (std::isfinite(s)) {
            result = s;
            break;
        }
    }
    return std::clamp(result, 1.0, static_cast<double>(k));
}

double poly_r2(std::span<const double> values, int degree)
{
    auto const h = static_cast<Eigen::Index>(values.size());
    if (h < 1) {
        throw Error(ErrorCode::Contract, "poly_r2 needs at least one value");
    }
    if (degree < 1) {
        throw Error(ErrorCode::Contract, "poly_r2 degree must be >= 1");
    }
    Eigen::Map<const Vector> y(values.data(), h);
    double const mean = y.mean();
    double const ss_tot = (y.array() - mean).square().sum();
    if (ss_tot == 0.0 || h <= degree + 1) {
        return 1.0;
    }
    // Positions 1..h mapped to [-1, 1]; same column space, better conditioning.
    Matrix V(h, degree + 1);
    for (Eigen::Index i = 0; i < h; ++i) {
        double const t = h == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(h - 1);
        double p = 1.0;
        for (int c = 0; c <= degree; ++c) {
            V(i, c) = p;
            p *= t;
        }
    }
    Vector coef = V.colPivHouseholderQr().solve(y);
    double const ss_res = (V * coef - y).squaredNorm();
    return 1.0 - ss_res / ss_tot;
}

} // namespace moela
