#include "moela/sampling.hpp"

#include "moela/rng.hpp"

#include <cmath>
#include <numeric>

namespace moela {

namespace {
    Matrix lhs_with(int n, int d, CounterRng& rng)
    {
        Matrix out(n, d);
        std::vector<int> perm(static_cast<std::size_t>(n));
        double const dn = static_cast<double>(n);
        for (int j = 0; j < d; ++j) {
            std::iota(perm.begin(), perm.end(), 0);
            shuffle(std::span<int>(perm), rng);
            for (int i = 0; i < n; ++i) {
                auto const stratum = perm[static_cast<std::size_t>(i)];
                double x = (stratum + rng.uniform()) / dn;
                // Rounding may push x across a stratum boundary; nudge it back.
                while (std::floor(x * dn) > stratum) {
                    x = std::nextafter(x, 0.0);
                }
                while (std::floor(x * dn) < stratum) {
                    x = std::nextafter(x, 1.0);
                }
                out(i, j) = x;
            }
        }
        return out;
    }
} // namespace

Matrix lhs(int n, int d, std::uint64_t seed)
{
    if (n < 1 || d < 1) {
        throw Error(ErrorCode::Contract, "lhs needs n >= 1 and d >= 1");
    }
    CounterRng rng(stream_key("lhs", {seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d)}));
    return lhs_with(n, d, rng);
}

Matrix minmax_scale(const Matrix& Y, Vector& y_min, Vector& y_max)
{
    y_min = Y.colwise().minCoeff().transpose();
    y_max = Y.colwise().maxCoeff().transpose();
    Matrix out(Y.rows(), Y.cols());
    for (Eigen::Index k = 0; k < Y.cols(); ++k) {
        double const range = y_max(k) - y_min(k);
        if (range > 0.0) {
            out.col(k) = ((Y.col(k).array() - y_min(k)) / range).matrix();
        } else {
            out.col(k).setZero();
        }
    }
    return out;
}

EvaluatedSample draw_sample(const Problem& problem, int n, std::uint64_t seed)
{
    if (n < 1) {
        throw Error(ErrorCode::Contract, "sample size must be >= 1");
    }
    auto const& spec = problem.spec();
    CounterRng rng(stream_key(spec.id, {static_cast<std::uint64_t>(n), seed}));
    EvaluatedSample s;
    s.problem_id = spec.id;
    s.seed = seed;
    s.box_lower = spec.box_lower;
    s.box_upper = spec.box_upper;
    s.X = lhs_with(n, spec.dim, rng);
    s.X_raw.resize(n, spec.dim);
    s.Y_raw.resize(n, spec.n_objectives);
    std::vector<double> x(static_cast<std::size_t>(spec.dim));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < spec.dim; ++j) {
            auto const ju = static_cast<std::size_t>(j);
            double v = spec.box_lower[ju] + s.X(i, j) * (spec.box_upper[ju] - spec.box_lower[ju]);
            v = std::min(v, spec.box_upper[ju]);
            x[ju] = v;
            s.X_raw(i, j) = v;
        }
        auto f = problem.evaluate(x);
        for (int k = 0; k < spec.n_objectives; ++k) {
            s.Y_raw(i, k) = f[static_cast<std::size_t>(k)];
        }
    }
    s.Y = minmax_scale(s.Y_raw, s.y_min, s.y_max);
    return s;
}

EvaluatedSample draw_sample(const ProblemSpec& spec, int n, std::uint64_t seed)
{
    return draw_sample(Problem(spec), n, seed);
}

EvaluatedSample sample_from_scaled(std::string problem_id, Matrix X, Matrix Y)
{
    if (X.rows() != Y.rows()) {
        throw Error(ErrorCode::Contract, "X and Y must have the same number of rows");
    }
    EvaluatedSample s;
    s.problem_id = std::move(problem_id);
    s.box_lower.assign(static_cast<std::size_t>(X.cols()), 0.0);
    s.box_upper.assign(static_cast<std::size_t>(X.cols()), 1.0);
    s.X_raw = X;
    s.Y_raw = Y;
    s.X = std::move(X);
    s.Y = std::move(Y);
    s.y_min = Vector::Zero(s.Y.cols());
    s.y_max = Vector::Ones(s.Y.cols());
    return s;
}

io::CsvTable sample_to_csv(const EvaluatedSample& sample)
{
    io::CsvTable t;
    for (Eigen::Index j = 0; j < sample.dim(); ++j) {
        t.header.push_back("x" + std::to_string(j + 1));
    }
    for (Eigen::Index k = 0; k < sample.n_objectives(); ++k) {
        t.header.push_back("y" + std::to_string(k + 1));
    }
    for (Eigen::Index i = 0; i < sample.size(); ++i) {
        std::vector<std::string> row;
        for (Eigen::Index j = 0; j < sample.dim(); ++j) {
            row.push_back(io::format_double(sample.X(i, j)));
        }
        for (Eigen::Index k = 0; k < sample.n_objectives(); ++k) {
            row.push_back(io::format_double(sample.Y(i, k)));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

nlohmann::json sample_manifest(const EvaluatedSample& sample)
{
    std::vector<double> lo(sample.y_min.data(), sample.y_min.data() + sample.y_min.size());
    std::vector<double> hi(sample.y_max.data(), sample.y_max.data() + sample.y_max.size());
    return {
        {"schema", "moela.sample/1"},
        {"problem_id", sample.problem_id},
        {"n", sample.size()},
        {"seed", sample.seed},
        {"y_min", lo},
        {"y_max", hi},
        {"box", {{"lower", sample.box_lower}, {"upper", sample.box_upper}}},
    };
}

std::filesystem::path manifest_path(const std::filesystem::path& csv_path)
{
    auto p = csv_path;
    p += ".json";
    return p;
}

void write_sample(const std::filesystem::path& csv_path, const EvaluatedSample& sample)
{
    io::write_csv(csv_path, sample_to_csv(sample));
    io::write_json(manifest_path(csv_path), sample_manifest(sample));
}

EvaluatedSample read_sample(const std::filesystem::path& csv_path)
{
    auto table = io::read_csv(csv_path);
    auto manifest = io::read_json(manifest_path(csv_path));
    EvaluatedSample s;
    try {
        s.problem_id = manifest.at("problem_id").get<std::string>();
        s.seed = manifest.at("seed").get<std::uint64_t>();
        s.box_lower = manifest.at("box").at("lower").get<std::vector<double>>();
        s.box_upper = manifest.at("box").at("upper").get<std::vector<double>>();
        auto lo = manifest.at("y_min").get<std::vector<double>>();
        auto hi = manifest.at("y_max").get<std::vector<double>>();
        s.y_min = Eigen::Map<Vector>(lo.data(), static_cast<Eigen::Index>(lo.size()));
        s.y_max = Eigen::Map<Vector>(hi.data(), static_cast<Eigen::Index>(hi.size()));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Schema, std::string("invalid sample manifest: ") + e.what());
    }
    auto const d = static_cast<Eigen::Index>(s.box_lower.size());
    auto const m = s.y_min.size();
    if (static_cast<Eigen::Index>(table.header.size()) != d + m) {
        throw Error(ErrorCode::Schema, "sample CSV column count does not match manifest");
    }
    for (Eigen::Index j = 0; j < d; ++j) {
        if (table.header[static_cast<std::size_t>(j)] != "x" + std::to_string(j + 1)) {
            throw Error(ErrorCode::Schema, "unexpected sample CSV header");
        }
    }
    auto const n = static_cast<Eigen::Index>(table.rows.size());
    s.X.resize(n, d);
    s.Y.resize(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        auto const& row = table.rows[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < d; ++j) {
            s.X(i, j) = io::parse_double(row[static_cast<std::size_t>(j)]);
        }
        for (Eigen::Index k = 0; k < m; ++k) {
            s.Y(i, k) = io::parse_double(row[static_cast<std::size_t>(d + k)]);
        }
    }
    s.X_raw.resize(n, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        auto const ju = static_cast<std::size_t>(j);
        s.X_raw.col(j) = (s.box_lower[ju] + s.X.col(j).array() * (s.box_upper[ju] - s.box_lower[ju])).matrix();
    }
    s.Y_raw.resize(n, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        s.Y_raw.col(k) = (s.y_min(k) + s.Y.col(k).array() * (s.y_max(k) - s.y_min(k))).matrix();
    }
    return s;
}

} // namespace moela
