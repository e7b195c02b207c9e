#include "moela/solvers.hpp"

#include "moela/dominance.hpp"
#include "moela/indicators.hpp"
#include "moela/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

namespace moela {

const char* to_string(SolverId id) noexcept
{
    switch (id) {
    case SolverId::NSGA2: return "NSGA2";
    case SolverId::SMSEMOA: return "SMSEMOA";
    case SolverId::MOEAD: return "MOEAD";
    }
    return "?";
}

SolverId solver_from_string(std::string_view text)
{
    std::string key;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
    }
    for (auto id : all_solvers) {
        if (key == to_string(id)) {
            return id;
        }
    }
    throw Error(ErrorCode::Config, "unknown solver '" + std::string(text) + "' (expected nsga2, smsemoa or moead)");
}

int budget_for(int n_objectives, int dim)
{
    static constexpr int dims[] = {2, 5, 10, 20};
    static constexpr int two[] = {3000, 8000, 15000, 20000};
    static constexpr int three[] = {7000, 25000, 50000, 100000};
    for (int i = 0; i < 4; ++i) {
        if (dims[i] == dim) {
            if (n_objectives == 2) {
                return two[i];
            }
            if (n_objectives == 3) {
                return three[i];
            }
        }
    }
    throw Error(ErrorCode::Config, "no default budget for m=" + std::to_string(n_objectives)
            + ", d=" + std::to_string(dim) + "; pass an explicit budget");
}

int default_population(int n_objectives)
{
    return n_objectives == 3 ? 105 : 100;
}

double tchebycheff(std::span<const double> f, std::span<const double> weight, std::span<const double> ideal)
{
    double g = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        g = std::max(g, std::max(weight[k], 1e-6) * std::abs(f[k] - ideal[k]));
    }
    return g;
}

Matrix moead_weights(int n_objectives, int population)
{
    if (population < 2) {
        throw Error(ErrorCode::Config, "MOEA/D needs at least two weight vectors");
    }
    if (n_objectives == 2) {
        Matrix w(population, 2);
        for (int i = 0; i < population; ++i) {
            double a = static_cast<double>(i) / (population - 1);
            w(i, 0) = a;
            w(i, 1) = 1.0 - a;
        }
        return w;
    }
    if (n_objectives == 3) {
        int h = 1;
        while ((h + 2) * (h + 3) / 2 <= population) {
            ++h;
        }
        Matrix w((h + 1) * (h + 2) / 2, 3);
        Eigen::Index row = 0;
        for (int i = 0; i <= h; ++i) {
            for (int j = 0; j <= h - i; ++j) {
                w(row, 0) = static_cast<double>(i) / h;
                w(row, 1) = static_cast<double>(j) / h;
                w(row, 2) = static_cast<double>(h - i - j) / h;
                ++row;
            }
        }
        return w;
    }
    throw Error(ErrorCode::Unsupported, "MOEA/D weights are only defined for m in {2,3}");
}

std::vector<double> crowding_distance(const Matrix& Y, const IndexList& front)
{
    const std::size_t n = front.size();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        return dist;
    }
    std::vector<std::size_t> order(n);
    for (Eigen::Index k = 0; k < Y.cols(); ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return Y(static_cast<Eigen::Index>(front[a]), k) < Y(static_cast<Eigen::Index>(front[b]), k);
        });
        double lo = Y(static_cast<Eigen::Index>(front[order.front()]), k);
        double hi = Y(static_cast<Eigen::Index>(front[order.back()]), k);
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        if (hi <= lo) {
            continue;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double next = Y(static_cast<Eigen::Index>(front[order[i + 1]]), k);
            double prev = Y(static_cast<Eigen::Index>(front[order[i - 1]]), k);
            dist[order[i]] += (next - prev) / (hi - lo);
        }
    }
    return dist;
}

namespace {

struct Variation {
    std::vector<double> lower;
    std::vector<double> upper;
    double sbx_eta;
    double sbx_prob;
    double pm_eta;
    double pm_prob;

    // Bounded simulated binary crossover; both children are written back into a and b.
    void crossover(std::vector<double>& a, std::vector<double>& b, CounterRng& rng) const
    {
        if (rng.uniform() > sbx_prob) {
            return;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (rng.uniform() > 0.5 || std::abs(a[i] - b[i]) <= 1e-14) {
                continue;
            }
            double y1 = std::min(a[i], b[i]);
            double y2 = std::max(a[i], b[i]);
            double lo = lower[i];
            double hi = upper[i];
            double u = rng.uniform();

            auto betaq = [&](double beta) {
                double alpha = 2.0 - std::pow(beta, -(sbx_eta + 1.0));
                if (u <= 1.0 / alpha) {
                    return std::pow(u * alpha, 1.0 / (sbx_eta + 1.0));
                }
                return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (sbx_eta + 1.0));
            };
            double c1 = 0.5 * ((y1 + y2) - betaq(1.0 + 2.0 * (y1 - lo) / (y2 - y1)) * (y2 - y1));
            double c2 = 0.5 * ((y1 + y2) + betaq(1.0 + 2.0 * (hi - y2) / (y2 - y1)) * (y2 - y1));
            c1 = std::clamp(c1, lo, hi);
            c2 = std::clamp(c2, lo, hi);
            if (rng.uniform() <= 0.5) {
                std::swap(c1, c2);
            }
            a[i] = c1;
            b[i] = c2;
        }
    }

    // Bounded polynomial mutation.
    void mutate(std::vector<double>& x, CounterRng& rng) const
    {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (rng.uniform() > pm_prob) {
                continue;
            }
            double lo = lower[i];
            double hi = upper[i];
            double span = hi - lo;
            double d1 = (x[i] - lo) / span;
            double d2 = (hi - x[i]) / span;
            double u = rng.uniform();
            double power = 1.0 / (pm_eta + 1.0);
            double dq;
            if (u < 0.5) {
                double v = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, pm_eta + 1.0);
                dq = std::pow(v, power) - 1.0;
            } else {
                double v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, pm_eta + 1.0);
                dq = 1.0 - std::pow(v, power);
            }
            x[i] = std::clamp(x[i] + dq * span, lo, hi);
        }
    }
};

class Evaluator {
public:
    Evaluator(const Problem& problem, int budget) : problem_(problem), budget_(budget) { }

    std::vector<double> operator()(const std::vector<double>& x)
    {
        std::vector<double> y(static_cast<std::size_t>(problem_.n_objectives()));
        problem_.evaluate_unchecked(x, y);
        ++count_;
        return y;
    }

    int count() const noexcept { return count_; }
    int remaining() const noexcept { return budget_ - count_; }

private:
    const Problem& problem_;
    int budget_;
    int count_ = 0;
};

std::vector<double> copy_row(const Matrix& m, Eigen::Index r)
{
    std::vector<double> out(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        out[static_cast<std::size_t>(c)] = m(r, c);
    }
    return out;
}

void set_row(Matrix& m, Eigen::Index r, const std::vector<double>& v)
{
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        m(r, c) = v[static_cast<std::size_t>(c)];
    }
}

struct Population {
    Matrix X;
    Matrix Y;
};

Population initial_population(const Problem& problem, int mu, Evaluator& eval, CounterRng& rng)
{
    const auto& spec = problem.spec();
    Population p{Matrix(mu, spec.dim), Matrix(mu, spec.n_objectives)};
    for (int i = 0; i < mu; ++i) {
        std::vector<double> x(static_cast<std::size_t>(spec.dim));
        for (int j = 0; j < spec.dim; ++j) {
            x[static_cast<std::size_t>(j)] = rng.uniform(spec.box_lower[static_cast<std::size_t>(j)],
                    spec.box_upper[static_cast<std::size_t>(j)]);
        }
        set_row(p.X, i, x);
        set_row(p.Y, i, eval(x));
    }
    return p;
}

void notify(const SolverConfig& config, const Population& p, int evaluations, std::span<const double> ideal = {})
{
    if (config.observer) {
        config.observer(SolverState{p.X, p.Y, evaluations, ideal});
    }
}

struct RankInfo {
    std::vector<std::size_t> rank;
    std::vector<double> crowding;
};

RankInfo rank_and_crowd(const Matrix& Y)
{
    auto layers = non_dominated_sort(Y);
    RankInfo info{layers.rank, std::vector<double>(static_cast<std::size_t>(Y.rows()), 0.0)};
    for (const auto& front : layers.layers) {
        auto cd = crowding_distance(Y, front);
        for (std::size_t i = 0; i < front.size(); ++i) {
            info.crowding[front[i]] = cd[i];
        }
    }
    return info;
}

std::size_t tournament(const RankInfo& info, std::size_t n, CounterRng& rng)
{
    auto a = static_cast<std::size_t>(rng.below(n));
    auto b = static_cast<std::size_t>(rng.below(n));
    if (info.rank[a] != info.rank[b]) {
        return info.rank[a] < info.rank[b] ? a : b;
    }
    if (info.crowding[a] != info.crowding[b]) {
        return info.crowding[a] > info.crowding[b] ? a : b;
    }
    return std::min(a, b);
}

Population run_nsga2(const Problem& problem, int mu, Evaluator& eval, const Variation& var,
        CounterRng& rng, const SolverConfig& config)
{
    auto pop = initial_population(problem, mu, eval, rng);
    notify(config, pop, eval.count());
    const auto d = pop.X.cols();
    const auto m = pop.Y.cols();

    while (eval.remaining() > 0) {
        const int n_off = std::min(mu, eval.remaining());
        auto info = rank_and_crowd(pop.Y);
        Matrix cx(n_off, d);
        Matrix cy(n_off, m);
        for (int made = 0; made < n_off;) {
            auto a = copy_row(pop.X, static_cast<Eigen::Index>(tournament(info, static_cast<std::size_t>(mu), rng)));
            auto b = copy_row(pop.X, static_cast<Eigen::Index>(tournament(info, static_cast<std::size_t>(mu), rng)));
            var.crossover(a, b, rng);
            for (auto* child : {&a, &b}) {
                if (made == n_off) {
                    break;
                }
                var.mutate(*child, rng);
                set_row(cx, made, *child);
                set_row(cy, made, eval(*child));
                ++made;
            }
        }

        Matrix all_x(mu + n_off, d);
        Matrix all_y(mu + n_off, m);
        all_x << pop.X, cx;
        all_y << pop.Y, cy;
        auto layers = non_dominated_sort(all_y);
        IndexList keep;
        for (const auto& front : layers.layers) {
            if (keep.size() + front.size() <= static_cast<std::size_t>(mu)) {
                keep.insert(keep.end(), front.begin(), front.end());
                continue;
            }
            auto cd = crowding_distance(all_y, front);
            std::vector<std::size_t> order(front.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return cd[i] > cd[j]; });
            for (std::size_t i = 0; keep.size() < static_cast<std::size_t>(mu); ++i) {
                keep.push_back(front[order[i]]);
            }
            break;
        }
        pop.X = select_rows(all_x, keep);
        pop.Y = select_rows(all_y, keep);
        notify(config, pop, eval.count());
    }
    return pop;
}

Population run_smsemoa(const Problem& problem, int mu, Evaluator& eval, const Variation& var,
        CounterRng& rng, const SolverConfig& config, RefPoint& ref)
{
    auto pop = initial_population(problem, mu, eval, rng);
    const auto m = pop.Y.cols();
    ref.r.assign(static_cast<std::size_t>(m), 0.0);
    for (Eigen::Index k = 0; k < m; ++k) {
        double lo = pop.Y.col(k).minCoeff();
        double hi = pop.Y.col(k).maxCoeff();
        ref.r[static_cast<std::size_t>(k)] = hi + 0.1 * std::max(hi - lo, 1e-6);
    }
    notify(config, pop, eval.count());

    Matrix all_x(mu + 1, pop.X.cols());
    Matrix all_y(mu + 1, m);
    while (eval.remaining() > 0) {
        auto i = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(mu)));
        auto j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(mu - 1)));
        if (j >= i) {
            ++j;
        }
        auto a = copy_row(pop.X, i);
        auto b = copy_row(pop.X, j);
        var.crossover(a, b, rng);
        var.mutate(a, rng);

        all_x.topRows(mu) = pop.X;
        all_y.topRows(mu) = pop.Y;
        set_row(all_x, mu, a);
        set_row(all_y, mu, eval(a));

        auto layers = non_dominated_sort(all_y);
        const auto& worst = layers.layers.back();
        std::size_t drop = worst.front();
        if (worst.size() > 1) {
            auto contrib = hv_contributions(select_rows(all_y, worst), ref);
            std::size_t best = 0;
            for (std::size_t k = 1; k < contrib.size(); ++k) {
                if (contrib[k] <= contrib[best]) {
                    best = k;
                }
            }
            drop = worst[best];
        }
        IndexList keep;
        keep.reserve(static_cast<std::size_t>(mu));
        for (std::size_t k = 0; k <= static_cast<std::size_t>(mu); ++k) {
            if (k != drop) {
                keep.push_back(k);
            }
        }
        pop.X = select_rows(all_x, keep);
        pop.Y = select_rows(all_y, keep);
        notify(config, pop, eval.count());
    }
    return pop;
}

std::vector<IndexList> weight_neighbourhoods(const Matrix& w, int t)
{
    const auto n = static_cast<std::size_t>(w.rows());
    const auto size = std::min(n, static_cast<std::size_t>(std::max(t, 2)));
    std::vector<IndexList> out(n);
    std::vector<std::pair<double, std::size_t>> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            d[j] = {(w.row(static_cast<Eigen::Index>(i)) - w.row(static_cast<Eigen::Index>(j))).squaredNorm(), j};
        }
        std::sort(d.begin(), d.end());
        for (std::size_t k = 0; k < size; ++k) {
            out[i].push_back(d[k].second);
        }
    }
    return out;
}

Population run_moead(const Problem& problem, const Matrix& weights, Evaluator& eval, const Variation& var,
        CounterRng& rng, const SolverConfig& config, int t)
{
    const int n = static_cast<int>(weights.rows());
    auto pop = initial_population(problem, n, eval, rng);
    const auto m = pop.Y.cols();
    auto hood = weight_neighbourhoods(weights, t);
    std::vector<double> ideal(static_cast<std::size_t>(m));
    for (Eigen::Index k = 0; k < m; ++k) {
        ideal[static_cast<std::size_t>(k)] = pop.Y.col(k).minCoeff();
    }
    notify(config, pop, eval.count(), ideal);

    std::vector<double> wj(static_cast<std::size_t>(m));
    while (eval.remaining() > 0) {
        for (int i = 0; i < n && eval.remaining() > 0; ++i) {
            const auto& nb = hood[static_cast<std::size_t>(i)];
            auto p = static_cast<std::size_t>(rng.below(nb.size()));
            auto q = static_cast<std::size_t>(rng.below(nb.size() - 1));
            if (q >= p) {
                ++q;
            }
            auto a = copy_row(pop.X, static_cast<Eigen::Index>(nb[p]));
            auto b = copy_row(pop.X, static_cast<Eigen::Index>(nb[q]));
            var.crossover(a, b, rng);
            var.mutate(a, rng);
            auto y = eval(a);
            for (std::size_t k = 0; k < y.size(); ++k) {
                ideal[k] = std::min(ideal[k], y[k]);
            }
            for (auto j : nb) {
                auto r = static_cast<Eigen::Index>(j);
                for (Eigen::Index k = 0; k < m; ++k) {
                    wj[static_cast<std::size_t>(k)] = weights(r, k);
                }
                auto current = copy_row(pop.Y, r);
                if (tchebycheff(y, wj, ideal) <= tchebycheff(current, wj, ideal)) {
                    set_row(pop.X, r, a);
                    set_row(pop.Y, r, y);
                }
            }
            notify(config, pop, eval.count(), ideal);
        }
    }
    return pop;
}

} // namespace

SolverRun run_solver(SolverId solver, const Problem& problem, int budget, std::uint64_t seed,
        const SolverConfig& config)
{
    const auto& spec = problem.spec();
    int mu = config.population > 0 ? config.population : default_population(spec.n_objectives);
    Matrix weights;
    if (solver == SolverId::MOEAD) {
        weights = moead_weights(spec.n_objectives, mu);
        mu = static_cast<int>(weights.rows());
    }
    if (mu < 2) {
        throw Error(ErrorCode::Config, "population size must be at least 2");
    }
    if (budget < mu) {
        throw Error(ErrorCode::Config, "budget " + std::to_string(budget) + " is smaller than the population size "
                + std::to_string(mu));
    }

    Variation var{spec.box_lower, spec.box_upper, config.sbx_eta, config.sbx_prob, config.mutation_eta,
            config.mutation_prob < 0.0 ? 1.0 / spec.dim : config.mutation_prob};
    CounterRng rng(stream_key(to_string(solver), {stream_key(spec.id), static_cast<std::uint64_t>(budget), seed}));
    Evaluator eval(problem, budget);

    SolverRun run;
    run.solver = solver;
    run.problem_id = spec.id;
    run.seed = seed;
    run.budget = budget;
    run.population = mu;
    run.hyperparameters = {
            {"population", mu},
            {"sbx_eta", var.sbx_eta},
            {"sbx_prob", var.sbx_prob},
            {"mutation_eta", var.pm_eta},
            {"mutation_prob", var.pm_prob},
    };

    Population pop;
    switch (solver) {
    case SolverId::NSGA2:
        run.hyperparameters["selection"] = "binary tournament on (rank, crowding distance)";
        pop = run_nsga2(problem, mu, eval, var, rng, config);
        break;
    case SolverId::SMSEMOA: {
        RefPoint ref;
        pop = run_smsemoa(problem, mu, eval, var, rng, config, ref);
        run.hyperparameters["hv_reference"] = ref.r;
        break;
    }
    case SolverId::MOEAD:
        run.hyperparameters["neighborhood"] = config.neighborhood;
        run.hyperparameters["scalarizing"] = "tchebycheff";
        pop = run_moead(problem, weights, eval, var, rng, config, config.neighborhood);
        break;
    }
    run.X = std::move(pop.X);
    run.Y = std::move(pop.Y);
    run.eval_count = eval.count();
    return run;
}

std::string run_stem(const SolverRun& run)
{
    std::string solver = to_string(run.solver);
    std::transform(solver.begin(), solver.end(), solver.begin(),
            [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return solver + "__" + run.problem_id + "__seed" + std::to_string(run.seed);
}

void write_run(const std::filesystem::path& dir, const SolverRun& run)
{
    io::CsvTable table;
    for (Eigen::Index j = 0; j < run.X.cols(); ++j) {
        table.header.push_back("x" + std::to_string(j + 1));
    }
    for (Eigen::Index k = 0; k < run.Y.cols(); ++k) {
        table.header.push_back("y" + std::to_string(k + 1));
    }
    for (Eigen::Index i = 0; i < run.X.rows(); ++i) {
        std::vector<std::string> row;
        for (Eigen::Index j = 0; j < run.X.cols(); ++j) {
            row.push_back(io::format_double(run.X(i, j)));
        }
        for (Eigen::Index k = 0; k < run.Y.cols(); ++k) {
            row.push_back(io::format_double(run.Y(i, k)));
        }
        table.rows.push_back(std::move(row));
    }
    auto stem = run_stem(run);
    io::write_csv(dir / (stem + ".csv"), table);
    nlohmann::json manifest = {
            {"schema", "moela.run/1"},
            {"solver", to_string(run.solver)},
            {"problem", run.problem_id},
            {"seed", run.seed},
            {"budget", run.budget},
            {"eval_count", run.eval_count},
            {"sample_size", run.sample_size},
            {"hyperparameters", run.hyperparameters},
    };
    io::write_json(dir / (stem + ".json"), manifest);
}

SolverRun read_run(const std::filesystem::path& csv_path)
{
    auto json_path = csv_path;
    json_path.replace_extension(".json");
    auto manifest = io::read_json(json_path);
    SolverRun run;
    try {
        run.solver = solver_from_string(manifest.at("solver").get<std::string>());
        run.problem_id = manifest.at("problem").get<std::string>();
        run.seed = manifest.at("seed").get<std::uint64_t>();
        run.budget = manifest.at("budget").get<int>();
        run.eval_count = manifest.value("eval_count", run.budget);
        run.sample_size = manifest.value("sample_size", 0);
        run.hyperparameters = manifest.value("hyperparameters", nlohmann::json::object());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Schema, "invalid run manifest " + json_path.string() + ": " + e.what());
    }
    auto table = io::read_csv(csv_path);
    Eigen::Index d = 0;
    Eigen::Index m = 0;
    for (const auto& h : table.header) {
        if (!h.empty() && h[0] == 'x') {
            ++d;
        } else if (!h.empty() && h[0] == 'y') {
            ++m;
        } else {
            throw Error(ErrorCode::Schema, "unexpected run column '" + h + "' in " + csv_path.string());
        }
    }
    run.X.resize(static_cast<Eigen::Index>(table.rows.size()), d);
    run.Y.resize(static_cast<Eigen::Index>(table.rows.size()), m);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        if (row.size() != table.header.size()) {
            throw Error(ErrorCode::Schema, "ragged row in " + csv_path.string());
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            run.X(static_cast<Eigen::Index>(i), j) = io::parse_double(row[static_cast<std::size_t>(j)]);
        }
        for (Eigen::Index k = 0; k < m; ++k) {
            run.Y(static_cast<Eigen::Index>(i), k) = io::parse_double(row[static_cast<std::size_t>(d + k)]);
        }
    }
    run.population = static_cast<int>(run.X.rows());
    return run;
}

} // namespace moela
