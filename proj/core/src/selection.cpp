#include "moela/selection.hpp"

#include "moela/dominance.hpp"
#include "moela/parallel.hpp"
#include "moela/rng.hpp"
#include "moela/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>

namespace moela {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double improvement_threshold = 1e-6;

std::size_t solver_index(SolverId id)
{
    return static_cast<std::size_t>(id);
}

std::string instance_name(const std::string& problem, int dim, int sample_size)
{
    return problem + " (d=" + std::to_string(dim) + ", sample_size=" + std::to_string(sample_size) + ")";
}

} // namespace

RefPoint reference_point(const std::vector<Matrix>& fronts)
{
    if (fronts.empty()) {
        throw Error(ErrorCode::Contract, "reference point needs at least one run");
    }
    Eigen::Index rows = 0;
    for (const auto& f : fronts) {
        rows += f.rows();
    }
    if (rows == 0) {
        throw Error(ErrorCode::Contract, "reference point needs at least one point");
    }
    Matrix pooled(rows, fronts.front().cols());
    Eigen::Index at = 0;
    for (const auto& f : fronts) {
        if (f.cols() != pooled.cols()) {
            throw Error(ErrorCode::Contract, "runs disagree on the number of objectives");
        }
        pooled.middleRows(at, f.rows()) = f;
        at += f.rows();
    }
    auto nd = select_rows(pooled, nd_filter(pooled));
    RefPoint ref;
    for (Eigen::Index k = 0; k < nd.cols(); ++k) {
        double mx = nd.col(k).maxCoeff();
        ref.r.push_back(mx < 0.0 ? 0.9 * mx : 1.1 * mx);
    }
    return ref;
}

double hvn(const Matrix& Y, const RefPoint& ref, double reference_hv, bool* clipped)
{
    if (!(reference_hv > 0.0)) {
        throw Error(ErrorCode::Degenerate, "reference hypervolume is zero");
    }
    double ratio = hv(Y, ref) / reference_hv;
    if (clipped) {
        *clipped = ratio > 1.0 + 1e-9;
    }
    return std::clamp(ratio, 0.0, 1.0);
}

PerformanceTable performance_from_runs(const std::vector<SolverRun>& runs)
{
    std::map<std::pair<std::string, int>, std::vector<std::size_t>> instances;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        instances[{runs[i].problem_id, runs[i].sample_size}].push_back(i);
    }
    PerformanceTable table;
    for (const auto& [key, members] : instances) {
        std::vector<Matrix> fronts;
        for (auto i : members) {
            fronts.push_back(runs[i].Y);
        }
        auto ref = reference_point(fronts);
        Eigen::Index rows = 0;
        for (const auto& f : fronts) {
            rows += f.rows();
        }
        Matrix pooled(rows, fronts.front().cols());
        Eigen::Index at = 0;
        for (const auto& f : fronts) {
            pooled.middleRows(at, f.rows()) = f;
            at += f.rows();
        }
        double reference_hv = hv(select_rows(pooled, nd_filter(pooled)), ref);
        if (!(reference_hv > 0.0)) {
            throw Error(ErrorCode::Degenerate, "reference hypervolume of " + key.first + " is zero");
        }
        for (auto i : members) {
            const auto& run = runs[i];
            table.push_back({run.problem_id, static_cast<int>(run.X.cols()), run.sample_size, run.solver, run.seed,
                    hvn(run.Y, ref, reference_hv)});
        }
    }
    std::sort(table.begin(), table.end(), [](const PerformanceRecord& a, const PerformanceRecord& b) {
        return std::tie(a.problem_id, a.dim, a.sample_size, a.solver, a.seed)
                < std::tie(b.problem_id, b.dim, b.sample_size, b.solver, b.seed);
    });
    return table;
}

io::CsvTable performance_to_csv(const PerformanceTable& table)
{
    io::CsvTable csv;
    csv.header = {"problem_id", "dim", "sample_size", "solver", "seed", "hvn"};
    for (const auto& r : table) {
        csv.rows.push_back({r.problem_id, std::to_string(r.dim), std::to_string(r.sample_size), to_string(r.solver),
                std::to_string(r.seed), io::format_double(r.hvn)});
    }
    return csv;
}

PerformanceTable performance_from_csv(const io::CsvTable& csv)
{
    const std::vector<std::string> expected = {"problem_id", "dim", "sample_size", "solver", "seed", "hvn"};
    if (csv.header != expected) {
        throw Error(ErrorCode::Schema, "performance CSV header must be problem_id,dim,sample_size,solver,seed,hvn");
    }
    PerformanceTable table;
    for (const auto& row : csv.rows) {
        if (row.size() != expected.size()) {
            throw Error(ErrorCode::Schema, "ragged row in performance CSV");
        }
        table.push_back({row[0], static_cast<int>(io::parse_int(row[1])), static_cast<int>(io::parse_int(row[2])),
                solver_from_string(row[3]), static_cast<std::uint64_t>(io::parse_int(row[4])),
                io::parse_double(row[5])});
    }
    return table;
}

PerformanceTable read_performance(const std::filesystem::path& path)
{
    return performance_from_csv(io::read_csv(path));
}

void write_performance(const std::filesystem::path& path, const PerformanceTable& table)
{
    io::write_csv(path, performance_to_csv(table));
}

std::vector<InstanceLabel> make_labels(const PerformanceTable& table)
{
    struct Acc {
        std::array<double, n_solvers> sum{};
        std::array<int, n_solvers> count{};
    };
    std::map<std::tuple<std::string, int, int>, Acc> acc;
    for (const auto& r : table) {
        auto& a = acc[{r.problem_id, r.dim, r.sample_size}];
        a.sum[solver_index(r.solver)] += r.hvn;
        a.count[solver_index(r.solver)] += 1;
    }
    std::vector<InstanceLabel> labels;
    for (const auto& [key, a] : acc) {
        InstanceLabel label{std::get<0>(key), std::get<1>(key), std::get<2>(key), SolverId::NSGA2, {}};
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < n_solvers; ++s) {
            label.mean_hvn[s] = a.count[s] > 0 ? a.sum[s] / a.count[s] : nan;
            if (a.count[s] > 0 && label.mean_hvn[s] > best) {
                best = label.mean_hvn[s];
                label.best_solver = all_solvers[s];
            }
        }
        labels.push_back(label);
    }
    return labels;
}

io::CsvTable labels_to_csv(const std::vector<InstanceLabel>& labels)
{
    io::CsvTable csv;
    csv.header = {"problem_id", "dim", "sample_size", "best_solver"};
    for (auto id : all_solvers) {
        csv.header.push_back(std::string("mean_hvn_") + to_string(id));
    }
    for (const auto& l : labels) {
        std::vector<std::string> row{l.problem_id, std::to_string(l.dim), std::to_string(l.sample_size),
                to_string(l.best_solver)};
        for (double v : l.mean_hvn) {
            row.push_back(io::format_double(v));
        }
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

double relative_improvement(double selected_hvn, double sbs_hvn, double vbs_hvn)
{
    if (vbs_hvn == sbs_hvn) {
        return 0.0;
    }
    return (selected_hvn - sbs_hvn) / (vbs_hvn - sbs_hvn);
}

SolverId single_best_solver(const std::vector<std::array<double, n_solvers>>& rows)
{
    std::array<double, n_solvers> sum{};
    for (const auto& r : rows) {
        for (std::size_t s = 0; s < n_solvers; ++s) {
            sum[s] += r[s];
        }
    }
    std::size_t best = 0;
    for (std::size_t s = 1; s < n_solvers; ++s) {
        if (sum[s] > sum[best]) {
            best = s;
        }
    }
    return all_solvers[best];
}

PolicySummary summarize_policy(const std::vector<std::array<double, n_solvers>>& rows,
        const std::vector<SolverId>& picks)
{
    if (rows.size() != picks.size()) {
        throw Error(ErrorCode::Contract, "one pick per row is required");
    }
    PolicySummary out;
    if (rows.empty()) {
        return out;
    }
    out.sbs = single_best_solver(rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.selected_hvn += rows[i][solver_index(picks[i])];
        out.sbs_hvn += rows[i][solver_index(out.sbs)];
        out.vbs_hvn += *std::max_element(rows[i].begin(), rows[i].end());
    }
    auto n = static_cast<double>(rows.size());
    out.selected_hvn /= n;
    out.sbs_hvn /= n;
    out.vbs_hvn /= n;
    out.ri = relative_improvement(out.selected_hvn, out.sbs_hvn, out.vbs_hvn);
    return out;
}

std::string family_of(const std::string& problem_id)
{
    try {
        return to_string(problem_from_id(problem_id).family);
    } catch (const Error&) {
        return problem_id.substr(0, problem_id.find('-'));
    }
}

std::vector<ContingencyRow> rank_contingency(const PerformanceTable& table)
{
    using Key = std::tuple<std::string, int, int, std::uint64_t>;
    std::map<Key, std::array<std::optional<double>, n_solvers>> groups;
    for (const auto& r : table) {
        groups[{r.problem_id, r.dim, r.sample_size, r.seed}][solver_index(r.solver)] = r.hvn;
    }
    std::map<std::tuple<std::string, std::size_t, double>, double> counts;
    for (const auto& [key, values] : groups) {
        std::vector<double> negated;
        for (std::size_t s = 0; s < n_solvers; ++s) {
            if (!values[s]) {
                throw Error(ErrorCode::IncompleteData, std::string("missing ") + to_string(all_solvers[s])
                        + " run for " + instance_name(std::get<0>(key), std::get<1>(key), std::get<2>(key))
                        + ", seed " + std::to_string(std::get<3>(key)));
            }
            negated.push_back(-*values[s]);
        }
        auto ranks = stats::average_ranks(negated);
        auto family = family_of(std::get<0>(key));
        for (std::size_t s = 0; s < n_solvers; ++s) {
            counts[{family, s, ranks[s]}] += 1.0;
        }
    }
    std::vector<ContingencyRow> rows;
    for (const auto& [key, count] : counts) {
        rows.push_back({std::get<0>(key), all_solvers[std::get<1>(key)], std::get<2>(key), count});
    }
    return rows;
}

io::CsvTable contingency_to_csv(const std::vector<ContingencyRow>& rows)
{
    io::CsvTable csv;
    csv.header = {"family", "solver", "rank", "count"};
    for (const auto& r : rows) {
        csv.rows.push_back({r.family, to_string(r.solver), io::format_double(r.rank), io::format_double(r.count)});
    }
    return csv;
}

LabeledDataset join_labels(const FeatureTable& features, const std::vector<InstanceLabel>& labels)
{
    std::map<std::tuple<std::string, int, int>, const InstanceLabel*> index;
    for (const auto& l : labels) {
        index[{l.problem_id, l.dim, l.sample_size}] = &l;
    }
    LabeledDataset data;
    data.columns = features.columns;
    for (std::size_t i = 0; i < features.size(); ++i) {
        const auto& key = features.keys[i];
        auto it = index.find({key.problem_id, key.dim, key.sample_size});
        if (it == index.end()) {
            it = index.find({key.problem_id, key.dim, 0});
        }
        if (it == index.end()) {
            continue;
        }
        const auto& label = *it->second;
        for (std::size_t s = 0; s < n_solvers; ++s) {
            if (std::isnan(label.mean_hvn[s])) {
                throw Error(ErrorCode::IncompleteData, std::string("no ") + to_string(all_solvers[s]) + " runs for "
                        + instance_name(label.problem_id, label.dim, label.sample_size));
            }
        }
        data.rows.push_back(features.rows[i]);
        data.labels.push_back(static_cast<int>(solver_index(label.best_solver)));
        data.mean_hvn.push_back(label.mean_hvn);
        data.groups.push_back(family_of(key.problem_id));
        data.keys.push_back(key);
    }
    return data;
}

double macro_f1(const std::vector<int>& truth, const std::vector<int>& predicted)
{
    if (truth.size() != predicted.size()) {
        throw Error(ErrorCode::Contract, "macro_f1 needs equally long label vectors");
    }
    std::set<int> classes(truth.begin(), truth.end());
    classes.insert(predicted.begin(), predicted.end());
    if (classes.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (int c : classes) {
        double tp = 0;
        double fp = 0;
        double fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            bool t = truth[i] == c;
            bool p = predicted[i] == c;
            tp += t && p;
            fp += !t && p;
            fn += t && !p;
        }
        total += 2 * tp / (2 * tp + fp + fn);
    }
    return total / static_cast<double>(classes.size());
}

namespace {

// neighbours: (distance, row) pairs; only the k smallest are used.
int vote(std::vector<std::pair<double, std::size_t>>& neighbours, const std::vector<int>& labels, int k)
{
    auto kk = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 1)), neighbours.size());
    std::partial_sort(neighbours.begin(), neighbours.begin() + static_cast<std::ptrdiff_t>(kk), neighbours.end());
    std::map<int, std::pair<int, std::size_t>> tally;  // class -> (count, first position)
    for (std::size_t i = 0; i < kk; ++i) {
        int c = labels[neighbours[i].second];
        auto [it, fresh] = tally.try_emplace(c, 0, i);
        it->second.first += 1;
    }
    int best = -1;
    std::pair<int, std::size_t> best_score{-1, 0};
    for (const auto& [c, score] : tally) {
        if (score.first > best_score.first || (score.first == best_score.first && score.second < best_score.second)) {
            best = c;
            best_score = score;
        }
    }
    return best;
}

} // namespace

int knn_vote(const std::vector<std::vector<double>>& train, const std::vector<int>& labels,
        std::span<const double> query, int k)
{
    if (train.empty()) {
        throw Error(ErrorCode::Contract, "k-NN needs training rows");
    }
    std::vector<std::pair<double, std::size_t>> nb(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < query.size(); ++j) {
            double diff = train[i][j] - query[j];
            d += diff * diff;
        }
        nb[i] = {d, i};
    }
    return vote(nb, labels, k);
}

int SelectorModel::predict(std::span<const double> raw_selected) const
{
    std::vector<double> z(raw_selected.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        z[j] = std::isnan(raw_selected[j]) ? 0.0 : (raw_selected[j] - mean[j]) / std[j];
    }
    return knn_vote(train_rows, train_labels, z, k);
}

void split_rows(std::size_t n, std::uint64_t split_seed, double test_fraction,
        std::vector<std::size_t>& train, std::vector<std::size_t>& test)
{
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    CounterRng rng(stream_key("split", {split_seed}));
    shuffle(std::span<std::size_t>(order), rng);
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
    if (n >= 2) {
        n_test = std::clamp<std::size_t>(n_test, 1, n - 1);
    }
    test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
    train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
    std::sort(test.begin(), test.end());
    std::sort(train.begin(), train.end());
}

namespace {

struct Normalised {
    std::vector<double> mean;
    std::vector<double> std;
    std::vector<bool> usable;
};

Normalised fit_zscore(const LabeledDataset& data, const std::vector<std::size_t>& rows)
{
    const auto cols = data.columns.size();
    Normalised z{std::vector<double>(cols, 0.0), std::vector<double>(cols, 0.0), std::vector<bool>(cols, false)};
    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<double> v;
        for (auto r : rows) {
            if (!std::isnan(data.rows[r][c])) {
                v.push_back(data.rows[r][c]);
            }
        }
        if (v.size() < 2) {
            continue;
        }
        z.mean[c] = stats::mean(v);
        z.std[c] = stats::population_std(v);
        z.usable[c] = z.std[c] > 1e-12 * std::max(1.0, std::abs(z.mean[c]));
    }
    return z;
}

class CrossValidator {
public:
    // Z is row-major over the training rows only: Z[i][c].
    CrossValidator(std::vector<std::vector<double>> Z, std::vector<int> labels, int folds, int k,
            std::uint64_t split_seed)
        : z_(std::move(Z)), labels_(std::move(labels)), k_(k), n_(z_.size())
    {
        std::vector<std::size_t> order(n_);
        std::iota(order.begin(), order.end(), std::size_t{0});
        CounterRng rng(stream_key("cv-folds", {split_seed}));
        shuffle(std::span<std::size_t>(order), rng);
        fold_.assign(n_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            fold_[order[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
        }
        folds_ = folds;
        base_.assign(n_ * n_, 0.0);
    }

    // Squared distances over `selected`, cached as the base for the next candidates.
    void set_base(const std::vector<std::size_t>& selected)
    {
        std::fill(base_.begin(), base_.end(), 0.0);
        for (auto c : selected) {
            for (std::size_t i = 0; i < n_; ++i) {
                for (std::size_t j = 0; j < n_; ++j) {
                    double d = z_[i][c] - z_[j][c];
                    base_[i * n_ + j] += d * d;
                }
            }
        }
    }

    // Mean macro-F1 over folds with feature `c` added to (sign = +1) or removed from (sign = -1) the base.
    double score(std::size_t c, double sign) const
    {
        std::vector<double> dist(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                double d = z_[i][c] - z_[j][c];
                dist[i * n_ + j] = std::max(0.0, base_[i * n_ + j] + sign * d * d);
            }
        }
        return score_matrix(dist);
    }

    double score_base() const { return score_matrix(base_); }

private:
    double score_matrix(const std::vector<double>& dist) const
    {
        double total = 0.0;
        std::vector<std::pair<double, std::size_t>> nb;
        for (int f = 0; f < folds_; ++f) {
            std::vector<int> truth;
            std::vector<int> pred;
            for (std::size_t i = 0; i < n_; ++i) {
                if (fold_[i] != f) {
                    continue;
                }
                nb.clear();
                for (std::size_t j = 0; j < n_; ++j) {
                    if (fold_[j] != f) {
                        nb.emplace_back(dist[i * n_ + j], j);
                    }
                }
                truth.push_back(labels_[i]);
                pred.push_back(vote(nb, labels_, k_));
            }
            total += macro_f1(truth, pred);
        }
        return total / folds_;
    }

    std::vector<std::vector<double>> z_;
    std::vector<int> labels_;
    int k_;
    std::size_t n_;
    std::vector<int> fold_;
    int folds_ = 3;
    std::vector<double> base_;
};

std::vector<std::vector<double>> zscore_rows(const LabeledDataset& data, const std::vector<std::size_t>& rows,
        const Normalised& z, std::size_t* imputed)
{
    std::vector<std::vector<double>> out;
    for (auto r : rows) {
        std::vector<double> v(data.columns.size(), 0.0);
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (!z.usable[c]) {
                continue;
            }
            double x = data.rows[r][c];
            if (std::isnan(x)) {
                if (imputed) {
                    ++*imputed;
                }
                continue;
            }
            v[c] = (x - z.mean[c]) / z.std[c];
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

TrainResult train_selector(const LabeledDataset& data, const SelectorConfig& config)
{
    if (config.cv_folds < 2 || config.k < 1 || config.feature_cap < 1) {
        throw Error(ErrorCode::Config, "selector needs cv_folds >= 2, k >= 1 and feature_cap >= 1");
    }
    if (data.size() < static_cast<std::size_t>(3 * config.cv_folds)) {
        throw Error(ErrorCode::Config, "selector needs at least " + std::to_string(3 * config.cv_folds)
                + " labelled rows, got " + std::to_string(data.size()));
    }
    TrainResult result;
    split_rows(data.size(), config.split_seed, config.test_fraction, result.train_rows, result.test_rows);

    std::vector<int> train_labels;
    for (auto r : result.train_rows) {
        train_labels.push_back(data.labels[r]);
    }
    if (std::all_of(train_labels.begin(), train_labels.end(), [&](int l) { return l == train_labels.front(); })) {
        throw Error(ErrorCode::Degenerate, "all training labels are " + std::string(to_string(
                all_solvers[static_cast<std::size_t>(train_labels.front())])));
    }

    auto norm = fit_zscore(data, result.train_rows);
    std::size_t imputed = 0;
    auto z_train = zscore_rows(data, result.train_rows, norm, &imputed);
    CrossValidator cv(z_train, train_labels, config.cv_folds, config.k, config.split_seed);

    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < data.columns.size(); ++c) {
        if (norm.usable[c]) {
            candidates.push_back(c);
        }
    }
    if (candidates.empty()) {
        throw Error(ErrorCode::Degenerate, "every feature is constant on the training split");
    }

    std::vector<std::size_t> selected;
    double best = -std::numeric_limits<double>::infinity();
    const auto cap = static_cast<std::size_t>(config.feature_cap);
    while (selected.size() < cap) {
        cv.set_base(selected);
        std::vector<std::size_t> pool;
        for (auto c : candidates) {
            if (std::find(selected.begin(), selected.end(), c) == selected.end()) {
                pool.push_back(c);
            }
        }
        if (pool.empty()) {
            break;
        }
        std::vector<double> scores(pool.size());
        parallel_for(pool.size(), config.jobs, [&](std::size_t i) { scores[i] = cv.score(pool[i], 1.0); });
        auto pick = static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
        if (!(scores[pick] > best + improvement_threshold)) {
            break;
        }
        selected.push_back(pool[pick]);
        best = scores[pick];

        // Conditional backward elimination; the feature just added stays.
        while (selected.size() >= 2) {
            cv.set_base(selected);
            std::vector<double> drop(selected.size() - 1);
            parallel_for(drop.size(), config.jobs, [&](std::size_t i) { drop[i] = cv.score(selected[i], -1.0); });
            auto worst = static_cast<std::size_t>(std::max_element(drop.begin(), drop.end()) - drop.begin());
            if (!(drop[worst] > best + improvement_threshold)) {
                break;
            }
            best = drop[worst];
            selected.erase(selected.begin() + static_cast<std::ptrdiff_t>(worst));
        }
    }

    auto& model = result.model;
    model.k = config.k;
    for (auto c : selected) {
        model.selected_features.push_back(data.columns[c]);
        model.mean.push_back(norm.mean[c]);
        model.std.push_back(norm.std[c]);
    }
    for (std::size_t i = 0; i < result.train_rows.size(); ++i) {
        std::vector<double> row;
        for (auto c : selected) {
            row.push_back(z_train[i][c]);
        }
        model.train_rows.push_back(std::move(row));
        model.train_labels.push_back(train_labels[i]);
        model.train_keys.push_back(data.keys[result.train_rows[i]]);
    }

    result.report = evaluate_selector(model, data, result.test_rows);
    result.report.cv_f1 = best;
    result.report.n_train = result.train_rows.size();
    result.report.imputed_values += imputed;
    return result;
}

SelectorReport evaluate_selector(const SelectorModel& model, const LabeledDataset& data,
        const std::vector<std::size_t>& rows)
{
    std::vector<std::size_t> cols;
    for (const auto& name : model.selected_features) {
        auto it = std::find(data.columns.begin(), data.columns.end(), name);
        if (it == data.columns.end()) {
            throw Error(ErrorCode::Schema, "feature table lacks selected feature '" + name + "'");
        }
        cols.push_back(static_cast<std::size_t>(it - data.columns.begin()));
    }
    SelectorReport report;
    report.selected_features = model.selected_features;
    report.n_test = rows.size();

    std::vector<int> truth;
    std::vector<int> pred;
    std::vector<SolverId> picks;
    std::vector<std::array<double, n_solvers>> hvns;
    std::map<std::string, std::vector<std::size_t>> by_family;
    std::vector<double> q(cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto r = rows[i];
        for (std::size_t j = 0; j < cols.size(); ++j) {
            q[j] = data.rows[r][cols[j]];
            report.imputed_values += std::isnan(q[j]);
        }
        int p = model.predict(q);
        truth.push_back(data.labels[r]);
        pred.push_back(p);
        picks.push_back(all_solvers[static_cast<std::size_t>(p)]);
        hvns.push_back(data.mean_hvn[r]);
        by_family[data.groups[r]].push_back(i);
    }
    report.f1_macro = macro_f1(truth, pred);
    report.policy = summarize_policy(hvns, picks);
    report.ri = report.policy.ri;
    for (const auto& [family, members] : by_family) {
        std::vector<int> t;
        std::vector<int> p;
        std::vector<SolverId> fp;
        std::vector<std::array<double, n_solvers>> fh;
        for (auto i : members) {
            t.push_back(truth[i]);
            p.push_back(pred[i]);
            fp.push_back(picks[i]);
            fh.push_back(hvns[i]);
        }
        report.per_family[family] = {members.size(), macro_f1(t, p), summarize_policy(fh, fp)};
    }
    return report;
}

RandomBaseline random_selector(const LabeledDataset& data, const std::vector<std::size_t>& rows,
        int trials, std::uint64_t seed)
{
    RandomBaseline out;
    if (trials <= 0 || rows.empty()) {
        return out;
    }
    CounterRng rng(stream_key("random-selector", {seed}));
    std::vector<std::array<double, n_solvers>> hvns;
    std::vector<int> truth;
    for (auto r : rows) {
        hvns.push_back(data.mean_hvn[r]);
        truth.push_back(data.labels[r]);
    }
    for (int t = 0; t < trials; ++t) {
        std::vector<int> pred;
        std::vector<SolverId> picks;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto s = static_cast<std::size_t>(rng.below(n_solvers));
            pred.push_back(static_cast<int>(s));
            picks.push_back(all_solvers[s]);
        }
        out.mean_ri += summarize_policy(hvns, picks).ri;
        out.mean_f1 += macro_f1(truth, pred);
    }
    out.mean_ri /= trials;
    out.mean_f1 /= trials;
    return out;
}

nlohmann::json to_json(const SelectorModel& model)
{
    nlohmann::json norm = nlohmann::json::array();
    for (std::size_t j = 0; j < model.selected_features.size(); ++j) {
        norm.push_back({{"feature", model.selected_features[j]}, {"mean", model.mean[j]}, {"std", model.std[j]}});
    }
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < model.train_rows.size(); ++i) {
        const auto& key = model.train_keys.at(i);
        rows.push_back({{"problem_id", key.problem_id}, {"dim", key.dim}, {"m", key.n_objectives},
                {"sample_size", key.sample_size}, {"seed", key.seed},
                {"label", to_string(all_solvers[static_cast<std::size_t>(model.train_labels[i])])},
                {"values", model.train_rows[i]}});
    }
    return {{"schema", "moela.selector/1"}, {"kind", "knn"}, {"k", model.k},
            {"selected_features", model.selected_features}, {"normalization", norm}, {"training_rows", rows}};
}

SelectorModel model_from_json(const nlohmann::json& j)
{
    SelectorModel model;
    try {
        if (j.at("kind").get<std::string>() != "knn") {
            throw Error(ErrorCode::Unsupported, "unknown selector kind " + j.at("kind").dump());
        }
        model.k = j.at("k").get<int>();
        model.selected_features = j.at("selected_features").get<std::vector<std::string>>();
        for (const auto& n : j.at("normalization")) {
            model.mean.push_back(n.at("mean").get<double>());
            model.std.push_back(n.at("std").get<double>());
        }
        for (const auto& r : j.at("training_rows")) {
            model.train_keys.push_back({r.at("problem_id").get<std::string>(), r.at("dim").get<int>(),
                    r.at("m").get<int>(), r.at("sample_size").get<int>(), r.at("seed").get<std::uint64_t>()});
            model.train_labels.push_back(static_cast<int>(solver_from_string(r.at("label").get<std::string>())));
            model.train_rows.push_back(r.at("values").get<std::vector<double>>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Schema, std::string("invalid selector model: ") + e.what());
    }
    if (model.selected_features.empty() || model.mean.size() != model.selected_features.size()) {
        throw Error(ErrorCode::Schema, "selector model has no usable feature list");
    }
    return model;
}

namespace {

nlohmann::json to_json(const PolicySummary& p)
{
    return {{"sbs", to_string(p.sbs)}, {"selected_hvn", p.selected_hvn}, {"sbs_hvn", p.sbs_hvn},
            {"vbs_hvn", p.vbs_hvn}, {"ri", p.ri}};
}

} // namespace

nlohmann::json to_json(const SelectorReport& report)
{
    nlohmann::json families = nlohmann::json::object();
    for (const auto& [family, score] : report.per_family) {
        families[family] = {{"n", score.n}, {"f1_macro", score.f1_macro}, {"ri", score.policy.ri},
                {"policy", to_json(score.policy)}};
    }
    return {{"schema", "moela.selector-report/1"}, {"f1_macro", report.f1_macro}, {"ri", report.ri},
            {"cv_f1", report.cv_f1}, {"n_train", report.n_train}, {"n_test", report.n_test},
            {"imputed_values", report.imputed_values}, {"selected_features", report.selected_features},
            {"policy", to_json(report.policy)}, {"per_family", families}};
}

} // namespace moela
