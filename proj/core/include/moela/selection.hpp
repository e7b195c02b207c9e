#ifndef MOELA_SELECTION_HPP
#define MOELA_SELECTION_HPP

#include "moela/feature_pipeline.hpp"
#include "moela/indicators.hpp"
#include "moela/solvers.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace moela {

inline constexpr std::size_t n_solvers = all_solvers.size();

// ---- performance -------------------------------------------------------

struct PerformanceRecord {
    std::string problem_id;
    int dim = 0;
    int sample_size = 0;
    SolverId solver = SolverId::NSGA2;
    std::uint64_t seed = 0;
    double hvn = 0.0;
};

using PerformanceTable = std::vector<PerformanceRecord>;

// Pools the non-dominated points of all fronts, takes the per-objective
// maximum and scales it by 1.1 (0.9 for negative maxima).
RefPoint reference_point(const std::vector<Matrix>& fronts);

// hv(Y, ref) / reference_hv, clipped to [0, 1]. Sets *clipped when the raw
// ratio exceeded 1 by more than 1e-9. Throws Error(Degenerate) when
// reference_hv is not positive.
double hvn(const Matrix& Y, const RefPoint& ref, double reference_hv, bool* clipped = nullptr);

// One record per run. Runs are grouped into instances by (problem id,
// sample size); each instance gets its own reference point and reference HV
// from the pooled non-dominated points of all its runs.
PerformanceTable performance_from_runs(const std::vector<SolverRun>& runs);

io::CsvTable performance_to_csv(const PerformanceTable& table);
PerformanceTable performance_from_csv(const io::CsvTable& csv);
PerformanceTable read_performance(const std::filesystem::path& path);
void write_performance(const std::filesystem::path& path, const PerformanceTable& table);

// ---- labels, VBS / SBS / RI --------------------------------------------

struct InstanceLabel {
    std::string problem_id;
    int dim = 0;
    int sample_size = 0;
    SolverId best_solver = SolverId::NSGA2;
    std::array<double, n_solvers> mean_hvn{};  // NaN for solvers without runs
};

// Best solver = highest mean HVN over seeds; ties go to the earlier solver
// in NSGA2, SMSEMOA, MOEAD order. Sorted by (problem id, dim, sample size).
std::vector<InstanceLabel> make_labels(const PerformanceTable& table);
io::CsvTable labels_to_csv(const std::vector<InstanceLabel>& labels);

// (selected - sbs) / (vbs - sbs); 0 when vbs == sbs.
double relative_improvement(double selected_hvn, double sbs_hvn, double vbs_hvn);

struct PolicySummary {
    SolverId sbs = SolverId::NSGA2;
    double selected_hvn = 0.0;  // mean over rows
    double sbs_hvn = 0.0;
    double vbs_hvn = 0.0;
    double ri = 0.0;
};

// SBS = solver with the highest mean HVN over `rows` (same tie order as the labels).
SolverId single_best_solver(const std::vector<std::array<double, n_solvers>>& rows);
PolicySummary summarize_policy(const std::vector<std::array<double, n_solvers>>& rows,
        const std::vector<SolverId>& picks);

// ---- rank contingency --------------------------------------------------

struct ContingencyRow {
    std::string family;
    SolverId solver = SolverId::NSGA2;
    double rank = 1.0;
    double count = 0.0;
};

// Ranks the solvers of every (instance, seed) by HVN, best first, with
// average ranks on ties, and counts ranks per family. Throws
// Error(IncompleteData) naming the first missing run.
std::vector<ContingencyRow> rank_contingency(const PerformanceTable& table);
io::CsvTable contingency_to_csv(const std::vector<ContingencyRow>& rows);

// Benchmark family of a problem id ("ZDT", "DTLZ", "MPM2", "BISPHERE"), or
// the text before the first '-' for ids outside the suite.
std::string family_of(const std::string& problem_id);

// ---- selector ------------------------------------------------------------

struct LabeledDataset {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;  // solver index
    std::vector<std::array<double, n_solvers>> mean_hvn;
    std::vector<std::string> groups;  // family per row
    std::vector<FeatureKey> keys;

    std::size_t size() const noexcept { return rows.size(); }
};

// Attaches the label of (problem id, dim, sample size) to every feature row.
// Rows whose sample size has no label fall back to the label with sample
// size 0. Rows without any label are dropped.
LabeledDataset join_labels(const FeatureTable& features, const std::vector<InstanceLabel>& labels);

struct SelectorConfig {
    int k = 5;
    int cv_folds = 3;
    int feature_cap = 40;
    std::uint64_t split_seed = 0;
    double test_fraction = 0.2;
    unsigned jobs = 1;
};

struct SelectorModel {
    int k = 5;
    std::vector<std::string> selected_features;
    std::vector<double> mean;  // per selected feature, from the training split
    std::vector<double> std;
    std::vector<std::vector<double>> train_rows;  // z-scored selected features
    std::vector<int> train_labels;
    std::vector<FeatureKey> train_keys;

    int predict(std::span<const double> raw_selected) const;
};

struct FamilyScore {
    std::size_t n = 0;
    double f1_macro = 0.0;
    PolicySummary policy;
};

struct SelectorReport {
    double f1_macro = 0.0;
    double ri = 0.0;
    double cv_f1 = 0.0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::size_t imputed_values = 0;
    PolicySummary policy;
    std::map<std::string, FamilyScore> per_family;
    std::vector<std::string> selected_features;
};

struct TrainResult {
    SelectorModel model;
    SelectorReport report;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

// Macro-averaged F1 over the classes occurring in truth or prediction.
double macro_f1(const std::vector<int>& truth, const std::vector<int>& predicted);

// k-NN vote: majority among the k nearest rows (Euclidean, index order on
// distance ties); a tied vote goes to the class whose member is nearest.
int knn_vote(const std::vector<std::vector<double>>& train, const std::vector<int>& labels,
        std::span<const double> query, int k);

// Deterministic 80/20 split of [0, n) keyed by split_seed.
void split_rows(std::size_t n, std::uint64_t split_seed, double test_fraction,
        std::vector<std::size_t>& train, std::vector<std::size_t>& test);

// z-score fit on the training split, sequential forward-floating selection
// maximising cross-validated macro-F1, k-NN on the selected features.
// Throws Error(Degenerate) when every training label is the same.
TrainResult train_selector(const LabeledDataset& data, const SelectorConfig& config);

// Applies a model to the given rows of a dataset.
SelectorReport evaluate_selector(const SelectorModel& model, const LabeledDataset& data,
        const std::vector<std::size_t>& rows);

// Mean RI and macro-F1 of a uniformly random pick over `trials` draws.
struct RandomBaseline {
    double mean_ri = 0.0;
    double mean_f1 = 0.0;
};
RandomBaseline random_selector(const LabeledDataset& data, const std::vector<std::size_t>& rows,
        int trials, std::uint64_t seed);

nlohmann::json to_json(const SelectorModel& model);
SelectorModel model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SelectorReport& report);

} // namespace moela

#endif
