// moela: command-line front end for sampling, landscape features, solver
// runs, performance tables, selector training and feature analyses.

#include "moela/analysis.hpp"
#include "moela/catalog.hpp"
#include "moela/feature_pipeline.hpp"
#include "moela/io.hpp"
#include "moela/parallel.hpp"
#include "moela/problems.hpp"
#include "moela/sampling.hpp"
#include "moela/selection.hpp"
#include "moela/solvers.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace moela;

namespace {

constexpr int exit_usage = 2;

int exit_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Domain: return 3;
    case ErrorCode::Contract: return 4;
    case ErrorCode::Config: return 5;
    case ErrorCode::Unsupported: return 6;
    case ErrorCode::Degenerate: return 7;
    case ErrorCode::IncompleteData: return 8;
    case ErrorCode::Io: return 9;
    case ErrorCode::Schema: return 10;
    }
    return 1;
}

const char* exit_code_help =
        "Exit codes:\n"
        "  0 success          1 internal error      2 usage (unknown flag, bad value)\n"
        "  3 domain           4 contract            5 config\n"
        "  6 unsupported      7 degenerate          8 incomplete-data\n"
        "  9 io (missing or unwritable file)       10 schema (malformed input file)\n"
        "Errors are printed as one line: error: <code>: <message>\n";

std::string one_line(std::string text)
{
    for (auto& c : text) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return text;
}

void require_file(const fs::path& path)
{
    if (!fs::is_regular_file(path)) {
        throw Error(ErrorCode::Io, "input file not found: " + path.string());
    }
}

void require_dir(const fs::path& path)
{
    if (!fs::is_directory(path)) {
        throw Error(ErrorCode::Io, "input directory not found: " + path.string());
    }
}

// Output paths must not name an existing directory and their parent must be creatable.
void require_writable(const fs::path& path)
{
    if (path.empty()) {
        return;
    }
    if (fs::is_directory(path)) {
        throw Error(ErrorCode::Io, "output path is a directory: " + path.string());
    }
    auto parent = path.parent_path();
    std::error_code ec;
    if (!parent.empty() && !fs::exists(parent)) {
        fs::create_directories(parent, ec);
        if (ec) {
            throw Error(ErrorCode::Io, "cannot create directory " + parent.string() + ": " + ec.message());
        }
    }
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(static_cast<int>(io::parse_int(item)));
        }
    }
    if (out.empty()) {
        throw Error(ErrorCode::Config, "empty integer list '" + text + "'");
    }
    return out;
}

// "0..4" (inclusive range) or a comma list.
std::vector<std::uint64_t> parse_seed_list(const std::string& text)
{
    std::vector<std::uint64_t> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        auto lo = io::parse_int(text.substr(0, dots));
        auto hi = io::parse_int(text.substr(dots + 2));
        if (lo < 0 || hi < lo) {
            throw Error(ErrorCode::Config, "invalid seed range '" + text + "'");
        }
        for (auto s = lo; s <= hi; ++s) {
            out.push_back(static_cast<std::uint64_t>(s));
        }
        return out;
    }
    for (int s : parse_int_list(text)) {
        if (s < 0) {
            throw Error(ErrorCode::Config, "seeds must be non-negative");
        }
        out.push_back(static_cast<std::uint64_t>(s));
    }
    return out;
}

std::set<Family> parse_families(const std::string& text)
{
    std::set<Family> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.insert(family_from_string(item));
        }
    }
    return out;
}

// A suite file is either a list of problem specs / problem ids, or an object
// {dims, objectives, families, mpm2_seed} expanded with build_suite.
std::vector<ProblemSpec> load_suite(const fs::path& path)
{
    auto j = io::read_json(path);
    std::vector<ProblemSpec> suite;
    try {
        if (j.is_array()) {
            for (const auto& item : j) {
                suite.push_back(item.is_string() ? problem_from_id(item.get<std::string>()) : spec_from_json(item));
            }
            return suite;
        }
        SuiteRequest request;
        for (int d : j.at("dims")) {
            request.dims.insert(d);
        }
        for (int m : j.value("objectives", std::vector<int>{2})) {
            request.objectives.insert(m);
        }
        for (const auto& f : j.at("families")) {
            request.families.insert(family_from_string(f.get<std::string>()));
        }
        request.mpm2_seed = j.value("mpm2_seed", std::uint64_t{0});
        return build_suite(request);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Schema, "invalid suite file " + path.string() + ": " + e.what());
    }
}

std::vector<std::string> load_subset(const fs::path& path)
{
    auto j = io::read_json(path);
    try {
        if (j.is_array()) {
            return j.get<std::vector<std::string>>();
        }
        if (j.contains("selected_features")) {
            return j.at("selected_features").get<std::vector<std::string>>();
        }
        return j.at("features").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Schema, "invalid feature subset file " + path.string() + ": " + e.what());
    }
}

std::string lower(std::string s)
{
    for (auto& c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
}

struct Options {
    bool json = false;

    // problems list
    std::string families;
    std::vector<int> dims;
    std::vector<int> objectives;
    std::uint64_t mpm2_seed = 0;

    // sample / features
    std::string problem;
    int size = 100;
    std::uint64_t seed = 0;
    fs::path sample_path;
    fs::path out;

    // features grid
    fs::path suite_path;
    std::string sizes = "100,200";
    std::string seeds = "0..4";
    unsigned jobs = default_jobs();
    bool resume = false;
    std::optional<int> grid_m;

    // solve
    std::string solver = "nsga2";
    std::optional<int> budget;
    int runs = 1;
    std::uint64_t seed_base = 0;
    int sample_size = 0;
    int population = 0;

    // perf
    fs::path runs_dir;
    fs::path labels_out;
    fs::path ranks_out;

    // select / analyses
    fs::path features_path;
    fs::path perf_path;
    std::optional<std::uint64_t> split_seed;
    int k = 5;
    int cv_folds = 3;
    int feature_cap = 40;
    fs::path model_path;
    fs::path report_path;
    fs::path subset_path;
};

void cmd_problems_list(const Options& o)
{
    SuiteRequest request;
    request.families = o.families.empty() ? std::set<Family>{Family::ZDT, Family::DTLZ, Family::MPM2}
                                          : parse_families(o.families);
    for (int d : o.dims.empty() ? std::vector<int>{2, 5, 10, 20} : o.dims) {
        request.dims.insert(d);
    }
    for (int m : o.objectives.empty() ? std::vector<int>{2, 3} : o.objectives) {
        request.objectives.insert(m);
    }
    request.mpm2_seed = o.mpm2_seed;
    auto suite = build_suite(request);
    if (o.json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& s : suite) {
            j.push_back(to_json(s));
        }
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::printf("%-40s %-9s %3s %2s\n", "id", "family", "d", "m");
    for (const auto& s : suite) {
        std::printf("%-40s %-9s %3d %2d\n", s.id.c_str(), to_string(s.family), s.dim, s.n_objectives);
    }
}

void cmd_sample(const Options& o)
{
    require_writable(o.out);
    auto spec = problem_from_id(o.problem);
    auto sample = draw_sample(spec, o.size, o.seed);
    write_sample(o.out, sample);
    if (o.json) {
        std::cout << sample_manifest(sample).dump(2) << '\n';
    } else {
        std::cout << "wrote " << sample.size() << " points of " << spec.id << " to " << o.out.string() << '\n';
    }
}

void cmd_features_single(const Options& o)
{
    require_file(o.sample_path);
    require_writable(o.out);
    auto sample = read_sample(o.sample_path);
    auto vec = compute_all_features(sample);
    auto table = to_table({vec});
    if (!o.out.empty()) {
        write_feature_table(o.out, table);
    }
    if (o.json || o.out.empty()) {
        nlohmann::json j = nlohmann::json::object();
        for (std::size_t i = 0; i < vec.features.size(); ++i) {
            j[vec.features.names[i]] = vec.features.values[i];
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "wrote " << vec.features.size() << " features to " << o.out.string() << '\n';
    }
}

void cmd_features_grid(const Options& o)
{
    require_file(o.suite_path);
    require_writable(o.out);
    GridRequest request;
    for (auto& s : load_suite(o.suite_path)) {
        if (!o.grid_m || s.n_objectives == *o.grid_m) {
            request.suite.push_back(std::move(s));
        }
    }
    request.sizes = parse_int_list(o.sizes);
    request.seeds = parse_seed_list(o.seeds);
    request.jobs = o.jobs;
    std::optional<FeatureTable> existing;
    if (o.resume && fs::exists(o.out)) {
        existing = read_feature_table(o.out);
    }
    auto table = run_grid(request, existing ? &*existing : nullptr);
    write_feature_table(o.out, table);
    std::cout << "wrote " << table.size() << " feature rows (" << table.columns.size() << " columns) to "
              << o.out.string() << '\n';
}

void cmd_features_catalog(const Options& o)
{
    auto j = catalog_json();
    if (o.out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    require_writable(o.out);
    io::write_json(o.out, j);
    std::cout << "wrote feature catalog to " << o.out.string() << '\n';
}

void cmd_solve(const Options& o)
{
    if (o.out.empty()) {
        throw Error(ErrorCode::Config, "--out DIR is required");
    }
    if (fs::exists(o.out) && !fs::is_directory(o.out)) {
        throw Error(ErrorCode::Io, "--out must be a directory: " + o.out.string());
    }
    fs::create_directories(o.out);
    if (o.runs < 1) {
        throw Error(ErrorCode::Config, "--runs must be positive");
    }
    if (o.sample_size < 0) {
        throw Error(ErrorCode::Config, "--sample-size must be non-negative");
    }
    Problem problem(problem_from_id(o.problem));
    std::vector<SolverId> solvers;
    if (lower(o.solver) == "all") {
        solvers.assign(all_solvers.begin(), all_solvers.end());
    } else {
        solvers.push_back(solver_from_string(o.solver));
    }
    int budget = o.budget ? *o.budget : budget_for(problem.n_objectives(), problem.dim()) - o.sample_size;
    SolverConfig config;
    config.population = o.population;

    const auto n = solvers.size() * static_cast<std::size_t>(o.runs);
    std::vector<int> evals(n);
    parallel_for(n, o.jobs, [&](std::size_t i) {
        auto solver = solvers[i / static_cast<std::size_t>(o.runs)];
        auto seed = o.seed_base + i % static_cast<std::size_t>(o.runs);
        auto run = run_solver(solver, problem, budget, seed, config);
        run.sample_size = o.sample_size;
        write_run(o.out, run);
        evals[i] = run.eval_count;
    });
    std::cout << "wrote " << n << " runs of " << problem.spec().id << " (budget " << budget << ") to "
              << o.out.string() << '\n';
}

void cmd_perf(const Options& o)
{
    require_dir(o.runs_dir);
    require_writable(o.out);
    require_writable(o.labels_out);
    require_writable(o.ranks_out);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(o.runs_dir)) {
        if (entry.path().extension() == ".csv") {
            auto manifest = entry.path();
            manifest.replace_extension(".json");
            if (fs::exists(manifest)) {
                files.push_back(entry.path());
            }
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw Error(ErrorCode::IncompleteData, "no run files in " + o.runs_dir.string());
    }
    std::vector<SolverRun> runs;
    for (const auto& f : files) {
        runs.push_back(read_run(f));
    }
    auto table = performance_from_runs(runs);
    write_performance(o.out, table);
    if (!o.labels_out.empty()) {
        io::write_csv(o.labels_out, labels_to_csv(make_labels(table)));
    }
    if (!o.ranks_out.empty()) {
        io::write_csv(o.ranks_out, contingency_to_csv(rank_contingency(table)));
    }
    std::cout << "wrote " << table.size() << " performance records to " << o.out.string() << '\n';
}

LabeledDataset load_dataset(const Options& o)
{
    require_file(o.features_path);
    require_file(o.perf_path);
    auto features = read_feature_table(o.features_path);
    auto labels = make_labels(read_performance(o.perf_path));
    auto data = join_labels(features, labels);
    if (data.size() == 0) {
        throw Error(ErrorCode::IncompleteData, "no feature row matches a performance instance");
    }
    return data;
}

void print_report(const SelectorReport& report, const fs::path& path, bool json)
{
    auto j = to_json(report);
    if (!path.empty()) {
        io::write_json(path, j);
    }
    if (json || path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::printf("f1_macro %.4f  ri %.4f  (%zu train / %zu test rows, %zu features)\n", report.f1_macro, report.ri,
                report.n_train, report.n_test, report.selected_features.size());
    }
}

void cmd_select_train(const Options& o)
{
    require_writable(o.model_path);
    require_writable(o.report_path);
    auto data = load_dataset(o);
    SelectorConfig config;
    config.k = o.k;
    config.cv_folds = o.cv_folds;
    config.feature_cap = o.feature_cap;
    config.split_seed = o.split_seed.value_or(0);
    config.jobs = o.jobs;
    auto result = train_selector(data, config);
    if (!o.model_path.empty()) {
        io::write_json(o.model_path, to_json(result.model));
    }
    print_report(result.report, o.report_path, o.json);
}

void cmd_select_evaluate(const Options& o)
{
    require_file(o.model_path);
    require_writable(o.report_path);
    auto model = model_from_json(io::read_json(o.model_path));
    auto data = load_dataset(o);
    std::vector<std::size_t> rows;
    if (o.split_seed) {
        std::vector<std::size_t> train;
        split_rows(data.size(), *o.split_seed, 0.2, train, rows);
    } else {
        rows.resize(data.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i] = i;
        }
    }
    print_report(evaluate_selector(model, data, rows), o.report_path, o.json);
}

std::optional<std::vector<std::string>> subset_of(const Options& o)
{
    if (o.subset_path.empty()) {
        return std::nullopt;
    }
    require_file(o.subset_path);
    return load_subset(o.subset_path);
}

void cmd_stability(const Options& o)
{
    require_file(o.features_path);
    require_writable(o.out);
    auto subset = subset_of(o);
    auto report = stability(read_feature_table(o.features_path), subset);
    io::write_csv(o.out, stability_to_csv(report));
    std::cout << "mean stability " << io::format_double(report.mean) << " over " << report.rows.size()
              << " instances\n";
}

void cmd_corr(const Options& o)
{
    require_file(o.features_path);
    require_writable(o.out);
    auto subset = subset_of(o);
    auto c = feature_correlation(read_feature_table(o.features_path), subset);
    io::write_csv(o.out, correlation_to_csv(c));
    std::cout << "mean absolute off-diagonal correlation " << io::format_double(c.mean_abs_offdiag) << " over "
              << c.names.size() << " features (" << c.constant.size() << " constant excluded)\n";
}

void cmd_embed(const Options& o)
{
    require_file(o.features_path);
    require_writable(o.out);
    auto subset = subset_of(o);
    auto table = read_feature_table(o.features_path);
    io::write_csv(o.out, embedding_to_csv(table, embed_2d(table, subset)));
    std::cout << "wrote " << table.size() << " embedded rows to " << o.out.string() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-objective landscape features and algorithm selection"};
    app.footer(exit_code_help);
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Print JSON instead of human-readable output");

    auto* problems = app.add_subcommand("problems", "Benchmark suite");
    problems->require_subcommand(1);
    auto* plist = problems->add_subcommand("list", "List suite instances");
    plist->add_option("--family", o.families, "Comma list of zdt, dtlz, mpm2, bisphere");
    plist->add_option("--dim", o.dims, "Decision dimensions (default 2,5,10,20)")->delimiter(',');
    plist->add_option("--m", o.objectives, "Objective counts (default 2,3)")->delimiter(',');
    plist->add_option("--mpm2-seed", o.mpm2_seed, "Generator seed of the MPM2 instances");

    auto* sample = app.add_subcommand("sample", "Draw and evaluate an LHS sample");
    sample->add_option("--problem", o.problem, "Problem id, e.g. zdt1-d5")->required();
    sample->add_option("--size", o.size, "Number of points")->check(CLI::PositiveNumber);
    sample->add_option("--seed", o.seed, "Sample seed");
    sample->add_option("--out", o.out, "Output CSV; a .json manifest is written next to it")->required();

    auto* features = app.add_subcommand("features", "Landscape features");
    features->require_subcommand(0, 1);
    auto* fsample = features->add_option("--sample", o.sample_path, "Sample CSV written by `sample`");
    features->add_option("--out", o.out, "Feature table CSV (prints JSON when omitted)");
    auto* grid = features->add_subcommand("grid", "Features for every (problem, size, seed)");
    grid->add_option("--suite", o.suite_path, "Suite JSON: list of specs or ids, or {dims, objectives, families}")
            ->required();
    grid->add_option("--sizes", o.sizes, "Comma list of sample sizes");
    grid->add_option("--seeds", o.seeds, "Seed range a..b or comma list");
    grid->add_option("--m", o.grid_m, "Keep only problems with this objective count");
    grid->add_option("--out", o.out, "Feature table CSV")->required();
    grid->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    grid->add_flag("--resume", o.resume, "Reuse rows already present in --out");
    auto* catalog = features->add_subcommand("catalog", "Print or write the feature catalog");
    catalog->add_option("--out", o.out, "Catalog JSON");

    auto* solve = app.add_subcommand("solve", "Run solvers on one problem");
    solve->add_option("--problem", o.problem, "Problem id")->required();
    solve->add_option("--solver", o.solver, "nsga2, smsemoa, moead or all");
    solve->add_option("--budget", o.budget, "Evaluations per run (default from the (m, d) budget table)")
            ->check(CLI::PositiveNumber);
    solve->add_option("--runs", o.runs, "Runs per solver");
    solve->add_option("--seed-base", o.seed_base, "Seed of the first run");
    solve->add_option("--sample-size", o.sample_size, "Evaluations spent on feature sampling, taken off the default budget");
    solve->add_option("--population", o.population, "Population size (default 100, or 105 for m=3)");
    solve->add_option("--out", o.out, "Output directory")->required();
    solve->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* perf = app.add_subcommand("perf", "HVN performance table from run files");
    perf->add_option("--runs", o.runs_dir, "Directory written by `solve`")->required();
    perf->add_option("--out", o.out, "Performance CSV")->required();
    perf->add_option("--labels", o.labels_out, "Also write the instance label CSV");
    perf->add_option("--ranks", o.ranks_out, "Also write the rank contingency CSV");

    auto* select = app.add_subcommand("select", "Algorithm selector");
    select->require_subcommand(1);
    auto add_data = [&](CLI::App* cmd) {
        cmd->add_option("--features", o.features_path, "Feature table CSV")->required();
        cmd->add_option("--perf", o.perf_path, "Performance CSV")->required();
        cmd->add_option("--split-seed", o.split_seed, "Seed of the 80/20 train/test split");
        cmd->add_option("--report", o.report_path, "Report JSON (printed when omitted)");
    };
    auto* train = select->add_subcommand("train", "Feature selection and k-NN training");
    add_data(train);
    train->add_option("--k", o.k, "Neighbours")->check(CLI::PositiveNumber);
    train->add_option("--cv-folds", o.cv_folds, "Cross-validation folds")->check(CLI::Range(2, 100));
    train->add_option("--feature-cap", o.feature_cap, "Maximum selected features")->check(CLI::PositiveNumber);
    train->add_option("--model", o.model_path, "Model JSON");
    train->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    auto* evaluate = select->add_subcommand("evaluate", "Apply a trained model (test split when --split-seed is set)");
    add_data(evaluate);
    evaluate->add_option("--model", o.model_path, "Model JSON")->required();

    auto add_analysis = [&](const char* name, const char* help) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("--features", o.features_path, "Feature table CSV")->required();
        cmd->add_option("--subset", o.subset_path, "Model JSON or feature list restricting the columns");
        cmd->add_option("--out", o.out, "Output CSV")->required();
        return cmd;
    };
    auto* stab = add_analysis("stability", "Mean pairwise correlation of seed feature vectors");
    auto* corr = add_analysis("corr", "Feature cross-correlation matrix");
    auto* embed = add_analysis("embed", "Two-dimensional PCA embedding of the feature rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << one_line(e.what()) << '\n';
        return exit_usage;
    }

    try {
        if (plist->parsed()) {
            cmd_problems_list(o);
        } else if (sample->parsed()) {
            cmd_sample(o);
        } else if (grid->parsed()) {
            cmd_features_grid(o);
        } else if (catalog->parsed()) {
            cmd_features_catalog(o);
        } else if (features->parsed()) {
            if (fsample->count() == 0) {
                std::cerr << "error: usage: features needs --sample or a subcommand (grid, catalog)\n";
                return exit_usage;
            }
            cmd_features_single(o);
        } else if (solve->parsed()) {
            cmd_solve(o);
        } else if (perf->parsed()) {
            cmd_perf(o);
        } else if (train->parsed()) {
            cmd_select_train(o);
        } else if (evaluate->parsed()) {
            cmd_select_evaluate(o);
        } else if (stab->parsed()) {
            cmd_stability(o);
        } else if (corr->parsed()) {
            cmd_corr(o);
        } else if (embed->parsed()) {
            cmd_embed(o);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << one_line(e.what()) << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << one_line(e.what()) << '\n';
        return 1;
    }
    return 0;
}
