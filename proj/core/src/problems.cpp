#include "moela/problems.hpp"

#include "moela/rng.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace moela {

namespace {
    constexpr double pi = std::numbers::pi;

    std::string fmt_coord_error(std::size_t i, double v, double lo, double hi)
    {
        std::ostringstream ss;
        ss << "x[" << i << "] = " << v << " outside [" << lo << ", " << hi << "]";
        return ss.str();
    }

    // ---- ZDT ----------------------------------------------------------------

    void eval_zdt(int fn, std::span<const double> x, std::span<double> f)
    {
        auto const d = x.size();
        double tail = 0.0;
        for (std::size_t i = 1; i < d; ++i) {
            tail += x[i];
        }
        auto const scale = static_cast<double>(d - 1);
        switch (fn) {
        case 1:
        case 2:
        case 3: {
            double const g = 1.0 + 9.0 * tail / scale;
            double const f1 = x[0];
            double const q = f1 / g;
            double h = 0.0;
            if (fn == 1) {
                h = 1.0 - std::sqrt(q);
            } else if (fn == 2) {
                h = 1.0 - q * q;
            } else {
                h = 1.0 - std::sqrt(q) - q * std::sin(10.0 * pi * f1);
            }
            f[0] = f1;
            f[1] = g * h;
            return;
        }
        case 4: {
            double g = 1.0 + 10.0 * scale;
            for (std::size_t i = 1; i < d; ++i) {
                g += x[i] * x[i] - 10.0 * std::cos(4.0 * pi * x[i]);
            }
            f[0] = x[0];
            f[1] = g * (1.0 - std::sqrt(x[0] / g));
            return;
        }
        case 6: {
            double const f1 = 1.0 - std::exp(-4.0 * x[0]) * std::pow(std::sin(6.0 * pi * x[0]), 6);
            double const g = 1.0 + 9.0 * std::pow(tail / scale, 0.25);
            double const q = f1 / g;
            f[0] = f1;
            f[1] = g * (1.0 - q * q);
            return;
        }
        default: break;
        }
        throw Error(ErrorCode::Contract, "unknown ZDT function " + std::to_string(fn));
    }

    // ---- DTLZ ---------------------------------------------------------------

    // Spherical front shape shared by DTLZ2-6: f_i = (1+g) prod cos(theta) sin(theta).
    void spherical(std::span<const double> theta, double g, std::span<double> f)
    {
        auto const m = f.size();
        for (std::size_t i = 0; i < m; ++i) {
            double v = 1.0 + g;
            for (std::size_t j = 0; j + i + 1 < m; ++j) {
                v *= std::cos(theta[j]);
            }
            if (i > 0) {
                v *= std::sin(theta[m - i - 1]);
            }
            f[i] = v;
        }
    }

    void eval_dtlz(int fn, std::span<const double> x, std::span<double> f)
    {
        auto const m = f.size();
        auto const tail = x.subspan(m - 1);
        auto const k = static_cast<double>(tail.size());

        auto g_rastrigin = [&] {
            double s = 0.0;
            for (double v : tail) {
                s += (v - 0.5) * (v - 0.5) - std::cos(20.0 * pi * (v - 0.5));
            }
            return 100.0 * (k + s);
        };
        auto g_sphere = [&] {
            double s = 0.0;
            for (double v : tail) {
                s += (v - 0.5) * (v - 0.5);
            }
            return s;
        };

        std::vector<double> theta(m - 1);
        switch (fn) {
        case 1: {
            double const g = g_rastrigin();
            for (std::size_t i = 0; i < m; ++i) {
                double v = 0.5 * (1.0 + g);
                for (std::size_t j = 0; j + i + 1 < m; ++j) {
                    v *= x[j];
                }
                if (i > 0) {
                    v *= 1.0 - x[m - i - 1];
                }
                f[i] = v;
            }
            return;
        }
        case 2:
        case 3:
        case 4: {
            double const g = fn == 3 ? g_rastrigin() : g_sphere();
            double const alpha = fn == 4 ? 100.0 : 1.0;
            for (std::size_t j = 0; j + 1 < m; ++j) {
                theta[j] = std::pow(x[j], alpha) * pi / 2.0;
            }
            spherical(theta, g, f);
            return;
        }
        case 5:
        case 6: {
            double g = 0.0;
            if (fn == 5) {
                g = g_sphere();
            } else {
                for (double v : tail) {
                    g += std::pow(v, 0.1);
                }
            }
            theta[0] = x[0] * pi / 2.0;
            for (std::size_t j = 1; j + 1 < m; ++j) {
                theta[j] = pi / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * x[j]);
            }
            spherical(theta, g, f);
            return;
        }
        case 7: {
            double s = 0.0;
            for (double v : tail) {
                s += v;
            }
            double const g = 1.0 + 9.0 / k * s;
            double h = static_cast<double>(m);
            for (std::size_t i = 0; i + 1 < m; ++i) {
                f[i] = x[i];
                h -= x[i] / (1.0 + g) * (1.0 + std::sin(3.0 * pi * x[i]));
            }
            f[m - 1] = (1.0 + g) * h;
            return;
        }
        default: break;
        }
        throw Error(ErrorCode::Contract, "unknown DTLZ function " + std::to_string(fn));
    }

    void eval_bisphere(std::span<const double> x, std::span<double> f)
    {
        double a = 0.0;
        double b = 0.0;
        for (double v : x) {
            a += v * v;
            b += (v - 1.0) * (v - 1.0);
        }
        f[0] = a;
        f[1] = b;
    }

    int parse_number(const std::string& token, char prefix, const std::string& id)
    {
        if (token.size() < 2 || token[0] != prefix) {
            throw Error(ErrorCode::Contract, "malformed problem id '" + id + "'");
        }
        try {
            std::size_t used = 0;
            auto v = std::stoi(token.substr(1), &used);
            if (used + 1 != token.size()) {
                throw Error(ErrorCode::Contract, "malformed problem id '" + id + "'");
            }
            return v;
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::Contract, "malformed problem id '" + id + "'");
        }
    }

    std::vector<std::string> split(const std::string& s, char sep)
    {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == sep) {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        out.push_back(cur);
        return out;
    }
} // namespace

const char* to_string(Family family) noexcept
{
    switch (family) {
    case Family::ZDT: return "ZDT";
    case Family::DTLZ: return "DTLZ";
    case Family::MPM2: return "MPM2";
    case Family::BISPHERE: return "BISPHERE";
    }
    return "?";
}

const char* to_string(Topology topology) noexcept
{
    return topology == Topology::Funnel ? "funnel" : "random";
}

Family family_from_string(std::string_view text)
{
    std::string up(text);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "ZDT") return Family::ZDT;
    if (up == "DTLZ") return Family::DTLZ;
    if (up == "MPM2") return Family::MPM2;
    if (up == "BISPHERE") return Family::BISPHERE;
    throw Error(ErrorCode::Contract, "unknown problem family '" + std::string(text) + "'");
}

Topology topology_from_string(std::string_view text)
{
    if (text == "random") return Topology::Random;
    if (text == "funnel") return Topology::Funnel;
    throw Error(ErrorCode::Contract, "unknown topology '" + std::string(text) + "'");
}

// ---- MPM2-style peaks -------------------------------------------------------

std::size_t PeakSet::best() const noexcept
{
    return static_cast<std::size_t>(std::distance(heights.begin(), std::max_element(heights.begin(), heights.end())));
}

double PeakSet::value(std::span<const double> x) const
{
    double best_value = 0.0;
    for (std::size_t p = 0; p < size(); ++p) {
        double dist2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            double const diff = x[j] - centers(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j));
            dist2 += diff * diff;
        }
        double const r = std::sqrt(dist2) / radii[p];
        best_value = std::max(best_value, heights[p] / (1.0 + std::pow(r, shapes[p])));
    }
    return std::clamp(1.0 - best_value, 0.0, 1.0);
}

PeakSet mpm2_component(int peaks, Topology topology, std::uint64_t seed, int dim)
{
    if (peaks < 1 || dim < 1) {
        throw Error(ErrorCode::Contract, "mpm2_component needs peaks >= 1 and dim >= 1");
    }
    CounterRng rng(stream_key("mpm2-component", {static_cast<std::uint64_t>(peaks),
            static_cast<std::uint64_t>(topology), seed, static_cast<std::uint64_t>(dim)}));
    auto const n = static_cast<std::size_t>(peaks);
    PeakSet set;
    set.topology = topology;
    set.centers.resize(peaks, dim);
    for (int p = 0; p < peaks; ++p) {
        for (int j = 0; j < dim; ++j) {
            set.centers(p, j) = rng.uniform();
        }
    }
    set.heights.resize(n);
    set.shapes.resize(n);
    set.radii.resize(n);
    // Radii shrink with the typical peak spacing peaks^(-1/d), so every basin
    // keeps a similar share of the box and added peaks stay distinct optima
    // instead of merging into one plateau.
    double const radius_scale = std::sqrt(static_cast<double>(dim))
            * std::pow(static_cast<double>(peaks), -1.0 / static_cast<double>(dim));
    for (std::size_t p = 0; p < n; ++p) {
        set.heights[p] = rng.uniform(0.5, 1.0);
        set.shapes[p] = rng.uniform(1.5, 2.5);
        set.radii[p] = rng.uniform(0.05, 0.2) * radius_scale;
    }

    if (topology == Topology::Funnel && n > 1) {
        // Keep the global peak, then hand out the remaining heights in
        // descending order to peaks sorted by distance to the global peak.
        auto const best = set.best();
        std::vector<double> rest;
        std::vector<std::pair<double, std::size_t>> by_distance;
        for (std::size_t p = 0; p < n; ++p) {
            if (p == best) {
                continue;
            }
            rest.push_back(set.heights[p]);
            double const dist = (set.centers.row(static_cast<Eigen::Index>(p))
                    - set.centers.row(static_cast<Eigen::Index>(best))).norm();
            by_distance.emplace_back(dist, p);
        }
        std::sort(rest.begin(), rest.end(), std::greater<>());
        std::sort(by_distance.begin(), by_distance.end());
        for (std::size_t i = 0; i < rest.size(); ++i) {
            set.heights[by_distance[i].second] = rest[i];
        }
    }
    return set;
}

// ---- Problem ------------------------------------------------------------------

Problem::Problem(ProblemSpec spec) : spec_(std::move(spec))
{
    validate(spec_);
    if (spec_.family == Family::MPM2) {
        for (auto const& c : spec_.params.components) {
            peaks_.push_back(mpm2_component(c.peaks, c.topology, c.seed, spec_.dim));
        }
    }
}

std::vector<double> Problem::evaluate(std::span<const double> x) const
{
    if (x.size() != static_cast<std::size_t>(spec_.dim)) {
        throw Error(ErrorCode::Contract, "decision vector has length " + std::to_string(x.size()) + ", expected "
                + std::to_string(spec_.dim));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= spec_.box_lower[i] && x[i] <= spec_.box_upper[i])) {
            throw Error(ErrorCode::Domain, fmt_coord_error(i, x[i], spec_.box_lower[i], spec_.box_upper[i]));
        }
    }
    std::vector<double> f(static_cast<std::size_t>(spec_.n_objectives));
    evaluate_unchecked(x, f);
    return f;
}

void Problem::evaluate_unchecked(std::span<const double> x, std::span<double> out) const
{
    switch (spec_.family) {
    case Family::ZDT: eval_zdt(spec_.params.function, x, out); return;
    case Family::DTLZ: eval_dtlz(spec_.params.function, x, out); return;
    case Family::BISPHERE: eval_bisphere(x, out); return;
    case Family::MPM2:
        for (std::size_t k = 0; k < peaks_.size(); ++k) {
            out[k] = peaks_[k].value(x);
        }
        return;
    }
}

std::vector<double> evaluate(const ProblemSpec& spec, std::span<const double> x)
{
    return Problem(spec).evaluate(x);
}

// ---- construction -------------------------------------------------------------

ProblemSpec make_zdt(int function, int dim)
{
    ProblemSpec s;
    s.id = "zdt" + std::to_string(function) + "-d" + std::to_string(dim);
    s.family = Family::ZDT;
    s.dim = dim;
    s.n_objectives = 2;
    s.params.function = function;
    s.box_lower.assign(static_cast<std::size_t>(std::max(dim, 0)), 0.0);
    s.box_upper.assign(static_cast<std::size_t>(std::max(dim, 0)), 1.0);
    if (function == 4) {
        for (int i = 1; i < dim; ++i) {
            s.box_lower[static_cast<std::size_t>(i)] = -5.0;
            s.box_upper[static_cast<std::size_t>(i)] = 5.0;
        }
    }
    validate(s);
    return s;
}

ProblemSpec make_dtlz(int function, int dim, int n_objectives)
{
    ProblemSpec s;
    s.id = "dtlz" + std::to_string(function) + "-d" + std::to_string(dim) + "-m" + std::to_string(n_objectives);
    s.family = Family::DTLZ;
    s.dim = dim;
    s.n_objectives = n_objectives;
    s.params.function = function;
    s.box_lower.assign(static_cast<std::size_t>(std::max(dim, 0)), 0.0);
    s.box_upper.assign(static_cast<std::size_t>(std::max(dim, 0)), 1.0);
    validate(s);
    return s;
}

ProblemSpec make_mpm2(const std::vector<int>& peaks, Topology topology, int dim, std::uint64_t suite_seed)
{
    ProblemSpec s;
    s.family = Family::MPM2;
    s.dim = dim;
    s.n_objectives = static_cast<int>(peaks.size());
    s.id = std::string("mpm2-") + to_string(topology);
    for (std::size_t j = 0; j < peaks.size(); ++j) {
        s.id += "-p" + std::to_string(peaks[j]);
        Mpm2Component c;
        c.peaks = peaks[j];
        c.topology = topology;
        c.seed = stream_key("mpm2-suite", {suite_seed, j, static_cast<std::uint64_t>(peaks[j]),
                static_cast<std::uint64_t>(topology)});
        s.params.components.push_back(c);
    }
    s.id += "-d" + std::to_string(dim) + "-s" + std::to_string(suite_seed);
    s.box_lower.assign(static_cast<std::size_t>(std::max(dim, 0)), 0.0);
    s.box_upper.assign(static_cast<std::size_t>(std::max(dim, 0)), 1.0);
    validate(s);
    return s;
}

ProblemSpec make_bisphere(int dim)
{
    ProblemSpec s;
    s.id = "bisphere-d" + std::to_string(dim) + "-control";
    s.family = Family::BISPHERE;
    s.dim = dim;
    s.n_objectives = 2;
    s.box_lower.assign(static_cast<std::size_t>(std::max(dim, 0)), 0.0);
    s.box_upper.assign(static_cast<std::size_t>(std::max(dim, 0)), 1.0);
    validate(s);
    return s;
}

void validate(const ProblemSpec& spec)
{
    auto fail = [&](const std::string& why) { throw Error(ErrorCode::Contract, "invalid problem '" + spec.id + "': " + why); };
    if (spec.dim < 2) {
        fail("dimension must be >= 2");
    }
    if (spec.n_objectives < 2 || spec.n_objectives > 3) {
        fail("number of objectives must be 2 or 3");
    }
    if (spec.box_lower.size() != static_cast<std::size_t>(spec.dim) || spec.box_upper.size() != spec.box_lower.size()) {
        fail("box has wrong length");
    }
    for (std::size_t i = 0; i < spec.box_lower.size(); ++i) {
        if (!(spec.box_lower[i] < spec.box_upper[i])) {
            fail("box_lower[" + std::to_string(i) + "] must be < box_upper");
        }
    }
    switch (spec.family) {
    case Family::ZDT: {
        static constexpr std::array valid{1, 2, 3, 4, 6};
        if (spec.n_objectives != 2) {
            fail("ZDT problems are bi-objective");
        }
        if (std::find(valid.begin(), valid.end(), spec.params.function) == valid.end()) {
            fail("ZDT function must be one of 1,2,3,4,6");
        }
        break;
    }
    case Family::DTLZ:
        if (spec.params.function < 1 || spec.params.function > 7) {
            fail("DTLZ function must be in 1..7");
        }
        if (spec.dim < spec.n_objectives) {
            fail("DTLZ needs d >= m");
        }
        break;
    case Family::MPM2:
        if (spec.params.components.size() != static_cast<std::size_t>(spec.n_objectives)) {
            fail("MPM2 needs one component per objective");
        }
        for (auto const& c : spec.params.components) {
            if (c.peaks < 1) {
                fail("MPM2 components need >= 1 peak");
            }
        }
        break;
    case Family::BISPHERE:
        if (spec.n_objectives != 2) {
            fail("BISPHERE is bi-objective");
        }
        break;
    }
}

ProblemSpec problem_from_id(const std::string& id)
{
    auto parts = split(id, '-');
    auto bad = [&] { return Error(ErrorCode::Contract, "unknown problem id '" + id + "'"); };
    if (parts.empty()) {
        throw bad();
    }
    auto const& head = parts[0];
    if (head.rfind("zdt", 0) == 0 && parts.size() == 2) {
        return make_zdt(std::stoi(head.substr(3)), parse_number(parts[1], 'd', id));
    }
    if (head.rfind("dtlz", 0) == 0 && parts.size() == 3) {
        return make_dtlz(std::stoi(head.substr(4)), parse_number(parts[1], 'd', id), parse_number(parts[2], 'm', id));
    }
    if (head == "bisphere" && parts.size() == 3 && parts[2] == "control") {
        return make_bisphere(parse_number(parts[1], 'd', id));
    }
    if (head == "mpm2" && parts.size() >= 6) {
        auto topology = topology_from_string(parts[1]);
        std::vector<int> peaks;
        for (std::size_t i = 2; i + 2 < parts.size(); ++i) {
            peaks.push_back(parse_number(parts[i], 'p', id));
        }
        int dim = parse_number(parts[parts.size() - 2], 'd', id);
        auto seed = static_cast<std::uint64_t>(parse_number(parts.back(), 's', id));
        return make_mpm2(peaks, topology, dim, seed);
    }
    throw bad();
}

std::vector<ProblemSpec> build_suite(const SuiteRequest& request)
{
    std::vector<ProblemSpec> suite;
    for (int m : request.objectives) {
        for (int d : request.dims) {
            if (request.families.contains(Family::ZDT) && m == 2) {
                for (int fn : {1, 2, 3, 4, 6}) {
                    suite.push_back(make_zdt(fn, d));
                }
            }
            if (request.families.contains(Family::DTLZ) && d >= m) {
                for (int fn = 1; fn <= 7; ++fn) {
                    suite.push_back(make_dtlz(fn, d, m));
                }
            }
            if (request.families.contains(Family::MPM2)) {
                int const max_exp = m == 2 ? 7 : 5;
                for (auto topology : {Topology::Random, Topology::Funnel}) {
                    // Non-decreasing exponent tuples enumerate unordered combinations with repetition.
                    std::vector<int> exps(static_cast<std::size_t>(m), 0);
                    while (true) {
                        std::vector<int> peaks;
                        for (int e : exps) {
                            peaks.push_back(1 << e);
                        }
                        suite.push_back(make_mpm2(peaks, topology, d, request.mpm2_seed));
                        int pos = m - 1;
                        while (pos >= 0 && exps[static_cast<std::size_t>(pos)] == max_exp) {
                            --pos;
                        }
                        if (pos < 0) {
                            break;
                        }
                        int const next = exps[static_cast<std::size_t>(pos)] + 1;
                        for (int q = pos; q < m; ++q) {
                            exps[static_cast<std::size_t>(q)] = next;
                        }
                    }
                }
            }
            if (request.families.contains(Family::BISPHERE) && m == 2) {
                suite.push_back(make_bisphere(d));
            }
        }
    }
    return suite;
}

nlohmann::json to_json(const ProblemSpec& spec)
{
    nlohmann::json params = nlohmann::json::object();
    if (spec.family == Family::ZDT || spec.family == Family::DTLZ) {
        params["function"] = spec.params.function;
    }
    if (spec.family == Family::MPM2) {
        auto comps = nlohmann::json::array();
        for (auto const& c : spec.params.components) {
            comps.push_back({{"peaks", c.peaks}, {"topology", to_string(c.topology)}, {"seed", c.seed}});
        }
        params["components"] = comps;
    }
    return {
        {"id", spec.id},
        {"family", to_string(spec.family)},
        {"d", spec.dim},
        {"m", spec.n_objectives},
        {"box", {{"lower", spec.box_lower}, {"upper", spec.box_upper}}},
        {"params", params},
    };
}

ProblemSpec spec_from_json(const nlohmann::json& value)
{
    try {
        ProblemSpec s;
        s.id = value.at("id").get<std::string>();
        s.family = family_from_string(value.at("family").get<std::string>());
        s.dim = value.at("d").get<int>();
        s.n_objectives = value.at("m").get<int>();
        s.box_lower = value.at("box").at("lower").get<std::vector<double>>();
        s.box_upper = value.at("box").at("upper").get<std::vector<double>>();
        auto const& params = value.at("params");
        if (params.contains("function")) {
            s.params.function = params.at("function").get<int>();
        }
        if (params.contains("components")) {
            for (auto const& c : params.at("components")) {
                s.params.components.push_back({c.at("peaks").get<int>(),
                        topology_from_string(c.at("topology").get<std::string>()), c.at("seed").get<std::uint64_t>()});
            }
        }
        validate(s);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Schema, std::string("invalid problem JSON: ") + e.what());
    }
}

} // namespace moela
