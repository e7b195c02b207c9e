#ifndef MOELA_PROBLEMS_HPP
#define MOELA_PROBLEMS_HPP

#include "moela/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace moela {

enum class Family { ZDT, DTLZ, MPM2, BISPHERE };
enum class Topology { Random, Funnel };

const char* to_string(Family family) noexcept;
const char* to_string(Topology topology) noexcept;
Family family_from_string(std::string_view text);
Topology topology_from_string(std::string_view text);

// One single-objective peak landscape of an MPM2-style problem.
struct Mpm2Component {
    int peaks = 1;
    Topology topology = Topology::Random;
    std::uint64_t seed = 0;

    bool operator==(const Mpm2Component&) const = default;
};

struct ProblemParams {
    int function = 0;                       // ZDT / DTLZ function number
    std::vector<Mpm2Component> components;  // MPM2 only, one per objective

    bool operator==(const ProblemParams&) const = default;
};

struct ProblemSpec {
    std::string id;
    Family family = Family::ZDT;
    int dim = 2;
    int n_objectives = 2;
    std::vector<double> box_lower;
    std::vector<double> box_upper;
    ProblemParams params;

    bool operator==(const ProblemSpec&) const = default;
};

// Peaks of one MPM2-style component over the unit box.
struct PeakSet {
    Matrix centers;          // peaks x d, inside [0,1]^d
    std::vector<double> heights;
    std::vector<double> shapes;  // radial decay exponents
    std::vector<double> radii;
    Topology topology = Topology::Random;

    std::size_t size() const noexcept { return heights.size(); }
    // Index of the peak with the largest height.
    std::size_t best() const noexcept;
    // 1 - max_p height_p / (1 + (|x - c_p| / radius_p)^shape_p), clipped to [0,1].
    double value(std::span<const double> x) const;
};

PeakSet mpm2_component(int peaks, Topology topology, std::uint64_t seed, int dim);

// Evaluable problem; holds precomputed peak sets for MPM2 instances.
// Immutable after construction and safe to share between threads.
class Problem {
public:
    explicit Problem(ProblemSpec spec);

    const ProblemSpec& spec() const noexcept { return spec_; }
    int dim() const noexcept { return spec_.dim; }
    int n_objectives() const noexcept { return spec_.n_objectives; }

    // Throws Error(Domain) naming the first coordinate outside the box.
    std::vector<double> evaluate(std::span<const double> x) const;
    // Same as evaluate() but skips the box check; for solvers that clamp.
    void evaluate_unchecked(std::span<const double> x, std::span<double> out) const;

private:
    ProblemSpec spec_;
    std::vector<PeakSet> peaks_;
};

std::vector<double> evaluate(const ProblemSpec& spec, std::span<const double> x);

ProblemSpec make_zdt(int function, int dim);
ProblemSpec make_dtlz(int function, int dim, int n_objectives);
// Component seeds are derived from (suite_seed, component position, peaks, topology).
ProblemSpec make_mpm2(const std::vector<int>& peaks, Topology topology, int dim, std::uint64_t suite_seed);
ProblemSpec make_bisphere(int dim);

// Validates box, objective count and family constraints.
void validate(const ProblemSpec& spec);

// Reconstructs a spec from its id (the inverse of the id scheme used by the make_* functions).
ProblemSpec problem_from_id(const std::string& id);

struct SuiteRequest {
    std::set<int> dims;
    std::set<int> objectives;
    std::set<Family> families;
    std::uint64_t mpm2_seed = 0;
};

// Deterministic benchmark suite. ZDT functions 1,2,3,4,6 (m=2); all seven DTLZ
// functions with d >= m; MPM2 with unordered peak-count combinations and a
// shared topology (bi-objective peaks 2^0..2^7, tri-objective 2^0..2^5).
std::vector<ProblemSpec> build_suite(const SuiteRequest& request);

nlohmann::json to_json(const ProblemSpec& spec);
ProblemSpec spec_from_json(const nlohmann::json& value);

} // namespace moela

#endif
