#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "q2seg/horns.hpp"
#include "q2seg/lifting.hpp"
#include "q2seg/pathspace.hpp"
#include "q2seg/shapes.hpp"

namespace q2seg {

enum class Property { QuasiCat, Quasi2Segal, UniqueSpine, LowerUpper2Segal, JAugmented };

std::string property_name(Property p);
Property property_from_name(const std::string& s);

struct CheckMode {
    bool sampled = false;
    std::uint64_t seed = 0;
    std::uint64_t count = 0;  // samples per horn shape

    static CheckMode exhaustive() { return {}; }
    static CheckMode sample(std::uint64_t seed, std::uint64_t count) { return {true, seed, count}; }
};

struct FillerReport {
    std::string property;
    int cap = 0;
    CheckMode mode;
    std::uint64_t checked = 0;
    std::vector<nlohmann::json> failures;
    // filler count -> number of problems; only for uniqueness properties
    std::map<std::uint64_t, std::uint64_t> multiplicity;
    bool inconclusive = false;
    std::string note;

    bool passed() const { return failures.empty() && !inconclusive; }
    // 0 pass, 1 counterexample, 2 inconclusive
    int exit_code() const { return !failures.empty() ? 1 : inconclusive ? 2 : 0; }
    nlohmann::json to_json() const;
    void merge(const FillerReport& other);
};

// One inclusion A -> B of a horn family.
struct HornCase {
    std::string name;
    SSetMap inclusion;
};

struct CheckOptions {
    CheckMode mode;
    bool lower = true;  // LowerUpper2Segal sides
    bool upper = true;
    int j_depth = 3;    // JAugmented: depth of the glued truncated J
    std::uint64_t budget = kDefaultBudget;  // per lifting problem
    std::uint64_t enumeration_budget = 1ull << 32;  // exhaustive mode: nodes spent listing the maps A -> X of one case
    std::size_t max_failures = 16;
};

// Runs every map A -> X (or a seeded sample) through the solver. With
// require_unique, problems whose filler count is not 1 are failures.
FillerReport check_cases(const LiftTarget& x, const std::vector<HornCase>& cases, bool require_unique,
                         const CheckOptions& opts);

std::vector<HornCase> inner_horn_cases(int n_min, int n_max);
std::vector<HornCase> two_segal_horn_cases(int n_min, int n_max);
std::vector<HornCase> two_segal_spine_cases(int n_min, int n_max);
std::vector<HornCase> segal_spine_cases(int n_min, int n_max);
// Lambda^i[n] and Delta[n] with a truncated J glued along j -> j+1, j in {i-1, i}.
std::vector<HornCase> j_augmented_cases(int n_min, int n_max, int j_depth);
HornCase j_augmented_case(int n, int i, int j, int j_depth);

FillerReport check_filler_property(const SSetPtr& x, Property p, int dim_cap, const CheckOptions& opts = {});

// (generator) box (boundary of Delta[k] -> Delta[k]) for k = 0..max_k.
std::vector<HornCase> pushout_product_cases(const GeneralizedHorn& generator, int max_k);
FillerReport check_rlp_pushout_product(const SSetPtr& x, const GeneralizedHorn& generator, int max_k,
                                       const CheckOptions& opts = {});

struct TransportReport {
    Side side = Side::Left;
    std::uint64_t problems = 0;
    std::uint64_t solvable = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
    nlohmann::json to_json() const;
};

// Compares inner horns Lambda^i[n] -> P X with the matching 2-Segal horns of X
// (Lambda^{0,i+1}[n+1] on the left, Lambda^{i,n+1}[n+1] on the right), for
// 2 <= n <= max_n: the cone construction must be a bijection of problem sets
// and preserve solvability.
TransportReport check_path_transport(const SSetPtr& x, Side side, int max_n, std::uint64_t budget = kDefaultBudget);

}  // namespace q2seg
