#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "q2seg/jaug.hpp"

namespace q2seg {

struct EdgeStatus {
    SimplexRef edge;
    bool bi_invertible = false;
    // d_2 left = edge, d_1 left degenerate; d_0 right = edge, d_1 right degenerate
    std::optional<SimplexRef> left_witness, right_witness;
    int extends_to_j_depth = 0;  // largest depth tried that admits JTrunc(depth) -> X
    int requested_depth = 0;
    nlohmann::json to_json(const SSet& x) const;
};

EdgeStatus edge_status(const SSetPtr& x, const SimplexRef& edge, int j_depth, std::uint64_t budget = kDefaultBudget);

enum class Tri { Yes, No, Unknown };

struct HomotopyResult {
    Tri answer = Tri::Unknown;
    // (n+1)-simplices, each with a degenerate edge i -> i+1 joining consecutive simplices
    std::vector<SimplexRef> witnesses;
};

// Zig-zag of homotopies between two n-simplices: breadth-first search over
// (n+1)-simplices H with degenerate edge i -> i+1, linking d_i H and d_{i+1} H.
HomotopyResult homotopic(const SSetPtr& x, const SimplexRef& a, const SimplexRef& b, std::uint64_t budget = 1'000'000);

}  // namespace q2seg
