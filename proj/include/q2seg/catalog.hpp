#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "q2seg/sset.hpp"

namespace q2seg {

// A simplicial set chosen by name, truncated at the given cap.
struct NamedExample {
    std::string name;
    SSetPtr sset;
    nlohmann::json info;
};

// Names: point, delta:N, poset:N, cyclic:N, s3, iso, discrete:K, random:SEED,
// forest:NODES, waldhausen:ORDER, genhorn:N:MISSING (comma list),
// isohorn:N:I:DEPTH. Nerves and Waldhausen sets are truncated at cap.
NamedExample named_example(const std::string& name, int cap);
std::vector<std::string> example_name_patterns();

}  // namespace q2seg
