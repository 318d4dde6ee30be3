#pragma once

#include "json.hpp"
#include "q2seg/sset.hpp"

namespace q2seg {

using json = nlohmann::json;

json simplex_to_json(const SimplexRef& s);
SimplexRef simplex_from_json(const json& j, int dim_hint = -1);

// Schema "ssetjson/1".
json sset_to_json(const SSet& x);
SSetPtr sset_from_json(const json& j);

json map_to_json(const SSetMap& f);
// Images reference the given domain and codomain by cell id.
SSetMap map_from_json(const json& j, const SSetPtr& domain, const SSetPtr& codomain);

}  // namespace q2seg
