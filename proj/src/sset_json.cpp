#include "q2seg/sset_json.hpp"

#include <algorithm>
#include <map>

#include "q2seg/error.hpp"

namespace q2seg {

json simplex_to_json(const SimplexRef& s)
{
    return {{"cell", s.cell}, {"dim", s.dim}, {"collapse", s.degeneracy().collapsed_indices()}};
}

SimplexRef simplex_from_json(const json& j, int dim_hint)
{
    const int dim = j.contains("dim") ? j.at("dim").get<int>() : dim_hint;
    if (dim < 0) throw InvalidArgument("simplex reference without a dimension");
    const auto collapsed = j.value("collapse", std::vector<int>{});
    return {j.at("cell").get<int>(), dim, DegeneracyOp::from_indices(dim, collapsed).mask()};
}

json sset_to_json(const SSet& x)
{
    json cells = json::array();
    json faces = json::object();
    for (int id : x.canonical_order()) {
        const Cell& c = x.cell(id);
        cells.push_back({{"id", c.id}, {"dim", c.dim}, {"label", c.label}});
        if (c.dim == 0) continue;
        json fl = json::array();
        for (const auto& f : x.faces(id)) fl.push_back(simplex_to_json(f));
        faces[std::to_string(id)] = std::move(fl);
    }
    return {{"schema", "ssetjson/1"}, {"cap", x.cap()}, {"finite", x.finite()}, {"cells", cells}, {"faces", faces}};
}

SSetPtr sset_from_json(const json& j)
{
    if (j.value("schema", std::string("ssetjson/1")) != "ssetjson/1")
        throw InvalidArgument("unsupported simplicial set schema");
    struct Raw {
        int id, dim;
        std::string label;
    };
    std::vector<Raw> raw;
    for (const auto& c : j.at("cells")) raw.push_back({c.at("id").get<int>(), c.at("dim").get<int>(), c.value("label", "")});
    std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.id < b.id;
    });
    std::map<int, int> new_id;
    const json faces = j.value("faces", json::object());
    SSetBuilder b;
    for (const Raw& r : raw) {
        if (new_id.count(r.id)) throw InvalidArgument("duplicate cell id " + std::to_string(r.id));
        std::vector<SimplexRef> fl;
        if (r.dim > 0) {
            const auto key = std::to_string(r.id);
            if (!faces.contains(key)) throw InvalidArgument("cell " + key + " has no face list");
            for (const auto& f : faces.at(key)) {
                SimplexRef s = simplex_from_json(f, r.dim - 1);
                auto it = new_id.find(s.cell);
                if (it == new_id.end()) throw InvalidArgument("cell " + key + ": face names an unknown or higher cell");
                s.cell = it->second;
                fl.push_back(s);
            }
        }
        new_id[r.id] = b.add(r.dim, std::move(fl), r.label);
    }
    return b.build(j.value("cap", 0), j.value("finite", true));
}

json map_to_json(const SSetMap& f)
{
    json a = json::object();
    for (std::size_t c = 0; c < f.images.size(); ++c) a[std::to_string(c)] = simplex_to_json(f.images[c]);
    return {{"schema", "ssetjson/1"}, {"assignment", a}};
}

SSetMap map_from_json(const json& j, const SSetPtr& domain, const SSetPtr& codomain)
{
    SSetMap f{domain, codomain, std::vector<SimplexRef>(static_cast<std::size_t>(domain->size()))};
    const auto& a = j.at("assignment");
    for (const Cell& c : domain->cells()) {
        const auto key = std::to_string(c.id);
        if (!a.contains(key)) throw InvalidArgument("map assignment misses cell " + key);
        f.images[static_cast<std::size_t>(c.id)] = simplex_from_json(a.at(key), c.dim);
    }
    f.validate();
    return f;
}

}  // namespace q2seg
