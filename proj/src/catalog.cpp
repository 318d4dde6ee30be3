#include "q2seg/catalog.hpp"

#include <sstream>

#include "q2seg/category.hpp"
#include "q2seg/error.hpp"
#include "q2seg/examples.hpp"
#include "q2seg/shapes.hpp"

namespace q2seg {

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) out.push_back(part);
    return out;
}

int to_int(const std::string& s, const std::string& name)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidArgument("example '" + name + "': '" + s + "' is not an integer");
    return v;
}

NamedExample from_nerve(const std::string& name, const FiniteCategory& c, int cap)
{
    auto nv = nerve(c, cap);
    return {name, nv.sset(), {{"objects", c.object_count()}, {"morphisms", c.morphism_count()}}};
}

}  // namespace

NamedExample named_example(const std::string& name, int cap)
{
    if (cap < 0) throw InvalidArgument("cap must be non-negative");
    const auto parts = split(name, ':');
    if (parts.empty()) throw InvalidArgument("empty example name");
    const std::string& head = parts[0];
    auto arg = [&](std::size_t k) {
        if (parts.size() <= k) throw InvalidArgument("example '" + name + "' needs more arguments");
        return to_int(parts[k], name);
    };
    auto arity = [&](std::size_t k) {
        if (parts.size() != k + 1) throw InvalidArgument("example '" + name + "' takes " + std::to_string(k) + " arguments");
    };

    if (head == "point") {
        arity(0);
        return {name, point(), {}};
    }
    if (head == "delta") {
        arity(1);
        return {name, delta(arg(1)), {}};
    }
    if (head == "poset") {
        arity(1);
        return from_nerve(name, poset_category(arg(1)), cap);
    }
    if (head == "cyclic") {
        arity(1);
        return from_nerve(name, cyclic_group(arg(1)), cap);
    }
    if (head == "s3") {
        arity(0);
        return from_nerve(name, symmetric_group3(), cap);
    }
    if (head == "iso") {
        arity(0);
        return from_nerve(name, free_isomorphism(), cap);
    }
    if (head == "discrete") {
        arity(1);
        return from_nerve(name, discrete_category(arg(1)), cap);
    }
    if (head == "random") {
        arity(1);
        return from_nerve(name, random_category(static_cast<std::uint64_t>(arg(1))), cap);
    }
    if (head == "forest") {
        arity(1);
        auto o = hopf_forest_set(arg(1), cap);
        return {name, o.sset(), {{"audit", o.audit.to_json()}}};
    }
    if (head == "waldhausen") {
        arity(1);
        auto o = waldhausen_sset_ab(arg(1), cap);
        return {name, o.sset(), {{"max_order", o.max_order}}};
    }
    if (head == "genhorn") {
        arity(2);
        std::vector<int> missing;
        for (const auto& m : split(parts[2], ',')) missing.push_back(to_int(m, name));
        auto s = build_shape(ShapeSpec::genhorn(arg(1), missing));
        return {name, s.sub.sset, {}};
    }
    if (head == "isohorn") {
        arity(3);
        auto s = build_shape(ShapeSpec::isohorn(arg(1), arg(2), arg(3)));
        return {name, s.sub.sset, {}};
    }
    throw InvalidArgument("unknown example '" + name + "'");
}

std::vector<std::string> example_name_patterns()
{
    return {"point",         "delta:N",         "poset:N",      "cyclic:N",          "s3",
            "iso",           "discrete:K",      "random:SEED",  "forest:NODES",      "waldhausen:ORDER",
            "genhorn:N:A,B", "isohorn:N:I:DEPTH"};
}

}  // namespace q2seg
