#include <algorithm>
#include <functional>
#include <set>

#include "q2seg/error.hpp"
#include "q2seg/examples.hpp"

namespace q2seg {

namespace {

std::vector<std::vector<int>> children_of(const std::vector<int>& parent)
{
    std::vector<std::vector<int>> ch(parent.size());
    for (std::size_t v = 0; v < parent.size(); ++v)
        if (parent[v] >= 0) ch[static_cast<std::size_t>(parent[v])].push_back(static_cast<int>(v));
    return ch;
}

// Drops the nodes on one layer; survivors hang from their nearest surviving ancestor.
LayeredForest drop_layer(const LayeredForest& f, int dropped, int layers_after)
{
    std::vector<int> keep_id(static_cast<std::size_t>(f.size()), -1);
    std::vector<int> parent, layer;
    for (int v = 0; v < f.size(); ++v)
        if (f.layer[static_cast<std::size_t>(v)] != dropped) {
            keep_id[static_cast<std::size_t>(v)] = static_cast<int>(parent.size());
            parent.push_back(-1);
            const int l = f.layer[static_cast<std::size_t>(v)];
            layer.push_back(l > dropped ? l - 1 : l);
        }
    for (int v = 0; v < f.size(); ++v) {
        const int id = keep_id[static_cast<std::size_t>(v)];
        if (id < 0) continue;
        int a = f.parent[static_cast<std::size_t>(v)];
        while (a >= 0 && keep_id[static_cast<std::size_t>(a)] < 0) a = f.parent[static_cast<std::size_t>(a)];
        parent[static_cast<std::size_t>(id)] = a >= 0 ? keep_id[static_cast<std::size_t>(a)] : -1;
    }
    return canonical_forest(layers_after, parent, layer);
}

}  // namespace

LayeredForest canonical_forest(int layers, const std::vector<int>& parent, const std::vector<int>& layer)
{
    const auto ch = children_of(parent);
    std::vector<std::string> code(parent.size());
    std::function<const std::string&(int)> tree_code = [&](int v) -> const std::string& {
        auto& c = code[static_cast<std::size_t>(v)];
        if (!c.empty()) return c;
        std::vector<std::string> parts;
        for (int w : ch[static_cast<std::size_t>(v)]) parts.push_back(tree_code(w));
        std::sort(parts.begin(), parts.end());
        c = "(" + std::to_string(layer[static_cast<std::size_t>(v)]);
        for (const auto& p : parts) c += p;
        c += ")";
        return c;
    };
    auto by_code = [&](int a, int b) { return tree_code(a) < tree_code(b); };
    std::vector<int> roots;
    for (std::size_t v = 0; v < parent.size(); ++v)
        if (parent[v] < 0) roots.push_back(static_cast<int>(v));
    std::sort(roots.begin(), roots.end(), by_code);
    LayeredForest out{layers, {}, {}};
    std::function<void(int, int)> emit = [&](int v, int new_parent) {
        const int id = out.size();
        out.parent.push_back(new_parent);
        out.layer.push_back(layer[static_cast<std::size_t>(v)]);
        auto kids = ch[static_cast<std::size_t>(v)];
        std::sort(kids.begin(), kids.end(), by_code);
        for (int w : kids) emit(w, id);
    };
    for (int r : roots) emit(r, -1);
    return out;
}

std::string LayeredForest::code() const
{
    std::string s = std::to_string(layers) + ":";
    const auto ch = children_of(parent);
    std::function<void(int)> walk = [&](int v) {
        s += "(" + std::to_string(layer[static_cast<std::size_t>(v)]);
        for (int w : ch[static_cast<std::size_t>(v)]) walk(w);
        s += ")";
    };
    for (int v = 0; v < size(); ++v)
        if (parent[static_cast<std::size_t>(v)] < 0) walk(v);
    return s;
}

std::size_t ForestSource::Hash::operator()(const LayeredForest& f) const noexcept
{
    std::size_t h = static_cast<std::size_t>(f.layers) * 0x9E3779B97F4A7C15ull;
    for (std::size_t v = 0; v < f.parent.size(); ++v)
        h = (h ^ static_cast<std::size_t>(f.parent[v] + 1) * 131u ^ static_cast<std::size_t>(f.layer[v])) *
            0x100000001B3ull;
    return h;
}

std::vector<LayeredForest> ForestSource::nondegenerate(int n) const
{
    if (n == 0) return {LayeredForest{}};
    std::set<std::string> seen;
    std::vector<std::pair<std::string, LayeredForest>> found;
    for (int nodes = n; nodes <= max_nodes; ++nodes) {
        std::vector<int> parent(static_cast<std::size_t>(nodes), -1), layer(static_cast<std::size_t>(nodes), 1);
        // parents precede children, so every forest has such a labelling
        std::function<void(int)> place = [&](int v) {
            if (v == nodes) {
                std::uint32_t used = 0;
                for (int l : layer) used |= 1u << l;
                if (used != ((1u << (n + 1)) - 2)) return;
                auto f = canonical_forest(n, parent, layer);
                auto c = f.code();
                if (seen.insert(c).second) found.emplace_back(std::move(c), std::move(f));
                return;
            }
            for (int p = -1; p < v; ++p) {
                parent[static_cast<std::size_t>(v)] = p;
                const int lo = p < 0 ? 1 : layer[static_cast<std::size_t>(p)];
                for (int l = lo; l <= n; ++l) {
                    layer[static_cast<std::size_t>(v)] = l;
                    place(v + 1);
                }
            }
        };
        place(0);
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<LayeredForest> out;
    for (auto& [c, f] : found) out.push_back(std::move(f));
    return out;
}

LayeredForest ForestSource::face(const LayeredForest& s, int n, int i) const
{
    if (i == 0) return drop_layer(s, 1, n - 1);
    if (i == n) return drop_layer(s, n, n - 1);
    std::vector<int> layer = s.layer;
    for (int& l : layer)
        if (l > i) --l;
    return canonical_forest(n - 1, s.parent, layer);
}

LayeredForest ForestSource::degeneracy(const LayeredForest& s, int n, int i) const
{
    std::vector<int> layer = s.layer;
    for (int& l : layer)
        if (l > i) ++l;
    return canonical_forest(n + 1, s.parent, layer);
}

std::string ForestSource::label(const LayeredForest& s, int) const { return s.code(); }

ForestOracle hopf_forest_set(int max_nodes, int cap)
{
    if (max_nodes < 0 || cap < 0) throw InvalidArgument("forest bounds must be non-negative");
    if (max_nodes > 7) throw InvalidArgument("forest enumeration is limited to 7 nodes");
    const ForestSource src{max_nodes};
    auto report = audit_simplicial_identities(src, all_simplices(src, cap));
    return {std::move(report), materialize(src, cap, cap >= max_nodes)};
}

}  // namespace q2seg
