#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "q2seg/error.hpp"
#include "q2seg/examples.hpp"

namespace q2seg {

namespace {

using nlohmann::json;

int coface(int i, int x) { return x < i ? x : x + 1; }
int codegeneracy(int i, int x) { return x <= i ? x : x - 1; }

}  // namespace

FinAbGroup WaldhausenGrid::entry(int j, int k) const
{
    if (j == k) return {};
    return entries[static_cast<std::size_t>(index(j, k))];
}

AbHom WaldhausenGrid::hmap(int j, int k) const
{
    if (j == k) return hom_zero({}, entry(j + 1, k));
    return h[static_cast<std::size_t>(index(j, k))];
}

AbHom WaldhausenGrid::vmap(int j, int k) const
{
    if (k + 1 == j) return hom_zero(entry(j, k), {});
    return v[static_cast<std::size_t>(index(j, k))];
}

namespace {

AbHom hchain(const WaldhausenGrid& g, int j0, int j1, int k)
{
    AbHom r = hom_identity(g.entry(j0, k));
    for (int t = j0; t < j1; ++t) r = hom_compose(g.hmap(t, k), r);
    return r;
}

AbHom vchain(const WaldhausenGrid& g, int j, int k0, int k1)
{
    AbHom r = hom_identity(g.entry(j, k0));
    for (int t = k0; t < k1; ++t) r = hom_compose(g.vmap(j, t), r);
    return r;
}

WaldhausenGrid reindex(const WaldhausenGrid& g, int n, const std::function<int(int)>& f)
{
    WaldhausenGrid out;
    out.n = n;
    const std::size_t size = static_cast<std::size_t>(n * (n + 1) / 2);
    out.entries.resize(size);
    out.h.resize(size);
    out.v.resize(size);
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < j; ++k) {
            const auto e = static_cast<std::size_t>(WaldhausenGrid::index(j, k));
            out.entries[e] = g.entry(f(j), f(k));
            if (j < n) out.h[e] = hchain(g, f(j), f(j + 1), f(k));
            if (k + 1 < j) out.v[e] = vchain(g, f(j), f(k), f(k + 1));
        }
    return out;
}

}  // namespace

WaldhausenGrid WaldhausenGrid::face(int i) const
{
    if (n < 1 || i < 0 || i > n) throw InvalidArgument("face index out of range");
    return reindex(*this, n - 1, [i](int x) { return coface(i, x); });
}

WaldhausenGrid WaldhausenGrid::degeneracy(int i) const
{
    if (i < 0 || i > n) throw InvalidArgument("degeneracy index out of range");
    return reindex(*this, n + 1, [i](int x) { return codegeneracy(i, x); });
}

std::string WaldhausenGrid::defect() const
{
    const std::size_t size = static_cast<std::size_t>(n * (n + 1) / 2);
    if (entries.size() != size || h.size() != size || v.size() != size) return "grid tables have the wrong size";
    for (const auto& g : entries) {
        try {
            FinAbGroup::from_factors(g.factors);
        } catch (const Error& e) {
            return std::string("entry not in invariant form: ") + e.what();
        }
    }
    auto at = [](int j, int k) { return "(" + std::to_string(j) + "," + std::to_string(k) + ")"; };
    for (int j = 1; j < n; ++j)
        for (int k = 0; k < j; ++k) {
            const AbHom m = hmap(j, k);
            if (!(m.src == entry(j, k)) || !(m.dst == entry(j + 1, k)) || !m.defect().empty())
                return "horizontal map at " + at(j, k) + " is malformed";
            if (!m.injective()) return "horizontal map at " + at(j, k) + " is not injective";
        }
    for (int j = 2; j <= n; ++j)
        for (int k = 0; k + 1 < j; ++k) {
            const AbHom m = vmap(j, k);
            if (!(m.src == entry(j, k)) || !(m.dst == entry(j, k + 1)) || !m.defect().empty())
                return "vertical map at " + at(j, k) + " is malformed";
            if (!m.surjective()) return "vertical map at " + at(j, k) + " is not surjective";
        }
    for (int j = 1; j < n; ++j)
        for (int k = 0; k < j; ++k) {
            const AbHom top = hmap(j, k), left = vmap(j, k), right = vmap(j + 1, k), bottom = hmap(j, k + 1);
            const auto a = entry(j, k), b = entry(j + 1, k), c = entry(j, k + 1), d = entry(j + 1, k + 1);
            if (!(hom_compose(bottom, left) == hom_compose(right, top)))
                return "square at " + at(j, k) + " does not commute";
            if (a.order() * d.order() != b.order() * c.order()) return "square at " + at(j, k) + " fails the order count";
            // 0 -> a -> b + c -> d -> 0 with x -> (top x, left x) and (y, z) -> right y - bottom z
            const auto tt = top.table(), lt = left.table(), rt = right.table(), bt = bottom.table();
            std::set<std::pair<int, int>> im;
            for (int x = 0; x < a.order(); ++x) im.emplace(tt[static_cast<std::size_t>(x)], lt[static_cast<std::size_t>(x)]);
            if (static_cast<int>(im.size()) != a.order()) return "square at " + at(j, k) + " is not a pullback";
            std::set<std::pair<int, int>> ker;
            std::set<int> hit;
            for (int y = 0; y < b.order(); ++y)
                for (int z = 0; z < c.order(); ++z) {
                    const int w = d.add(rt[static_cast<std::size_t>(y)], d.negate(bt[static_cast<std::size_t>(z)]));
                    hit.insert(w);
                    if (w == 0) ker.emplace(y, z);
                }
            if (ker != im) return "square at " + at(j, k) + " is not exact in the middle";
            if (static_cast<int>(hit.size()) != d.order()) return "square at " + at(j, k) + " is not a pushout";
        }
    return {};
}

std::string WaldhausenGrid::label() const
{
    std::string s = "S" + std::to_string(n);
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < j; ++k) {
            s += " A" + std::to_string(j) + std::to_string(k) + "=" + entry(j, k).name();
            if (j < n && !entry(j, k).trivial()) s += " h" + hmap(j, k).str();
            if (k + 1 < j && !entry(j, k).trivial()) s += " v" + vmap(j, k).str();
        }
    return s;
}

json WaldhausenGrid::to_json() const
{
    json ent = json::array(), hs = json::array(), vs = json::array();
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < j; ++k) {
            ent.push_back({{"j", j}, {"k", k}, {"factors", entry(j, k).factors}});
            if (j < n) hs.push_back({{"j", j}, {"k", k}, {"matrix", hmap(j, k).m}});
            if (k + 1 < j) vs.push_back({{"j", j}, {"k", k}, {"matrix", vmap(j, k).m}});
        }
    return {{"n", n}, {"entries", ent}, {"horizontal", hs}, {"vertical", vs}};
}

bool grids_isomorphic(const WaldhausenGrid& a, const WaldhausenGrid& b)
{
    if (a.n != b.n || a.entries != b.entries) return false;
    const int n = a.n;
    std::vector<std::pair<int, int>> pos;
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < j; ++k) pos.emplace_back(j, k);
    std::map<FinAbGroup, std::vector<AbHom>> auts;
    std::map<std::pair<int, int>, AbHom> phi;
    auto consistent = [&](int j, int k) {
        // maps touching (j,k) whose other end is already assigned
        auto check = [&](int j0, int k0, int j1, int k1, const AbHom& ma, const AbHom& mb) {
            auto s = phi.find({j0, k0}), t = phi.find({j1, k1});
            if (s == phi.end() || t == phi.end()) return true;
            return hom_compose(t->second, ma) == hom_compose(mb, s->second);
        };
        if (j < n && !check(j, k, j + 1, k, a.hmap(j, k), b.hmap(j, k))) return false;
        if (j - 1 > k && !check(j - 1, k, j, k, a.hmap(j - 1, k), b.hmap(j - 1, k))) return false;
        if (k + 1 < j && !check(j, k, j, k + 1, a.vmap(j, k), b.vmap(j, k))) return false;
        if (k > 0 && !check(j, k - 1, j, k, a.vmap(j, k - 1), b.vmap(j, k - 1))) return false;
        return true;
    };
    std::function<bool(std::size_t)> go = [&](std::size_t t) {
        if (t == pos.size()) return true;
        const auto [j, k] = pos[t];
        const FinAbGroup g = a.entry(j, k);
        auto it = auts.find(g);
        if (it == auts.end()) it = auts.emplace(g, automorphisms(g)).first;
        for (const AbHom& f : it->second) {
            phi[{j, k}] = f;
            if (consistent(j, k) && go(t + 1)) return true;
        }
        phi.erase({j, k});
        return false;
    };
    return go(0);
}

namespace {

constexpr int kCatalogOrder = 8;

struct GroupInfo {
    int order = 1;
    std::vector<int> gens;                // code of each generator
    std::vector<std::vector<int>> coords;  // coordinates of each element
};

struct HomTable {
    std::uint32_t table;
    std::uint16_t images;        // of the source generators
    std::uint8_t kernel, image;  // element bitmasks
};

struct Catalog {
    std::vector<FinAbGroup> groups;
    std::vector<GroupInfo> info;
    std::vector<std::vector<std::vector<HomTable>>> homs;         // [src][dst]
    std::vector<std::uint32_t> tables;                            // [src][dst][images], flattened
};

int tab_get(std::uint32_t t, int e) { return static_cast<int>((t >> (3 * e)) & 7u); }
std::uint32_t tab_put(std::uint32_t t, int e, int x) { return t | (static_cast<std::uint32_t>(x) << (3 * e)); }

std::uint8_t tab_image(std::uint32_t t, int src_order)
{
    std::uint8_t m = 0;
    for (int e = 0; e < src_order; ++e) m = static_cast<std::uint8_t>(m | (1u << tab_get(t, e)));
    return m;
}

const Catalog& catalog()
{
    static const Catalog c = [] {
        Catalog c;
        c.groups = groups_up_to(kCatalogOrder);
        for (const auto& g : c.groups) {
            GroupInfo gi;
            gi.order = g.order();
            for (int t = 0; t < g.rank(); ++t) {
                std::vector<int> unit(static_cast<std::size_t>(g.rank()), 0);
                unit[static_cast<std::size_t>(t)] = 1;
                gi.gens.push_back(g.encode(unit));
            }
            for (int e = 0; e < gi.order; ++e) gi.coords.push_back(g.decode(e));
            c.info.push_back(std::move(gi));
        }
        const std::size_t k = c.groups.size();
        c.homs.assign(k, std::vector<std::vector<HomTable>>(k));
        c.tables.assign(k * k * 512, 0);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                for (const auto& f : all_homs(c.groups[a], c.groups[b])) {
                    const auto vals = f.table();
                    std::uint32_t t = 0;
                    std::uint8_t ker = 0;
                    for (std::size_t e = 0; e < vals.size(); ++e) {
                        t = tab_put(t, static_cast<int>(e), vals[e]);
                        if (vals[e] == 0) ker = static_cast<std::uint8_t>(ker | (1u << e));
                    }
                    std::uint16_t images = 0;
                    for (std::size_t g = 0; g < c.info[a].gens.size(); ++g)
                        images = static_cast<std::uint16_t>(images | tab_get(t, c.info[a].gens[g]) << (3 * g));
                    c.tables[(a * k + b) * 512 + images] = t;
                    c.homs[a][b].push_back({t, images, ker, tab_image(t, c.info[a].order)});
                }
        return c;
    }();
    return c;
}

int order_of(int id) { return catalog().info[static_cast<std::size_t>(id)].order; }

std::uint32_t table_at(int src, int dst, std::uint16_t images)
{
    const auto& c = catalog();
    return c.tables[(static_cast<std::size_t>(src) * c.groups.size() + static_cast<std::size_t>(dst)) * 512 + images];
}

std::uint16_t images_of(std::uint32_t t, int src)
{
    const auto& gens = catalog().info[static_cast<std::size_t>(src)].gens;
    std::uint16_t images = 0;
    for (std::size_t g = 0; g < gens.size(); ++g) images = static_cast<std::uint16_t>(images | tab_get(t, gens[g]) << (3 * g));
    return images;
}

std::uint32_t tab_identity(int order)
{
    std::uint32_t t = 0;
    for (int e = 0; e < order; ++e) t = tab_put(t, e, e);
    return t;
}

// g after f
std::uint32_t tab_compose(std::uint32_t g, std::uint32_t f, int src_order)
{
    std::uint32_t t = 0;
    for (int e = 0; e < src_order; ++e) t = tab_put(t, e, tab_get(g, tab_get(f, e)));
    return t;
}

int hidx(int j, int k) { return j * (j - 1) / 2 + k; }
int vidx(int j, int k) { return (j - 1) * (j - 2) / 2 + k; }

int p_entry(const PackedGrid& p, int j, int k) { return j == k ? 0 : p.g[static_cast<std::size_t>(hidx(j, k))]; }
// maps out of or into a zero entry are zero tables
std::uint32_t p_h(const PackedGrid& p, int j, int k)
{
    if (j == k) return 0u;
    return table_at(p_entry(p, j, k), p_entry(p, j + 1, k), p.h[static_cast<std::size_t>(hidx(j, k))]);
}

std::uint32_t p_v(const PackedGrid& p, int j, int k)
{
    if (k + 1 == j) return 0u;
    return table_at(p_entry(p, j, k), p_entry(p, j, k + 1), p.v[static_cast<std::size_t>(vidx(j, k))]);
}

std::uint32_t p_hchain(const PackedGrid& p, int j0, int j1, int k)
{
    const int o = order_of(p_entry(p, j0, k));
    std::uint32_t t = tab_identity(o);
    for (int j = j0; j < j1; ++j) t = tab_compose(p_h(p, j, k), t, o);
    return t;
}

// Generator images of A_{j0,k} carried along the horizontal maps to A_{j1,k}.
std::uint16_t p_hchain_images(const PackedGrid& p, int j0, int j1, int k)
{
    const auto& gens = catalog().info[static_cast<std::size_t>(p_entry(p, j0, k))].gens;
    std::uint16_t images = 0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        int e = gens[g];
        for (int j = j0; j < j1; ++j) e = tab_get(p_h(p, j, k), e);
        images = static_cast<std::uint16_t>(images | e << (3 * g));
    }
    return images;
}

std::uint16_t p_vchain_images(const PackedGrid& p, int j, int k0, int k1)
{
    const auto& gens = catalog().info[static_cast<std::size_t>(p_entry(p, j, k0))].gens;
    std::uint16_t images = 0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        int e = gens[g];
        for (int k = k0; k < k1; ++k) e = tab_get(p_v(p, j, k), e);
        images = static_cast<std::uint16_t>(images | e << (3 * g));
    }
    return images;
}

template <class F>
PackedGrid p_reindex(const PackedGrid& p, int n, F f)
{
    if (n > 6) throw InvalidArgument("packed grids stop at dimension 6");
    PackedGrid out;
    out.n = static_cast<std::uint8_t>(n);
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < j; ++k) {
            out.g[static_cast<std::size_t>(hidx(j, k))] = static_cast<std::uint8_t>(p_entry(p, f(j), f(k)));
            if (j < n) out.h[static_cast<std::size_t>(hidx(j, k))] = p_hchain_images(p, f(j), f(j + 1), f(k));
            if (k + 1 < j) out.v[static_cast<std::size_t>(vidx(j, k))] = p_vchain_images(p, f(j), f(k), f(k + 1));
        }
    return out;
}

AbHom hom_from_table(int src, int dst, std::uint32_t t)
{
    const auto& c = catalog();
    const auto& si = c.info[static_cast<std::size_t>(src)];
    const auto& di = c.info[static_cast<std::size_t>(dst)];
    AbHom f = hom_zero(c.groups[static_cast<std::size_t>(src)], c.groups[static_cast<std::size_t>(dst)]);
    const int sr = f.src.rank();
    for (int col = 0; col < sr; ++col) {
        const auto& y = di.coords[static_cast<std::size_t>(tab_get(t, si.gens[static_cast<std::size_t>(col)]))];
        for (int r = 0; r < f.dst.rank(); ++r) f.m[static_cast<std::size_t>(r * sr + col)] = y[static_cast<std::size_t>(r)];
    }
    return f;
}

int catalog_id(const FinAbGroup& g)
{
    const auto& gs = catalog().groups;
    const auto it = std::find(gs.begin(), gs.end(), g);
    if (it == gs.end()) throw InvalidArgument("group " + g.name() + " is outside the packed catalog");
    return static_cast<int>(it - gs.begin());
}

std::uint16_t images_of(const AbHom& f, const FinAbGroup& src, const FinAbGroup& dst)
{
    if (!(f.src == src) || !(f.dst == dst) || !f.defect().empty()) throw InvalidArgument("grid map is malformed");
    std::uint32_t t = 0;
    const auto vals = f.table();
    for (std::size_t e = 0; e < vals.size(); ++e) t = tab_put(t, static_cast<int>(e), vals[e]);
    return images_of(t, catalog_id(src));
}

}  // namespace

const std::vector<FinAbGroup>& small_group_catalog() { return catalog().groups; }

PackedGrid PackedGrid::face(int i) const
{
    if (n < 1 || i < 0 || i > n) throw InvalidArgument("face index out of range");
    return p_reindex(*this, n - 1, [i](int x) { return coface(i, x); });
}

PackedGrid PackedGrid::degeneracy(int i) const
{
    if (i < 0 || i > n) throw InvalidArgument("degeneracy index out of range");
    return p_reindex(*this, n + 1, [i](int x) { return codegeneracy(i, x); });
}

std::string PackedGrid::label() const
{
    const auto& c = catalog();
    std::string s = "S" + std::to_string(n) + " A=";
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < j; ++k) {
            const auto& f = c.groups[p_entry(*this, j, k)].factors;
            s += j + k > 1 ? "|" : "";
            if (f.empty()) s += "0";
            for (std::size_t t = 0; t < f.size(); ++t) s += (t ? "," : "") + std::to_string(f[t]);
        }
    auto maps = [&](const char* tag, bool horizontal) {
        s += tag;
        for (int j = 1; j <= n; ++j)
            for (int k = 0; k < j; ++k) {
                if (horizontal ? j == n : k + 1 == j) continue;
                const int dst = horizontal ? p_entry(*this, j + 1, k) : p_entry(*this, j, k + 1);
                s += hom_from_table(p_entry(*this, j, k), dst, horizontal ? p_h(*this, j, k) : p_v(*this, j, k)).str();
            }
    };
    if (n > 1) {
        maps(" h=", true);
        maps(" v=", false);
    }
    return s;
}

PackedGrid pack(const WaldhausenGrid& g)
{
    if (g.n < 0 || g.n > 6) throw InvalidArgument("packed grids stop at dimension 6");
    const std::size_t size = static_cast<std::size_t>(g.n * (g.n + 1) / 2);
    if (g.entries.size() != size || g.h.size() != size || g.v.size() != size)
        throw InvalidArgument("grid tables have the wrong size");
    PackedGrid p;
    p.n = static_cast<std::uint8_t>(g.n);
    for (int j = 1; j <= g.n; ++j)
        for (int k = 0; k < j; ++k) {
            p.g[static_cast<std::size_t>(hidx(j, k))] = static_cast<std::uint8_t>(catalog_id(g.entry(j, k)));
            if (j < g.n) p.h[static_cast<std::size_t>(hidx(j, k))] = images_of(g.hmap(j, k), g.entry(j, k), g.entry(j + 1, k));
            if (k + 1 < j) p.v[static_cast<std::size_t>(vidx(j, k))] = images_of(g.vmap(j, k), g.entry(j, k), g.entry(j, k + 1));
        }
    return p;
}

WaldhausenGrid unpack(const PackedGrid& p)
{
    const auto& c = catalog();
    WaldhausenGrid g;
    g.n = p.n;
    const std::size_t size = static_cast<std::size_t>(g.n * (g.n + 1) / 2);
    g.entries.resize(size);
    g.h.resize(size);
    g.v.resize(size);
    for (int j = 1; j <= g.n; ++j)
        for (int k = 0; k < j; ++k) {
            const auto e = static_cast<std::size_t>(hidx(j, k));
            g.entries[e] = c.groups[p_entry(p, j, k)];
            if (j < g.n) g.h[e] = hom_from_table(p_entry(p, j, k), p_entry(p, j + 1, k), p_h(p, j, k));
            if (k + 1 < j) g.v[e] = hom_from_table(p_entry(p, j, k), p_entry(p, j, k + 1), p_v(p, j, k));
        }
    return g;
}

std::size_t WaldhausenSource::Hash::operator()(const PackedGrid& g) const noexcept
{
    std::uint64_t h = 0x9E3779B97F4A7C15ull ^ g.n;
    auto mix = [&h](std::uint64_t x) { h = (h ^ x) * 0x100000001B3ull; h ^= h >> 29; };
    for (auto x : g.g) mix(x);
    for (auto x : g.h) mix(x);
    for (auto x : g.v) mix(x + 0x5555ull);
    return static_cast<std::size_t>(h);
}

std::vector<PackedGrid> WaldhausenSource::nondegenerate(int n) const
{
    std::vector<PackedGrid> out;
    if (!levels || n >= static_cast<int>(levels->size())) return out;
    for (const auto& g : (*levels)[static_cast<std::size_t>(n)]) {
        bool degenerate = false;
        for (int i = 0; i < n && !degenerate; ++i) degenerate = g.face(i).degeneracy(i) == g;
        if (!degenerate) out.push_back(g);
    }
    return out;
}

std::vector<std::vector<PackedGrid>> enumerate_waldhausen(int max_order, int cap, std::uint64_t budget)
{
    if (max_order < 1 || max_order > kCatalogOrder) throw InvalidArgument("max order must be in 1..8");
    if (cap < 0 || cap > 4) throw InvalidArgument("Waldhausen cap must be in 0..4");
    const auto& c = catalog();
    const int groups = static_cast<int>(c.groups.size());
    std::vector<std::vector<PackedGrid>> levels{{PackedGrid{}}};
    std::uint64_t total = 1;
    for (int n = 1; n <= cap; ++n) {
        std::vector<PackedGrid> level;
        for (const auto& y : levels.back()) {
            PackedGrid x = y;
            x.n = static_cast<std::uint8_t>(n);
            // the new row A_{n,k}, column by column
            std::function<void(int)> column = [&](int k) {
                if (k == n) {
                    level.push_back(x);
                    if (++total > budget) throw BudgetExceeded("Waldhausen enumeration exceeded its budget");
                    return;
                }
                if (k == 0) {
                    for (int gid = 0; gid < groups && order_of(gid) <= max_order; ++gid) {
                        x.g[static_cast<std::size_t>(hidx(n, 0))] = static_cast<std::uint8_t>(gid);
                        if (n == 1) {
                            column(1);
                            continue;
                        }
                        for (const auto& f : c.homs[p_entry(x, n - 1, 0)][static_cast<std::size_t>(gid)]) {
                            if (std::popcount(f.kernel) != 1) continue;
                            x.h[static_cast<std::size_t>(hidx(n - 1, 0))] = f.images;
                            column(1);
                        }
                    }
                    return;
                }
                const int m = p_entry(x, n, k - 1);
                const std::uint8_t kernel = tab_image(p_hchain(x, k, n, k - 1), order_of(p_entry(x, k, k - 1)));
                const int q_order = order_of(m) / std::popcount(kernel);
                for (int q = 0; q < groups; ++q) {
                    if (order_of(q) != q_order) continue;
                    for (const auto& s : c.homs[static_cast<std::size_t>(m)][static_cast<std::size_t>(q)]) {
                        if (s.kernel != kernel) continue;
                        x.g[static_cast<std::size_t>(hidx(n, k))] = static_cast<std::uint8_t>(q);
                        x.v[static_cast<std::size_t>(vidx(n, k - 1))] = s.images;
                        if (k < n - 1) {
                            // induced map A_{n-1,k} -> A_{n,k} through preimages along the vertical
                            const std::uint32_t down = p_v(x, n - 1, k - 1);
                            const int from = order_of(p_entry(x, n - 1, k - 1));
                            const std::uint32_t across = tab_compose(s.table, p_h(x, n - 1, k - 1), from);
                            std::uint32_t ind = 0;
                            for (int e = 0; e < order_of(p_entry(x, n - 1, k)); ++e) {
                                int pre = 0;
                                while (tab_get(down, pre) != e) ++pre;
                                ind = tab_put(ind, e, tab_get(across, pre));
                            }
                            x.h[static_cast<std::size_t>(hidx(n - 1, k))] = images_of(ind, p_entry(x, n - 1, k));
                        }
                        column(k + 1);
                    }
                }
            };
            column(0);
        }
        levels.push_back(std::move(level));
    }
    return levels;
}

std::optional<SimplexRef> WaldhausenOracle::find(const WaldhausenGrid& g) const
{
    if (!m.sset || g.n > m.sset->cap()) return std::nullopt;
    try {
        return m.ez(pack(g), g.n);
    } catch (const Error&) {
        return std::nullopt;
    }
}

WaldhausenOracle waldhausen_sset_ab(int max_order, int cap, std::uint64_t budget, bool audit, bool labels)
{
    auto levels = std::make_shared<const std::vector<std::vector<PackedGrid>>>(
        enumerate_waldhausen(max_order, cap, budget));
    WaldhausenOracle o;
    o.max_order = max_order;
    if (audit) o.audit = audit_simplicial_identities(WaldhausenSource{levels}, *levels);
    o.m = materialize(WaldhausenSource{levels, labels}, cap, false);
    o.m.source.levels.reset();
    return o;
}

namespace {

AbHom mat(const FinAbGroup& s, const FinAbGroup& t, std::vector<int> m) { return {s, t, std::move(m)}; }

WaldhausenGrid grid3(const std::map<std::pair<int, int>, FinAbGroup>& ent,
                     const std::map<std::pair<int, int>, std::vector<int>>& hm,
                     const std::map<std::pair<int, int>, std::vector<int>>& vm)
{
    WaldhausenGrid g;
    g.n = 3;
    g.entries.resize(6);
    g.h.resize(6);
    g.v.resize(6);
    for (const auto& [jk, grp] : ent) g.entries[static_cast<std::size_t>(WaldhausenGrid::index(jk.first, jk.second))] = grp;
    for (const auto& [jk, m] : hm)
        g.h[static_cast<std::size_t>(WaldhausenGrid::index(jk.first, jk.second))] =
            mat(g.entry(jk.first, jk.second), g.entry(jk.first + 1, jk.second), m);
    for (const auto& [jk, m] : vm)
        g.v[static_cast<std::size_t>(WaldhausenGrid::index(jk.first, jk.second))] =
            mat(g.entry(jk.first, jk.second), g.entry(jk.first, jk.second + 1), m);
    return g;
}

}  // namespace

CounterexampleReport appendix_counterexample(const WaldhausenOracle* oracle)
{
    const FinAbGroup z2{{2}}, z4{{4}}, z22{{2, 2}}, z42{{2, 4}};
    // Z/4+Z/2 is stored as Z/2+Z/4: coordinates (b, a) for the displayed (a, b).
    CounterexampleReport r;
    r.sigma = grid3({{{1, 0}, z2}, {{2, 0}, z4}, {{3, 0}, z42}, {{2, 1}, z2}, {{3, 1}, z22}, {{3, 2}, z2}},
                    {{{1, 0}, {2}}, {{2, 0}, {0, 1}}, {{2, 1}, {1, 0}}},
                    {{{2, 0}, {1}}, {{3, 0}, {0, 1, 1, 0}}, {{3, 1}, {0, 1}}});
    r.sigma_prime = grid3({{{1, 0}, z2}, {{2, 0}, z22}, {{3, 0}, z42}, {{2, 1}, z2}, {{3, 1}, z22}, {{3, 2}, z2}},
                          {{{1, 0}, {1, 0}}, {{2, 0}, {0, 1, 2, 0}}, {{2, 1}, {0, 1}}},
                          {{{2, 0}, {0, 1}}, {{3, 0}, {0, 1, 1, 0}}, {{3, 1}, {1, 0}}});
    r.sigma_defect = r.sigma.defect();
    r.sigma_prime_defect = r.sigma_prime.defect();
    if (oracle) {
        auto a = oracle->find(r.sigma), b = oracle->find(r.sigma_prime);
        r.sigma_in_oracle = a && !a->degenerate();
        r.sigma_prime_in_oracle = b && !b->degenerate();
    }
    if (r.sigma_defect.empty() && r.sigma_prime_defect.empty()) {
        r.d0_isomorphic = grids_isomorphic(r.sigma.face(0), r.sigma_prime.face(0));
        r.d2_isomorphic = grids_isomorphic(r.sigma.face(2), r.sigma_prime.face(2));
        r.totals_isomorphic = grids_isomorphic(r.sigma, r.sigma_prime);
    }
    return r;
}

bool CounterexampleReport::reproduces() const
{
    return sigma_defect.empty() && sigma_prime_defect.empty() && d0_isomorphic && d2_isomorphic && !totals_isomorphic;
}

json CounterexampleReport::to_json() const
{
    return {{"sigma", sigma.to_json()},
            {"sigma_prime", sigma_prime.to_json()},
            {"sigma_defect", sigma_defect},
            {"sigma_prime_defect", sigma_prime_defect},
            {"sigma_in_oracle", sigma_in_oracle},
            {"sigma_prime_in_oracle", sigma_prime_in_oracle},
            {"d0_isomorphic", d0_isomorphic},
            {"d2_isomorphic", d2_isomorphic},
            {"totals_isomorphic", totals_isomorphic},
            {"reproduces", reproduces()}};
}

}  // namespace q2seg
