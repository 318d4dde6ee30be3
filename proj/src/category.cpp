#include "q2seg/category.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>

#include "q2seg/error.hpp"

namespace q2seg {

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                               std::vector<int> identities, std::vector<std::vector<int>> compose)
    : objects_(std::move(objects)), morphisms_(std::move(morphisms)), identities_(std::move(identities)),
      compose_(std::move(compose))
{
    is_id_.assign(morphisms_.size(), 0);
    for (int id : identities_) {
        if (id < 0 || id >= morphism_count()) throw InvalidArgument("identity index out of range");
        is_id_[static_cast<std::size_t>(id)] = 1;
    }
    validate();
}

bool FiniteCategory::is_identity(int m) const { return is_id_[static_cast<std::size_t>(m)] != 0; }

int FiniteCategory::compose(int g, int f) const { return compose_[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)]; }

int FiniteCategory::inverse(int f) const
{
    const Morphism& m = morphism(f);
    for (int g = 0; g < morphism_count(); ++g) {
        const Morphism& h = morphism(g);
        if (h.src == m.tgt && h.tgt == m.src && compose(g, f) == identity(m.src) && compose(f, g) == identity(m.tgt))
            return g;
    }
    return -1;
}

void FiniteCategory::validate() const
{
    const int n = morphism_count();
    if (static_cast<int>(identities_.size()) != object_count()) throw InvalidArgument("one identity per object required");
    if (static_cast<int>(compose_.size()) != n) throw InvalidArgument("composition table has wrong size");
    for (const auto& row : compose_)
        if (static_cast<int>(row.size()) != n) throw InvalidArgument("composition table has wrong size");
    for (int m = 0; m < n; ++m) {
        const Morphism& f = morphism(m);
        if (f.src < 0 || f.src >= object_count() || f.tgt < 0 || f.tgt >= object_count())
            throw InvalidArgument("morphism endpoint out of range");
    }
    for (int o = 0; o < object_count(); ++o) {
        const Morphism& id = morphism(identity(o));
        if (id.src != o || id.tgt != o) throw InvalidArgument("identity has wrong endpoints");
    }
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
            const int h = compose(g, f);
            const bool composable = morphism(f).tgt == morphism(g).src;
            if (composable != (h >= 0)) throw InvalidArgument("composition defined exactly on composable pairs");
            if (h >= 0 && (morphism(h).src != morphism(f).src || morphism(h).tgt != morphism(g).tgt))
                throw InvalidArgument("composite has wrong endpoints");
        }
    for (int f = 0; f < n; ++f) {
        if (compose(identity(morphism(f).tgt), f) != f || compose(f, identity(morphism(f).src)) != f)
            throw InvalidArgument("unit law fails");
    }
    for (int h = 0; h < n; ++h)
        for (int g = 0; g < n; ++g) {
            const int hg = compose(h, g);
            if (hg < 0) continue;
            for (int f = 0; f < n; ++f) {
                const int gf = compose(g, f);
                if (gf < 0) continue;
                if (compose(hg, f) != compose(h, gf)) throw InvalidArgument("associativity fails");
            }
        }
}

std::vector<std::uint64_t> FiniteCategory::nondegenerate_counts(int max_len) const
{
    // ends[m] = number of identity-free strings of the current length ending in m
    std::vector<std::uint64_t> out{static_cast<std::uint64_t>(object_count())};
    std::vector<std::uint64_t> ends(morphisms_.size(), 0);
    for (int m = 0; m < morphism_count(); ++m) ends[static_cast<std::size_t>(m)] = is_identity(m) ? 0 : 1;
    for (int len = 1; len <= max_len; ++len) {
        std::uint64_t total = 0;
        for (auto e : ends) total += e;
        out.push_back(total);
        std::vector<std::uint64_t> next(morphisms_.size(), 0);
        for (int f = 0; f < morphism_count(); ++f)
            for (int g = 0; g < morphism_count(); ++g)
                if (!is_identity(g) && morphism(g).src == morphism(f).tgt)
                    next[static_cast<std::size_t>(g)] += ends[static_cast<std::size_t>(f)];
        ends = std::move(next);
    }
    return out;
}

nlohmann::json FiniteCategory::to_json() const
{
    using nlohmann::json;
    json objs = objects_;
    json mors = json::array();
    for (const auto& m : morphisms_) mors.push_back({{"id", m.name}, {"src", objects_[m.src]}, {"tgt", objects_[m.tgt]}});
    json comp = json::object();
    for (int g = 0; g < morphism_count(); ++g)
        for (int f = 0; f < morphism_count(); ++f) {
            const int h = compose(g, f);
            if (h >= 0) comp["(" + morphism(g).name + "," + morphism(f).name + ")"] = morphism(h).name;
        }
    json ids = json::object();
    for (int o = 0; o < object_count(); ++o) ids[objects_[static_cast<std::size_t>(o)]] = morphism(identity(o)).name;
    return {{"objects", objs}, {"morphisms", mors}, {"compose", comp}, {"identities", ids}};
}

FiniteCategory FiniteCategory::from_json(const nlohmann::json& j)
{
    std::vector<std::string> objects = j.at("objects").get<std::vector<std::string>>();
    std::map<std::string, int> obj_id, mor_id;
    for (std::size_t k = 0; k < objects.size(); ++k) obj_id[objects[k]] = static_cast<int>(k);
    std::vector<Morphism> mors;
    for (const auto& m : j.at("morphisms")) {
        const std::string name = m.at("id").get<std::string>();
        mor_id[name] = static_cast<int>(mors.size());
        mors.push_back({obj_id.at(m.at("src").get<std::string>()), obj_id.at(m.at("tgt").get<std::string>()), name});
    }
    std::vector<int> ids(objects.size(), -1);
    for (auto& [o, m] : j.at("identities").items()) ids[static_cast<std::size_t>(obj_id.at(o))] = mor_id.at(m.get<std::string>());
    std::vector<std::vector<int>> comp(mors.size(), std::vector<int>(mors.size(), -1));
    for (auto& [key, val] : j.at("compose").items()) {
        const auto comma = key.find(',');
        if (key.size() < 5 || key.front() != '(' || key.back() != ')' || comma == std::string::npos)
            throw InvalidArgument("malformed composition key '" + key + "'");
        const int g = mor_id.at(key.substr(1, comma - 1));
        const int f = mor_id.at(key.substr(comma + 1, key.size() - comma - 2));
        comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = mor_id.at(val.get<std::string>());
    }
    return {std::move(objects), std::move(mors), std::move(ids), std::move(comp)};
}

namespace {

// Builds a category from endpoint data and a composition rule.
template <class Rule>
FiniteCategory from_rule(std::vector<std::string> objects, std::vector<Morphism> mors, std::vector<int> ids, Rule rule)
{
    std::vector<std::vector<int>> comp(mors.size(), std::vector<int>(mors.size(), -1));
    for (std::size_t g = 0; g < mors.size(); ++g)
        for (std::size_t f = 0; f < mors.size(); ++f)
            if (mors[f].tgt == mors[g].src) comp[g][f] = rule(static_cast<int>(g), static_cast<int>(f));
    return {std::move(objects), std::move(mors), std::move(ids), std::move(comp)};
}

}  // namespace

FiniteCategory poset_category(int n)
{
    std::vector<std::string> objs;
    for (int k = 0; k <= n; ++k) objs.push_back(std::to_string(k));
    std::vector<Morphism> mors;
    std::map<std::pair<int, int>, int> id_of;
    std::vector<int> ids(static_cast<std::size_t>(n) + 1);
    for (int a = 0; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            id_of[{a, b}] = static_cast<int>(mors.size());
            if (a == b) ids[static_cast<std::size_t>(a)] = static_cast<int>(mors.size());
            mors.push_back({a, b, std::to_string(a) + "<=" + std::to_string(b)});
        }
    auto copy = mors;
    return from_rule(objs, mors, ids, [&](int g, int f) { return id_of.at({copy[f].src, copy[g].tgt}); });
}

FiniteCategory free_isomorphism()
{
    std::vector<Morphism> mors = {{0, 0, "1_0"}, {1, 1, "1_1"}, {0, 1, "u"}, {1, 0, "v"}};
    auto copy = mors;
    return from_rule({"0", "1"}, mors, {0, 1}, [&](int g, int f) {
        const int s = copy[f].src, t = copy[g].tgt;
        if (s == t) return s;
        return s == 0 ? 2 : 3;
    });
}

FiniteCategory discrete_category(int k)
{
    std::vector<std::string> objs;
    std::vector<Morphism> mors;
    std::vector<int> ids;
    for (int o = 0; o < k; ++o) {
        objs.push_back(std::to_string(o));
        ids.push_back(o);
        mors.push_back({o, o, "1_" + std::to_string(o)});
    }
    return from_rule(objs, mors, ids, [](int g, int) { return g; });
}

FiniteCategory cyclic_group(int order)
{
    if (order < 1) throw InvalidArgument("group order must be positive");
    std::vector<Morphism> mors;
    for (int g = 0; g < order; ++g) mors.push_back({0, 0, "g" + std::to_string(g)});
    return from_rule({"*"}, mors, {0}, [order](int g, int f) { return (g + f) % order; });
}

FiniteCategory symmetric_group3()
{
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<Morphism> mors;
    for (const auto& q : perms) mors.push_back({0, 0, std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2])});
    return from_rule({"*"}, mors, {0}, [&](int g, int f) {
        std::array<int, 3> r{};
        for (int k = 0; k < 3; ++k) r[static_cast<std::size_t>(k)] = perms[static_cast<std::size_t>(g)][static_cast<std::size_t>(perms[static_cast<std::size_t>(f)][static_cast<std::size_t>(k)])];
        return static_cast<int>(std::find(perms.begin(), perms.end(), r) - perms.begin());
    });
}

FiniteCategory random_category(std::uint64_t seed, int max_objects, int max_morphisms, std::uint64_t max_cells_dim7)
{
    if (max_objects < 2) throw InvalidArgument("random categories need at least two objects");
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull);
    auto draw = [&rng](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const int k = 2 + draw(max_objects - 1);
        std::vector<int> size(static_cast<std::size_t>(k));
        for (auto& s : size) s = 1 + draw(2);
        struct Fn {
            int src, tgt;
            std::vector<int> values;
            bool operator==(const Fn&) const = default;
        };
        std::vector<Fn> fns;
        for (int o = 0; o < k; ++o) {
            Fn id{o, o, {}};
            for (int x = 0; x < size[static_cast<std::size_t>(o)]; ++x) id.values.push_back(x);
            fns.push_back(id);
        }
        const int gens = 1 + draw(4);
        for (int g = 0; g < gens; ++g) {
            Fn f{draw(k), draw(k), {}};
            for (int x = 0; x < size[static_cast<std::size_t>(f.src)]; ++x) f.values.push_back(draw(size[static_cast<std::size_t>(f.tgt)]));
            if (std::find(fns.begin(), fns.end(), f) == fns.end()) fns.push_back(f);
        }
        bool too_big = false;
        for (bool grew = true; grew && !too_big;) {
            grew = false;
            const std::size_t count = fns.size();
            for (std::size_t a = 0; a < count && !too_big; ++a)
                for (std::size_t b = 0; b < count && !too_big; ++b) {
                    if (fns[a].tgt != fns[b].src) continue;
                    Fn c{fns[a].src, fns[b].tgt, {}};
                    for (int v : fns[a].values) c.values.push_back(fns[b].values[static_cast<std::size_t>(v)]);
                    if (std::find(fns.begin(), fns.end(), c) == fns.end()) {
                        fns.push_back(c);
                        grew = true;
                        too_big = static_cast<int>(fns.size()) > max_morphisms;
                    }
                }
        }
        if (too_big) continue;
        std::vector<std::string> objs;
        for (int o = 0; o < k; ++o) objs.push_back(std::string(1, static_cast<char>('a' + o)));
        std::vector<Morphism> mors;
        std::vector<int> ids;
        for (std::size_t m = 0; m < fns.size(); ++m) {
            std::string name = static_cast<int>(m) < k ? "1" + objs[m] : "f" + std::to_string(m - static_cast<std::size_t>(k));
            mors.push_back({fns[m].src, fns[m].tgt, name});
            if (static_cast<int>(m) < k) ids.push_back(static_cast<int>(m));
        }
        auto cat = from_rule(objs, mors, ids, [&](int g, int f) {
            Fn c{fns[static_cast<std::size_t>(f)].src, fns[static_cast<std::size_t>(g)].tgt, {}};
            for (int v : fns[static_cast<std::size_t>(f)].values) c.values.push_back(fns[static_cast<std::size_t>(g)].values[static_cast<std::size_t>(v)]);
            return static_cast<int>(std::find(fns.begin(), fns.end(), c) - fns.begin());
        });
        if (cat.nondegenerate_counts(7).back() > max_cells_dim7) continue;
        return cat;
    }
    throw Error("random_category: no admissible category found");
}

std::size_t NerveSource::Hash::operator()(const Simplex& s) const noexcept
{
    std::size_t h = s.size();
    for (int v : s) h = h * 1000003u ^ static_cast<std::size_t>(v);
    return h;
}

int NerveSource::vertex(const Simplex& s, int n, int v) const
{
    if (n == 0) return -1 - s[0];
    return v == 0 ? cat->morphism(s[0]).src : cat->morphism(s[static_cast<std::size_t>(v - 1)]).tgt;
}

std::vector<NerveSource::Simplex> NerveSource::nondegenerate(int n) const
{
    std::vector<Simplex> out;
    if (n == 0) {
        for (int o = 0; o < cat->object_count(); ++o) out.push_back({-1 - o});
        return out;
    }
    std::vector<Simplex> level;
    for (int m = 0; m < cat->morphism_count(); ++m)
        if (!cat->is_identity(m)) level.push_back({m});
    for (int len = 2; len <= n; ++len) {
        std::vector<Simplex> next;
        for (const auto& s : level)
            for (int m = 0; m < cat->morphism_count(); ++m)
                if (!cat->is_identity(m) && cat->morphism(m).src == cat->morphism(s.back()).tgt) {
                    auto e = s;
                    e.push_back(m);
                    next.push_back(std::move(e));
                }
        level = std::move(next);
    }
    return level;
}

NerveSource::Simplex NerveSource::face(const Simplex& s, int n, int i) const
{
    if (n == 1) return {-1 - (i == 0 ? cat->morphism(s[0]).tgt : cat->morphism(s[0]).src)};
    Simplex out;
    if (i == 0) {
        out.assign(s.begin() + 1, s.end());
    } else if (i == n) {
        out.assign(s.begin(), s.end() - 1);
    } else {
        for (int k = 0; k < n; ++k) {
            if (k == i - 1) {
                out.push_back(cat->compose(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i - 1)]));
                ++k;
            } else {
                out.push_back(s[static_cast<std::size_t>(k)]);
            }
        }
    }
    return out;
}

NerveSource::Simplex NerveSource::degeneracy(const Simplex& s, int n, int i) const
{
    if (n == 0) return {cat->identity(-1 - s[0])};
    Simplex out = s;
    out.insert(out.begin() + i, cat->identity(vertex(s, n, i)));
    return out;
}

std::string NerveSource::label(const Simplex& s, int n) const
{
    if (n == 0) return cat->object_name(-1 - s[0]);
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "|" : "") + cat->morphism(s[k]).name;
    return out;
}

SimplexRef Nerve::simplex(const std::vector<int>& arrows) const
{
    if (arrows.empty()) throw InvalidArgument("use object() for vertices");
    return m.ez(arrows, static_cast<int>(arrows.size()));
}

SimplexRef Nerve::object(int o) const { return m.ez({-1 - o}, 0); }

Nerve nerve(const FiniteCategory& c, int cap)
{
    auto owned = std::make_shared<const FiniteCategory>(c);
    const bool finite = owned->nondegenerate_counts(cap + 1).back() == 0;
    Nerve n{owned, materialize(NerveSource{owned.get()}, cap, finite)};
    return n;
}

}  // namespace q2seg
