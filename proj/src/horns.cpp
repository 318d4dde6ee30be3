#include "q2seg/horns.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

#include "q2seg/error.hpp"

namespace q2seg {

namespace {

std::uint32_t full_mask(int n) { return n >= 31 ? ~0u : (1u << (n + 1)) - 1; }

std::uint32_t to_mask(const std::vector<int>& s, int n)
{
    std::uint32_t m = 0;
    for (int v : s) {
        if (v < 0 || v > n) throw InvalidArgument("index " + std::to_string(v) + " outside {0.." + std::to_string(n) + "}");
        if (m >> v & 1u) throw InvalidArgument("repeated index " + std::to_string(v));
        m |= 1u << v;
    }
    return m;
}

std::string join_ints(const std::vector<int>& v)
{
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
    return out;
}

}  // namespace

bool is_broken(std::uint32_t s, int n)
{
    if (n < 3) throw InvalidArgument("is_broken needs n >= 3");
    if (n > 30 || (s & ~full_mask(n))) throw InvalidArgument("subset outside {0..n}");
    // broken iff membership changes at least four times around the cycle
    int changes = 0;
    for (int k = 0; k <= n; ++k) {
        const int next = k == n ? 0 : k + 1;
        changes += ((s >> k) & 1u) != ((s >> next) & 1u);
    }
    return changes >= 4;
}

bool is_broken(const std::vector<int>& s, int n) { return is_broken(to_mask(s, n), n); }

GeneralizedHorn GeneralizedHorn::from_missing(int n, const std::vector<int>& missing)
{
    if (n < 1) throw InvalidArgument("generalized horn needs n >= 1");
    return from_present(n, [&] {
        std::vector<int> p;
        const std::uint32_t m = to_mask(missing, n);
        for (int k = 0; k <= n; ++k)
            if (!(m >> k & 1u)) p.push_back(k);
        return p;
    }());
}

GeneralizedHorn GeneralizedHorn::from_present(int n, const std::vector<int>& present)
{
    if (n < 1 || n > 30) throw InvalidArgument("generalized horn dimension out of range");
    const std::uint32_t m = to_mask(present, n);
    if (m == 0 || m == full_mask(n)) throw InvalidArgument("present set must be a proper nonempty subset");
    return {n, m};
}

std::uint32_t GeneralizedHorn::missing_mask() const { return full_mask(n) & ~present; }

std::vector<int> GeneralizedHorn::missing() const
{
    std::vector<int> out;
    for (int k = 0; k <= n; ++k)
        if (!(present >> k & 1u)) out.push_back(k);
    return out;
}

std::vector<int> GeneralizedHorn::present_faces() const
{
    std::vector<int> out;
    for (int k = 0; k <= n; ++k)
        if (present >> k & 1u) out.push_back(k);
    return out;
}

bool GeneralizedHorn::is_two_segal() const
{
    return n >= 3 && std::popcount(present) == n - 1 && is_broken(present, n);
}

std::string GeneralizedHorn::name() const
{
    return "Lambda^{" + join_ints(missing()) + "}[" + std::to_string(n) + "]";
}

std::vector<GeneralizedHorn> enumerate_two_segal_horns(int n)
{
    if (n < 3) throw InvalidArgument("2-Segal horns need n >= 3");
    std::vector<GeneralizedHorn> out;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (is_broken((1u << i) | (1u << j), n)) out.push_back(GeneralizedHorn::from_missing(n, {i, j}));
    return out;
}

Triangulation make_triangulation(int n, std::vector<Triangle> triangles)
{
    for (auto& t : triangles) std::sort(t.begin(), t.end());
    std::sort(triangles.begin(), triangles.end());
    return {n, std::move(triangles)};
}

std::string triangulation_defect(const Triangulation& t)
{
    const int n = t.n;
    if (n < 2) return "polygon needs n >= 2";
    if (static_cast<int>(t.triangles.size()) != n - 1) return "wrong triangle count";
    std::set<std::pair<int, int>> edges;
    std::set<Triangle> seen;
    for (const auto& tr : t.triangles) {
        if (!(0 <= tr[0] && tr[0] < tr[1] && tr[1] < tr[2] && tr[2] <= n)) return "malformed triangle";
        if (!seen.insert(tr).second) return "repeated triangle";
        edges.insert({tr[0], tr[1]});
        edges.insert({tr[1], tr[2]});
        edges.insert({tr[0], tr[2]});
    }
    // chords (a,b), (c,d) cross iff a < c < b < d
    for (const auto& [a, b] : edges)
        for (const auto& [c, d] : edges)
            if (a < c && c < b && b < d) return "crossing edges";
    for (int k = 0; k < n; ++k)
        if (!edges.count({k, k + 1})) return "boundary edge missing";
    if (!edges.count({0, n})) return "boundary edge 0-n missing";
    return {};
}

std::vector<Triangulation> enumerate_triangulations(int n)
{
    if (n < 2) throw InvalidArgument("triangulations need n >= 2");
    // polygon on the consecutive vertices a..b, rooted at the edge (a,b)
    std::function<std::vector<std::vector<Triangle>>(int, int)> rec = [&](int a, int b) {
        std::vector<std::vector<Triangle>> out;
        if (b - a < 2) {
            out.emplace_back();
            return out;
        }
        for (int k = a + 1; k < b; ++k) {
            const auto left = rec(a, k);
            const auto right = rec(k, b);
            for (const auto& l : left)
                for (const auto& r : right) {
                    std::vector<Triangle> ts{{a, k, b}};
                    ts.insert(ts.end(), l.begin(), l.end());
                    ts.insert(ts.end(), r.begin(), r.end());
                    out.push_back(std::move(ts));
                }
        }
        return out;
    };
    std::vector<Triangulation> out;
    for (auto& ts : rec(0, n)) out.push_back(make_triangulation(n, std::move(ts)));
    std::sort(out.begin(), out.end(), [](const Triangulation& x, const Triangulation& y) {
        return x.triangles < y.triangles;
    });
    return out;
}

std::vector<int> extreme_vertices(const Triangulation& t)
{
    const int n = t.n;
    auto has = [&](Triangle tr) { return std::binary_search(t.triangles.begin(), t.triangles.end(), tr); };
    std::vector<int> out;
    if (has({0, 1, n})) out.push_back(0);
    for (int i = 1; i < n; ++i)
        if (has({i - 1, i, i + 1})) out.push_back(i);
    if (has({0, n - 1, n})) out.push_back(n);
    return out;
}

Triangulation triangulation_with_extremes(int n, int i, int j)
{
    if (n < 3) throw InvalidArgument("triangulation_with_extremes needs n >= 3");
    if (i > j) std::swap(i, j);
    if (i < 0 || j > n || i == j || !is_broken((1u << i) | (1u << j), n))
        throw InvalidArgument("vertices must form a broken pair");
    auto ear = [n](int v) -> Triangle {
        if (v == 0) return {0, 1, n};
        if (v == n) return {0, n - 1, n};
        return {v - 1, v, v + 1};
    };
    std::vector<Triangle> ts{ear(i), ear(j)};
    std::vector<int> rest;
    for (int v = 0; v <= n; ++v)
        if (v != i && v != j) rest.push_back(v);
    // fan the remaining polygon from its least vertex
    for (std::size_t k = 1; k + 1 < rest.size(); ++k) ts.push_back({rest[0], rest[k], rest[k + 1]});
    auto t = make_triangulation(n, std::move(ts));
    const std::string defect = triangulation_defect(t);
    if (!defect.empty()) throw Error("triangulation_with_extremes produced an invalid triangulation: " + defect);
    return t;
}

std::string triangulation_name(const Triangulation& t)
{
    std::string out = "{";
    for (std::size_t k = 0; k < t.triangles.size(); ++k) {
        if (k) out += ",";
        for (int v : t.triangles[k]) out += std::to_string(v);
    }
    return out + "}";
}

}  // namespace q2seg
