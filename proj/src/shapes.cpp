#include "q2seg/shapes.hpp"

#include <algorithm>

#include "q2seg/error.hpp"

namespace q2seg {

using nlohmann::json;

namespace {

std::uint32_t letter_mask(const Word& w)
{
    std::uint32_t m = 0;
    for (int a : w) m |= 1u << a;
    return m;
}

Word normalize(const Word& w, std::uint32_t& collapse)
{
    Word out;
    collapse = 0;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t && w[t] == w[t - 1]) {
            collapse |= 1u << (t - 1);
            continue;
        }
        out.push_back(w[t]);
    }
    return out;
}

}  // namespace

std::string word_label(const Word& w)
{
    std::string out = "[";
    for (std::size_t k = 0; k < w.size(); ++k) out += (k ? "," : "") + std::to_string(w[k]);
    return out + "]";
}

bool is_subword(const Word& small, const Word& big)
{
    std::size_t k = 0;
    for (int a : big)
        if (k < small.size() && small[k] == a) ++k;
    return k == small.size();
}

int WordComplex::id(const Word& w) const
{
    auto it = index.find(w);
    if (it == index.end()) throw InvalidArgument("word " + word_label(w) + " is not a cell");
    return it->second;
}

SimplexRef WordComplex::simplex(const Word& w) const
{
    std::uint32_t collapse = 0;
    const Word nd = normalize(w, collapse);
    return {id(nd), static_cast<int>(w.size()) - 1, collapse};
}

WordComplex word_complex(int letters, const ArrowFn& arrow, const MemberFn& member, int depth, bool finite)
{
    if (letters < 1 || letters > 31) throw InvalidArgument("word complex alphabet size out of range");
    if (depth < 0 || depth > kMaxDim) throw InvalidArgument("word complex depth out of range");
    WordComplex wc;
    SSetBuilder b;
    std::vector<Word> level;
    for (int a = 0; a < letters; ++a)
        if (member({a})) level.push_back({a});
    for (int len = 1; len <= depth + 1 && !level.empty(); ++len) {
        for (const Word& w : level) {
            std::vector<SimplexRef> faces;
            if (len > 1)
                for (int k = 0; k < len; ++k) {
                    Word f = w;
                    f.erase(f.begin() + k);
                    faces.push_back(wc.simplex(f));
                }
            const int id = b.add(len - 1, std::move(faces), word_label(w));
            wc.index.emplace(w, id);
            wc.words.push_back(w);
        }
        if (len == depth + 1) break;
        std::vector<Word> next;
        for (const Word& w : level)
            for (int a = 0; a < letters; ++a) {
                if (a == w.back() || !arrow(w.back(), a)) continue;
                Word e = w;
                e.push_back(a);
                if (member(e)) next.push_back(std::move(e));
            }
        level = std::move(next);
    }
    wc.sset = b.build(depth, finite);
    return wc;
}

WordComplex simplicial_complex(int n, const std::vector<std::vector<int>>& facets)
{
    std::vector<std::uint32_t> fm;
    for (const auto& f : facets) {
        std::uint32_t m = 0;
        for (int v : f) {
            if (v < 0 || v > n) throw InvalidArgument("facet vertex out of range");
            m |= 1u << v;
        }
        fm.push_back(m);
    }
    auto member = [fm](const Word& w) {
        const std::uint32_t m = letter_mask(w);
        return std::any_of(fm.begin(), fm.end(), [m](std::uint32_t f) { return (m & ~f) == 0; });
    };
    return word_complex(n + 1, [](int a, int b) { return a < b; }, member, n, true);
}

Word isohorn_path(int n, int i, int l)
{
    Word w;
    for (int k = 0; k <= i; ++k) w.push_back(k);
    for (int t = 0; t < l; ++t) {
        w.push_back(i + 1);
        w.push_back(i);
    }
    for (int k = i + 2; k <= n; ++k) w.push_back(k);
    return w;
}

namespace {

ShapeSpec make_spec(ShapeKind kind, int n, int i = 0, int depth = 0, int stages = -1)
{
    ShapeSpec s;
    s.kind = kind;
    s.n = n;
    s.i = i;
    s.depth = depth;
    s.stages = stages;
    return s;
}

}  // namespace

ShapeSpec ShapeSpec::delta(int n) { return make_spec(ShapeKind::Delta, n); }
ShapeSpec ShapeSpec::boundary(int n) { return make_spec(ShapeKind::Boundary, n); }
ShapeSpec ShapeSpec::horn(int n, int missing)
{
    ShapeSpec s = make_spec(ShapeKind::Horn, n);
    s.missing = {missing};
    return s;
}
ShapeSpec ShapeSpec::genhorn(int n, std::vector<int> missing)
{
    ShapeSpec s = make_spec(ShapeKind::GenHorn, n);
    std::sort(missing.begin(), missing.end());
    s.missing = std::move(missing);
    return s;
}
ShapeSpec ShapeSpec::spine(const Triangulation& t)
{
    ShapeSpec s = make_spec(ShapeKind::Spine2Segal, t.n);
    s.triangles = t.triangles;
    return s;
}
ShapeSpec ShapeSpec::spine1(int n) { return make_spec(ShapeKind::Spine1, n); }
ShapeSpec ShapeSpec::isohorn(int n, int i, int depth, int stages)
{
    return make_spec(ShapeKind::IsoHorn, n, i, depth, stages);
}
ShapeSpec ShapeSpec::isoplex(int n, int i, int depth) { return make_spec(ShapeKind::Isoplex, n, i, depth); }
ShapeSpec ShapeSpec::edgewise_a(int n, int i) { return make_spec(ShapeKind::EdgewiseA, n, i); }
ShapeSpec ShapeSpec::edgewise_i(int n) { return make_spec(ShapeKind::EdgewiseI, n); }
ShapeSpec ShapeSpec::jtrunc(int depth) { return make_spec(ShapeKind::JTrunc, 1, 0, depth); }
ShapeSpec ShapeSpec::complex(int n, std::vector<std::vector<int>> facets)
{
    ShapeSpec s = make_spec(ShapeKind::Complex, n);
    s.facets = std::move(facets);
    return s;
}

namespace {

const std::vector<std::pair<ShapeKind, const char*>> kNames = {
    {ShapeKind::Delta, "delta"},         {ShapeKind::Boundary, "boundary"},   {ShapeKind::Horn, "horn"},
    {ShapeKind::GenHorn, "genhorn"},     {ShapeKind::Spine2Segal, "spine"},   {ShapeKind::Spine1, "spine1"},
    {ShapeKind::IsoHorn, "isohorn"},     {ShapeKind::Isoplex, "isoplex"},     {ShapeKind::EdgewiseA, "edgewise_a"},
    {ShapeKind::EdgewiseI, "edgewise_i"}, {ShapeKind::JTrunc, "jtrunc"},      {ShapeKind::Complex, "complex"},
};

const char* kind_name(ShapeKind k)
{
    for (auto& [kk, name] : kNames)
        if (kk == k) return name;
    return "?";
}

}  // namespace

json ShapeSpec::to_json() const
{
    json j{{"shape", kind_name(kind)}};
    switch (kind) {
    case ShapeKind::Delta:
    case ShapeKind::Boundary:
    case ShapeKind::Spine1:
    case ShapeKind::EdgewiseI: j["n"] = n; break;
    case ShapeKind::Horn: j["n"] = n; j["missing"] = missing.at(0); break;
    case ShapeKind::GenHorn: j["n"] = n; j["missing"] = missing; break;
    case ShapeKind::Spine2Segal: j["n"] = n; j["triangles"] = triangles; break;
    case ShapeKind::IsoHorn:
        j["n"] = n;
        j["i"] = i;
        j["depth"] = depth;
        if (stages >= 0) j["stages"] = stages;
        break;
    case ShapeKind::Isoplex: j["n"] = n; j["i"] = i; j["depth"] = depth; break;
    case ShapeKind::EdgewiseA: j["n"] = n; j["i"] = i; break;
    case ShapeKind::JTrunc: j["depth"] = depth; break;
    case ShapeKind::Complex: j["n"] = n; j["facets"] = facets; break;
    }
    return j;
}

ShapeSpec ShapeSpec::from_json(const json& j)
{
    const std::string name = j.at("shape").get<std::string>();
    ShapeSpec s;
    bool found = false;
    for (auto& [k, nm] : kNames)
        if (name == nm) {
            s.kind = k;
            found = true;
        }
    if (!found) throw InvalidArgument("unknown shape '" + name + "'");
    s.n = j.value("n", s.kind == ShapeKind::JTrunc ? 1 : 0);
    s.i = j.value("i", 0);
    s.depth = j.value("depth", 0);
    s.stages = j.value("stages", -1);
    if (j.contains("missing")) {
        if (j.at("missing").is_array())
            s.missing = j.at("missing").get<std::vector<int>>();
        else
            s.missing = {j.at("missing").get<int>()};
    }
    if (j.contains("triangles")) s.triangles = j.at("triangles").get<std::vector<Triangle>>();
    if (j.contains("facets")) s.facets = j.at("facets").get<std::vector<std::vector<int>>>();
    if (s.kind == ShapeKind::GenHorn) std::sort(s.missing.begin(), s.missing.end());
    return s;
}

Shape make_shape(int letters, const ArrowFn& arrow, const MemberFn& sub_member, const MemberFn& amb_member, int depth,
                 bool finite)
{
    Shape s{word_complex(letters, arrow, sub_member, depth, finite),
            word_complex(letters, arrow, amb_member, depth, finite),
            {}};
    s.inclusion = {s.sub.sset, s.ambient.sset, {}};
    for (const Word& w : s.sub.words) s.inclusion.images.push_back(s.ambient.sset->ref(s.ambient.id(w)));
    return s;
}

namespace {

Shape delta_shape(int n, const MemberFn& sub_member)
{
    if (n < 0 || n > 20) throw InvalidArgument("simplex dimension out of range");
    auto increasing = [](int a, int b) { return a < b; };
    return make_shape(n + 1, increasing, sub_member, [](const Word&) { return true; }, n, true);
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw InvalidArgument(what);
}

}  // namespace

Shape build_shape(const ShapeSpec& spec)
{
    const int n = spec.n;
    switch (spec.kind) {
    case ShapeKind::Delta:
        require(n >= 0, "delta needs n >= 0");
        return delta_shape(n, [](const Word&) { return true; });
    case ShapeKind::Boundary: {
        require(n >= 1, "boundary needs n >= 1");
        const std::uint32_t full = (1u << (n + 1)) - 1;
        return delta_shape(n, [full](const Word& w) { return letter_mask(w) != full; });
    }
    case ShapeKind::Horn:
    case ShapeKind::GenHorn: {
        require(!spec.missing.empty(), "horn needs missing faces");
        require(spec.kind == ShapeKind::GenHorn || spec.missing.size() == 1, "horn misses exactly one face");
        const auto h = GeneralizedHorn::from_missing(n, spec.missing);
        const std::uint32_t present = h.present;
        // a word lies in face m iff it avoids vertex m
        return delta_shape(n, [present](const Word& w) { return (present & ~letter_mask(w)) != 0; });
    }
    case ShapeKind::Spine2Segal: {
        const auto t = make_triangulation(n, spec.triangles);
        const std::string defect = triangulation_defect(t);
        require(defect.empty(), "invalid triangulation: " + defect);
        std::vector<std::uint32_t> tm;
        for (const auto& tr : t.triangles) tm.push_back((1u << tr[0]) | (1u << tr[1]) | (1u << tr[2]));
        return delta_shape(n, [tm](const Word& w) {
            const auto m = letter_mask(w);
            return std::any_of(tm.begin(), tm.end(), [m](std::uint32_t f) { return (m & ~f) == 0; });
        });
    }
    case ShapeKind::Spine1:
        require(n >= 1, "spine needs n >= 1");
        return delta_shape(n, [](const Word& w) { return w.size() == 1 || (w.size() == 2 && w[1] == w[0] + 1); });
    case ShapeKind::Complex: {
        require(n >= 0 && !spec.facets.empty(), "complex needs facets");
        std::vector<std::uint32_t> fm;
        for (const auto& f : spec.facets) {
            std::uint32_t m = 0;
            for (int v : f) {
                require(v >= 0 && v <= n, "facet vertex out of range");
                m |= 1u << v;
            }
            fm.push_back(m);
        }
        return delta_shape(n, [fm](const Word& w) {
            const auto m = letter_mask(w);
            return std::any_of(fm.begin(), fm.end(), [m](std::uint32_t f) { return (m & ~f) == 0; });
        });
    }
    case ShapeKind::EdgewiseA: {
        require(n >= 1 && spec.i >= 0 && spec.i <= n, "edgewise A needs n >= 1 and 0 <= i <= n");
        std::vector<std::uint32_t> avoid;
        for (int l = 0; l <= n; ++l)
            if (l != spec.i) avoid.push_back((1u << (n - l)) | (1u << (n + 1 + l)));
        return delta_shape(2 * n + 1, [avoid](const Word& w) {
            const auto m = letter_mask(w);
            return std::any_of(avoid.begin(), avoid.end(), [m](std::uint32_t a) { return (m & a) == 0; });
        });
    }
    case ShapeKind::EdgewiseI: {
        require(n >= 1, "edgewise I needs n >= 1");
        std::vector<std::uint32_t> tm;
        for (int j = 0; j < n; ++j)
            tm.push_back((1u << (n - j - 1)) | (1u << (n - j)) | (1u << (n + j + 1)) | (1u << (n + j + 2)));
        return delta_shape(2 * n + 1, [tm](const Word& w) {
            const auto m = letter_mask(w);
            return std::any_of(tm.begin(), tm.end(), [m](std::uint32_t f) { return (m & ~f) == 0; });
        });
    }
    case ShapeKind::Isoplex:
    case ShapeKind::IsoHorn:
    case ShapeKind::JTrunc: {
        const int i = spec.i;
        require(n >= 1 && i >= 0 && i < n, "isoplex needs 0 <= i < n");
        require(spec.depth >= n && spec.depth >= 1, "depth must be at least the shape dimension");
        auto arrow = [i](int a, int b) { return a <= b || (a == i + 1 && b == i); };
        auto all = [](const Word&) { return true; };
        if (spec.kind != ShapeKind::IsoHorn) return make_shape(n + 1, arrow, all, all, spec.depth, false);
        const std::uint32_t others = ((1u << (n + 1)) - 1) & ~(1u << i);
        MemberFn in_v = [others](const Word& w) { return (others & ~letter_mask(w)) != 0; };
        if (spec.stages < 0) return make_shape(n + 1, arrow, in_v, all, spec.depth, false);
        require(spec.depth >= n + 2 * spec.stages - 1, "depth too small for the requested iso-horn stages");
        const Word path = isohorn_path(n, i, spec.stages);
        return make_shape(n + 1, arrow, in_v, [in_v, path](const Word& w) { return in_v(w) || is_subword(w, path); },
                          spec.depth, false);
    }
    }
    throw InvalidArgument("unhandled shape kind");
}

}  // namespace q2seg
