#include "q2seg/fillers.hpp"

#include <unordered_set>

#include "q2seg/combinators.hpp"
#include "q2seg/error.hpp"

namespace q2seg {

namespace {

const std::vector<std::pair<Property, std::string>> kPropertyNames = {
    {Property::QuasiCat, "quasicat"},
    {Property::Quasi2Segal, "quasi2segal"},
    {Property::UniqueSpine, "unique_spine"},
    {Property::LowerUpper2Segal, "lower_upper_2segal"},
    {Property::JAugmented, "j_augmented"},
};

int needed_dim(const SSetMap& inclusion)
{
    const SSet& b = *inclusion.codomain;
    return b.finite() ? b.top_dim() : b.cap();
}

nlohmann::json describe_map(const SSet& a, const SSet& x, const Images& img)
{
    nlohmann::json j = nlohmann::json::object();
    for (int c = 0; c < a.size(); ++c) {
        const std::string key = a.cell(c).label.empty() ? std::to_string(c) : a.cell(c).label;
        j[key] = x.describe(img[static_cast<std::size_t>(c)]);
    }
    return j;
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t index)
{
    return seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull * (index + 1);
}

}  // namespace

std::string property_name(Property p)
{
    for (const auto& [k, v] : kPropertyNames)
        if (k == p) return v;
    return "unknown";
}

Property property_from_name(const std::string& s)
{
    for (const auto& [k, v] : kPropertyNames)
        if (v == s) return k;
    throw InvalidArgument("unknown property '" + s + "'");
}

nlohmann::json FillerReport::to_json() const
{
    nlohmann::json j = {{"property", property},
                        {"cap", cap},
                        {"mode", mode.sampled ? "sampled" : "exhaustive"},
                        {"seed", mode.seed},
                        {"checked", checked},
                        {"failures", failures},
                        {"inconclusive", inconclusive}};
    if (mode.sampled) j["samples_per_shape"] = mode.count;
    if (!multiplicity.empty()) {
        nlohmann::json m = nlohmann::json::object();
        for (const auto& [k, v] : multiplicity) m[std::to_string(k)] = v;
        j["multiplicity"] = m;
    }
    if (!note.empty()) j["note"] = note;
    return j;
}

void FillerReport::merge(const FillerReport& other)
{
    checked += other.checked;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    for (const auto& [k, v] : other.multiplicity) multiplicity[k] += v;
    inconclusive = inconclusive || other.inconclusive;
    if (!other.note.empty()) note += (note.empty() ? "" : "; ") + other.note;
}

FillerReport check_cases(const LiftTarget& x, const std::vector<HornCase>& cases, bool require_unique,
                         const CheckOptions& opts)
{
    FillerReport r;
    r.mode = opts.mode;
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const HornCase& hc = cases[ci];
        x->require_dim(needed_dim(hc.inclusion), "filler check on " + hc.name);
        const SSetPtr& a = hc.inclusion.domain;
        auto examine = [&](const Images& img) {
            ++r.checked;
            LiftingProblem p{hc.inclusion, SSetMap{a, x.sset(), img}};
            const std::uint64_t n = count_lifts(p, x, require_unique ? 2 : 1, opts.budget);
            if (require_unique) ++r.multiplicity[n];
            if (n == 0 || (require_unique && n != 1)) {
                r.failures.push_back({{"case", hc.name}, {"fillers", n}, {"horn", describe_map(*a, *x, img)}});
                if (r.failures.size() >= opts.max_failures) return false;
            }
            return true;
        };
        try {
            if (!opts.mode.sampled) {
                for_each_map(a, x, examine, opts.enumeration_budget);
            } else {
                std::mt19937_64 rng(case_seed(opts.mode.seed, ci));
                for (std::uint64_t s = 0; s < opts.mode.count; ++s) {
                    auto m = random_map(a, x, rng, opts.budget);
                    if (!m) break;
                    if (!examine(m->images)) break;
                }
            }
        } catch (const BudgetExceeded& e) {
            r.inconclusive = true;
            r.note = hc.name + ": " + e.what();
            return r;
        }
        if (r.failures.size() >= opts.max_failures) {
            r.note = "stopped after " + std::to_string(opts.max_failures) + " failures";
            break;
        }
    }
    return r;
}

std::vector<HornCase> inner_horn_cases(int n_min, int n_max)
{
    std::vector<HornCase> out;
    for (int n = std::max(n_min, 2); n <= n_max; ++n)
        for (int i = 1; i < n; ++i) {
            auto s = build_shape(ShapeSpec::horn(n, i));
            out.push_back({"Lambda^" + std::to_string(i) + "[" + std::to_string(n) + "]", s.inclusion});
        }
    return out;
}

std::vector<HornCase> two_segal_horn_cases(int n_min, int n_max)
{
    std::vector<HornCase> out;
    for (int n = std::max(n_min, 3); n <= n_max; ++n)
        for (const auto& h : enumerate_two_segal_horns(n))
            out.push_back({h.name(), build_shape(ShapeSpec::genhorn(n, h.missing())).inclusion});
    return out;
}

std::vector<HornCase> two_segal_spine_cases(int n_min, int n_max)
{
    std::vector<HornCase> out;
    for (int n = std::max(n_min, 3); n <= n_max; ++n)
        for (const auto& t : enumerate_triangulations(n))
            out.push_back({triangulation_name(t), build_shape(ShapeSpec::spine(t)).inclusion});
    return out;
}

std::vector<HornCase> segal_spine_cases(int n_min, int n_max)
{
    std::vector<HornCase> out;
    for (int n = std::max(n_min, 2); n <= n_max; ++n)
        out.push_back({"Sp[" + std::to_string(n) + "]", build_shape(ShapeSpec::spine1(n)).inclusion});
    return out;
}

HornCase j_augmented_case(int n, int i, int j, int j_depth)
{
    if (n < 2 || i < 0 || i > n) throw InvalidArgument("J-augmented horn needs n >= 2 and 0 <= i <= n");
    if ((j != i - 1 && j != i) || j < 0 || j + 1 > n) throw InvalidArgument("J edge must be i-1 -> i or i -> i+1");
    const Shape horn = build_shape(ShapeSpec::horn(n, i));
    const Shape jt = build_shape(ShapeSpec::jtrunc(std::max(j_depth, 1)));
    const SSetPtr d1 = delta(1);
    const SSetMap e{d1, jt.sub.sset, {jt.sub.simplex({0}), jt.sub.simplex({1}), jt.sub.simplex({0, 1})}};
    auto edge = [&](const WordComplex& w) {
        return SSetMap{d1, w.sset, {w.simplex({j}), w.simplex({j + 1}), w.simplex({j, j + 1})}};
    };
    const PushoutResult pa = pushout_along_mono(e, edge(horn.sub));
    const PushoutResult pb = pushout_along_mono(e, edge(horn.ambient));
    Images img(static_cast<std::size_t>(pa.p->size()));
    for (int c = 0; c < horn.sub.sset->size(); ++c)
        img[static_cast<std::size_t>(c)] = pb.x_to_p(horn.inclusion(horn.sub.sset->ref(c)));
    for (int c = 0; c < jt.sub.sset->size(); ++c) {
        const SimplexRef& at = pa.b_to_p.images[static_cast<std::size_t>(c)];
        if (!at.degenerate() && img[static_cast<std::size_t>(at.cell)].cell < 0)
            img[static_cast<std::size_t>(at.cell)] = pb.b_to_p.images[static_cast<std::size_t>(c)];
    }
    SSetMap inc{pa.p, pb.p, img};
    inc.validate();
    return {"Lambda^" + std::to_string(i) + "[" + std::to_string(n) + "]+J(" + std::to_string(j) + "->" +
                std::to_string(j + 1) + ")",
            inc};
}

std::vector<HornCase> j_augmented_cases(int n_min, int n_max, int j_depth)
{
    std::vector<HornCase> out;
    for (int n = std::max(n_min, 2); n <= n_max; ++n)
        for (int i = 0; i <= n; ++i)
            for (int j : {i - 1, i})
                if (j >= 0 && j + 1 <= n) out.push_back(j_augmented_case(n, i, j, j_depth));
    return out;
}

FillerReport check_filler_property(const SSetPtr& x, Property p, int dim_cap, const CheckOptions& opts)
{
    FillerReport r;
    switch (p) {
    case Property::QuasiCat:
        r = check_cases(LiftTarget(x), inner_horn_cases(2, dim_cap), false, opts);
        break;
    case Property::Quasi2Segal:
        r = check_cases(LiftTarget(x), two_segal_horn_cases(3, dim_cap), false, opts);
        break;
    case Property::UniqueSpine:
        r = check_cases(LiftTarget(x), two_segal_spine_cases(3, dim_cap), true, opts);
        break;
    case Property::JAugmented:
        x->require_dim(std::max(dim_cap, opts.j_depth), "J-augmented check");
        r = check_cases(LiftTarget(x), j_augmented_cases(2, dim_cap, opts.j_depth), false, opts);
        break;
    case Property::LowerUpper2Segal: {
        x->require_dim(dim_cap, "path-space check");
        r.mode = opts.mode;
        for (Side side : {Side::Left, Side::Right}) {
            if ((side == Side::Left && !opts.lower) || (side == Side::Right && !opts.upper)) continue;
            const auto ps = path_space(x, side);
            FillerReport part = check_cases(LiftTarget(ps.sset), segal_spine_cases(2, dim_cap - 1), true, opts);
            for (auto& f : part.failures) f["side"] = side == Side::Left ? "lower" : "upper";
            r.merge(part);
        }
        r.note += std::string(r.note.empty() ? "" : "; ") + (opts.lower ? "lower" : "") +
                  (opts.lower && opts.upper ? "+" : "") + (opts.upper ? "upper" : "") + " checked";
        break;
    }
    }
    r.property = property_name(p);
    r.cap = dim_cap;
    r.mode = opts.mode;
    return r;
}

std::vector<HornCase> pushout_product_cases(const GeneralizedHorn& generator, int max_k)
{
    std::vector<HornCase> out;
    const Shape g = build_shape(ShapeSpec::genhorn(generator.n, generator.missing()));
    std::vector<char> in_horn(static_cast<std::size_t>(g.ambient.sset->size()), 0);
    for (int c : image_cells(g.inclusion)) in_horn[static_cast<std::size_t>(c)] = 1;
    for (int k = 0; k <= max_k; ++k) {
        const SSetPtr dk = delta(k);
        const int top = dk->size() - 1;
        const ProductResult pr = product(g.ambient.sset, dk);
        std::vector<int> cells;
        for (int c = 0; c < pr.sset()->size(); ++c) {
            const int cx = pr.proj_x.images[static_cast<std::size_t>(c)].cell;
            const int cy = pr.proj_y.images[static_cast<std::size_t>(c)].cell;
            if (in_horn[static_cast<std::size_t>(cx)] || (k > 0 && cy != top)) cells.push_back(c);
        }
        Extracted a = extract_subcomplex(pr.sset(), cells);
        out.push_back({generator.name() + " box d[" + std::to_string(k) + "]", a.inclusion});
    }
    return out;
}

FillerReport check_rlp_pushout_product(const SSetPtr& x, const GeneralizedHorn& generator, int max_k,
                                       const CheckOptions& opts)
{
    if (!generator.is_two_segal()) throw InvalidArgument("generator must be a 2-Segal horn");
    FillerReport r = check_cases(LiftTarget(x), pushout_product_cases(generator, max_k), false, opts);
    r.property = "rlp_pushout_product";
    r.cap = generator.n + max_k;
    r.note += std::string(r.note.empty() ? "" : "; ") + "generator " + generator.name();
    return r;
}

nlohmann::json TransportReport::to_json() const
{
    return {{"side", side == Side::Left ? "left" : "right"},
            {"problems", problems},
            {"solvable", solvable},
            {"mismatches", mismatches}};
}

TransportReport check_path_transport(const SSetPtr& x, Side side, int max_n, std::uint64_t budget)
{
    TransportReport r;
    r.side = side;
    x->require_dim(max_n + 1, "path transport");
    const PathSpace ps = path_space(x, side);
    const LiftTarget tx(x), tp(ps.sset);
    for (int n = 2; n <= max_n; ++n)
        for (int i = 1; i < n; ++i) {
            const Shape h = build_shape(ShapeSpec::horn(n, i));
            const std::vector<int> missing = side == Side::Left ? std::vector<int>{0, i + 1} : std::vector<int>{i, n + 1};
            const Shape g = build_shape(ShapeSpec::genhorn(n + 1, missing));
            const std::string tag = "Lambda^" + std::to_string(i) + "[" + std::to_string(n) + "]";
            std::vector<int> cone(static_cast<std::size_t>(h.sub.sset->size()));
            for (int c = 0; c < h.sub.sset->size(); ++c) {
                Word w = h.sub.words[static_cast<std::size_t>(c)];
                if (side == Side::Left) {
                    for (int& v : w) ++v;
                    w.insert(w.begin(), 0);
                } else {
                    w.push_back(n + 1);
                }
                cone[static_cast<std::size_t>(c)] = g.sub.id(w);
            }
            const std::uint64_t path_maps = for_each_map(h.sub.sset, tp, [](const Images&) { return true; }, budget);
            std::unordered_set<Images, SimplexListHash> seen;
            std::uint64_t x_maps = 0;
            for_each_map(g.sub.sset, tx, [&](const Images& img) {
                ++x_maps;
                Images f(cone.size());
                for (std::size_t c = 0; c < cone.size(); ++c)
                    f[c] = ps.ez(img[static_cast<std::size_t>(cone[c])], h.sub.sset->cell(static_cast<int>(c)).dim);
                SSetMap fm{h.sub.sset, ps.sset, f};
                if (!fm.defect().empty()) {
                    r.mismatches.push_back(tag + ": transported horn is not a map");
                    return false;
                }
                seen.insert(f);
                const bool sx = solve_lifting({g.inclusion, SSetMap{g.sub.sset, x, img}}, tx, budget).has_value();
                const bool sp = solve_lifting({h.inclusion, fm}, tp, budget).has_value();
                ++r.problems;
                if (sx) ++r.solvable;
                if (sx != sp) {
                    r.mismatches.push_back(tag + ": solver outcomes differ");
                    return r.mismatches.size() < 16;
                }
                return true;
            }, budget);
            if (seen.size() != x_maps || x_maps != path_maps)
                r.mismatches.push_back(tag + ": cone transport is not a bijection (" + std::to_string(x_maps) + " vs " +
                                       std::to_string(path_maps) + ")");
        }
    return r;
}

}  // namespace q2seg
