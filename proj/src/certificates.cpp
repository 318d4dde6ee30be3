#include "q2seg/certificates.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_map>

#include "q2seg/combinators.hpp"
#include "q2seg/error.hpp"
#include "q2seg/sset_json.hpp"

namespace q2seg {

namespace {

using nlohmann::json;

// A generator horn glued along the ambient simplex spelled by sigma.
struct Planned {
    Word sigma;
    GeneralizedHorn gen;
};

Word drop(const Word& w, int pos)
{
    Word out = w;
    out.erase(out.begin() + pos);
    return out;
}

std::string mask_list(std::uint32_t m)
{
    std::string s = "{";
    for (int k = 0; k < 32; ++k)
        if (m >> k & 1u) s += (s.size() > 1 ? "," : "") + std::to_string(k);
    return s + "}";
}

void plan_genhorn(const Word& sigma, int m, std::uint32_t present, std::vector<Planned>& out)
{
    if (m < 3 || !is_broken(present, m))
        throw InvalidArgument("present faces " + mask_list(present) + " of Delta[" + std::to_string(m) +
                              "] are not broken");
    const GeneralizedHorn h{m, present};
    if (std::popcount(present) == m - 1) {
        out.push_back({sigma, h});
        return;
    }
    for (int i = 0; i <= m; ++i) {
        if (present >> i & 1u) continue;
        if (!is_broken(present | (1u << i), m)) continue;
        std::uint32_t restricted = 0;
        for (int s = 0; s <= m; ++s)
            if (present >> s & 1u) restricted |= 1u << (s - (s > i ? 1 : 0));
        plan_genhorn(drop(sigma, i), m - 1, restricted, out);
        plan_genhorn(sigma, m, present | (1u << i), out);
        return;
    }
    throw Error("no broken extension of " + mask_list(present));
}

Triangulation restrict_triangulation(const Triangulation& t, int v)
{
    std::vector<Triangle> tris;
    for (const auto& tr : t.triangles) {
        if (tr[0] == v || tr[1] == v || tr[2] == v) continue;
        Triangle r = tr;
        for (int& x : r) x -= x > v ? 1 : 0;
        tris.push_back(r);
    }
    return make_triangulation(t.n - 1, std::move(tris));
}

void plan_spine(const Word& sigma, const Triangulation& t, std::vector<Planned>& out);

// T u d_i -> Delta[m], i extreme in T.
void plan_spine_plus(const Word& sigma, const Triangulation& t, int i, std::vector<Planned>& out)
{
    if (t.n == 3) {
        plan_spine(sigma, t, out);
        return;
    }
    int j = -1;
    for (int e : extreme_vertices(t))
        if (e != i) {
            j = e;
            break;
        }
    if (j < 0) throw Error("triangulation has a single extreme vertex");
    plan_spine_plus(drop(sigma, j), restrict_triangulation(t, j), i - (i > j ? 1 : 0), out);
    plan_genhorn(sigma, t.n, (1u << i) | (1u << j), out);
}

void plan_spine(const Word& sigma, const Triangulation& t, std::vector<Planned>& out)
{
    if (t.n <= 2) return;
    if (t.n == 3) {
        std::uint32_t present = 0;
        for (const auto& tr : t.triangles) present |= 0xFu & ~((1u << tr[0]) | (1u << tr[1]) | (1u << tr[2]));
        out.push_back({sigma, {3, present}});
        return;
    }
    const int i = extreme_vertices(t).front();
    plan_spine(drop(sigma, i), restrict_triangulation(t, i), out);
    plan_spine_plus(sigma, t, i, out);
}

Word iota(int n)
{
    Word w;
    for (int k = 0; k <= n; ++k) w.push_back(k);
    return w;
}

class HornCache {
  public:
    const Shape& get(const GeneralizedHorn& h)
    {
        const auto key = std::make_pair(h.n, h.present);
        auto it = shapes_.find(key);
        if (it == shapes_.end())
            it = shapes_.emplace(key, std::make_shared<Shape>(build_shape(ShapeSpec::genhorn(h.n, h.missing()))))
                     .first;
        return *it->second;
    }

  private:
    std::map<std::pair<int, std::uint32_t>, std::shared_ptr<Shape>> shapes_;
};

Word apply_letters(const Word& sigma, const Word& w)
{
    Word out;
    out.reserve(w.size());
    for (int v : w) out.push_back(sigma[static_cast<std::size_t>(v)]);
    return out;
}

Certificate materialize(const ShapeSpec& claim, const Shape& shape, const std::vector<Planned>& plan)
{
    Certificate cert{claim, {}};
    SSetPtr p = shape.sub.sset;
    std::vector<int> phi(static_cast<std::size_t>(p->size()));
    std::unordered_map<int, int> inv;
    for (int c = 0; c < p->size(); ++c) {
        phi[static_cast<std::size_t>(c)] = shape.inclusion.images[static_cast<std::size_t>(c)].cell;
        inv.emplace(phi[static_cast<std::size_t>(c)], c);
    }
    HornCache cache;
    for (const Planned& st : plan) {
        const Shape& g = cache.get(st.gen);
        std::vector<SimplexRef> attach;
        attach.reserve(g.sub.words.size());
        for (const Word& w : g.sub.words) {
            const Word img = apply_letters(st.sigma, w);
            const SimplexRef a = shape.ambient.simplex(img);
            auto it = inv.find(a.cell);
            if (it == inv.end())
                throw Error("certificate generation: " + word_label(img) + " is not present before " +
                            st.gen.name());
            attach.push_back({it->second, a.dim, a.collapse});
        }
        const SSetMap f{g.sub.sset, p, attach};
        const auto po = pushout_along_mono(g.inclusion, f);
        const int old = p->size();
        p = po.p;
        phi.resize(static_cast<std::size_t>(p->size()), -1);
        for (std::size_t c = 0; c < g.ambient.words.size(); ++c) {
            const SimplexRef r = po.b_to_p.images[c];
            if (r.cell < old || r.degenerate()) continue;
            const SimplexRef a = shape.ambient.simplex(apply_letters(st.sigma, g.ambient.words[c]));
            if (a.degenerate())
                throw Error("certificate generation: a new cell of " + st.gen.name() + " degenerates in the ambient");
            phi[static_cast<std::size_t>(r.cell)] = a.cell;
            inv[a.cell] = r.cell;
        }
        cert.steps.push_back(PushoutStep{st.gen, std::move(attach)});
    }
    return cert;
}

std::optional<SSetMap> word_map(const WordComplex& src, const WordComplex& dst, const std::vector<int>& g,
                                std::string& why)
{
    SSetMap m{src.sset, dst.sset, {}};
    m.images.reserve(src.words.size());
    for (const Word& w : src.words) {
        Word img;
        for (int v : w) {
            if (v < 0 || v >= static_cast<int>(g.size())) {
                why = "letter " + std::to_string(v) + " has no image";
                return std::nullopt;
            }
            img.push_back(g[static_cast<std::size_t>(v)]);
        }
        try {
            m.images.push_back(dst.simplex(img));
        } catch (const InvalidArgument&) {
            why = word_label(w) + " goes to " + word_label(img) + ", which is not a simplex of the target";
            return std::nullopt;
        }
    }
    return m;
}

int letter_count(const Shape& s) { return s.ambient.sset->count(0); }

VerifyReport verify_impl(const Certificate& c, int nesting);

VerifyReport fail(VerifyReport r, int step, std::string why)
{
    r.accepted = false;
    r.failed_step = step;
    r.reason = std::move(why);
    return r;
}

VerifyReport verify_retract(const Certificate& c, const Shape& shape, int k, const RetractStep& rs, int nesting)
{
    VerifyReport r;
    r.steps = static_cast<int>(c.steps.size());
    if (!rs.through) return fail(r, k, "retract step has no certificate to retract from");
    if (nesting > 8) return fail(r, k, "retract certificates nested too deeply");
    const VerifyReport inner = verify_impl(*rs.through, nesting + 1);
    if (!inner.accepted)
        return fail(r, k, "retract source rejected at step " + std::to_string(inner.failed_step) + ": " + inner.reason);
    Shape mid;
    try {
        mid = build_shape(rs.through->claim);
    } catch (const Error& e) {
        return fail(r, k, std::string("retract source claim: ") + e.what());
    }
    const RetractCheck rc = check_retract(shape, mid, rs.f, rs.p);
    if (!rc.ok()) return fail(r, k, "retract: " + rc.defect);
    r.accepted = true;
    r.replayed_counts = shape.ambient.sset->counts();
    return r;
}

VerifyReport verify_impl(const Certificate& c, int nesting)
{
    VerifyReport r;
    r.steps = static_cast<int>(c.steps.size());
    Shape shape;
    try {
        shape = build_shape(c.claim);
    } catch (const Error& e) {
        return fail(r, -1, std::string("claim: ") + e.what());
    }
    int retracts = 0, pushouts = 0;
    for (const Step& s : c.steps) {
        retracts += std::holds_alternative<RetractStep>(s);
        pushouts += std::holds_alternative<PushoutStep>(s);
    }
    if (retracts > 1 || (retracts == 1 && pushouts > 0))
        return fail(r, -1, "a retract step must be the only non-compose step");
    for (int k = 0; k < r.steps; ++k)
        if (const auto* rs = std::get_if<RetractStep>(&c.steps[static_cast<std::size_t>(k)]))
            return verify_retract(c, shape, k, *rs, nesting);

    SSetPtr p = shape.sub.sset;
    SSetMap a_to_p = identity_map(p);
    HornCache cache;
    for (int k = 0; k < r.steps; ++k) {
        const auto* ps = std::get_if<PushoutStep>(&c.steps[static_cast<std::size_t>(k)]);
        if (!ps) continue;
        if (!ps->generator.is_two_segal())
            return fail(r, k, "generator not 2-Segal: " + ps->generator.name());
        const Shape& g = cache.get(ps->generator);
        if (ps->attach.size() != g.sub.words.size())
            return fail(r, k,
                        "attaching map has " + std::to_string(ps->attach.size()) + " images for " +
                            std::to_string(g.sub.words.size()) + " generator cells");
        for (std::size_t h = 0; h < ps->attach.size(); ++h) {
            const SimplexRef& s = ps->attach[h];
            if (s.cell < 0 || s.cell >= p->size() || s.dim != g.sub.sset->cell(static_cast<int>(h)).dim ||
                s.cell_dim() != p->cell(s.cell).dim)
                return fail(r, k, "attaching map: image of generator cell " + std::to_string(h) + " is malformed");
        }
        const SSetMap f{g.sub.sset, p, ps->attach};
        const std::string defect = f.defect();
        if (!defect.empty()) return fail(r, k, "attaching map: face mismatch: " + defect);
        const auto po = pushout_along_mono(g.inclusion, f);
        a_to_p = compose(po.x_to_p, a_to_p);
        p = po.p;
    }
    r.replayed_counts = p->counts();
    std::vector<int> alpha(static_cast<std::size_t>(shape.sub.sset->size()));
    for (std::size_t a = 0; a < alpha.size(); ++a) alpha[a] = static_cast<int>(a);
    if (!arrow_iso(a_to_p, shape.inclusion, alpha))
        return fail(r, -1, "replayed inclusion is not isomorphic to the claim");
    r.accepted = true;
    return r;
}

}  // namespace

int Certificate::pushout_count() const
{
    return static_cast<int>(
        std::count_if(steps.begin(), steps.end(), [](const Step& s) { return std::holds_alternative<PushoutStep>(s); }));
}

json Certificate::to_json() const
{
    json steps_j = json::array();
    for (const Step& s : steps) {
        if (const auto* ps = std::get_if<PushoutStep>(&s)) {
            json images = json::array();
            for (const auto& a : ps->attach) images.push_back(simplex_to_json(a));
            steps_j.push_back({{"type", "pushout"},
                               {"generator", {{"n", ps->generator.n}, {"missing", ps->generator.missing()}}},
                               {"attach", {{"images", images}}}});
        } else if (const auto* rs = std::get_if<RetractStep>(&s)) {
            steps_j.push_back({{"type", "retract"},
                               {"through", rs->through ? rs->through->to_json() : json()},
                               {"f", rs->f},
                               {"p", rs->p}});
        } else {
            steps_j.push_back({{"type", "compose"}});
        }
    }
    return {{"schema", "cert/1"}, {"claim", claim.to_json()}, {"steps", steps_j}};
}

Certificate Certificate::from_json(const json& j)
{
    if (!j.is_object() || j.value("schema", std::string("cert/1")) != "cert/1")
        throw InvalidArgument("unsupported certificate schema");
    Certificate c;
    try {
        c.claim = ShapeSpec::from_json(j.at("claim"));
        for (const json& s : j.at("steps")) {
            const std::string type = s.at("type").get<std::string>();
            if (type == "pushout") {
                const json& g = s.at("generator");
                PushoutStep ps{GeneralizedHorn::from_missing(g.at("n").get<int>(),
                                                             g.at("missing").get<std::vector<int>>()),
                               {}};
                for (const json& im : s.at("attach").at("images")) ps.attach.push_back(simplex_from_json(im));
                c.steps.emplace_back(std::move(ps));
            } else if (type == "retract") {
                RetractStep rs{std::make_shared<const Certificate>(from_json(s.at("through"))),
                               s.at("f").get<std::vector<int>>(), s.at("p").get<std::vector<int>>()};
                c.steps.emplace_back(std::move(rs));
            } else if (type == "compose") {
                c.steps.emplace_back(ComposeStep{});
            } else {
                throw InvalidArgument("unknown certificate step '" + type + "'");
            }
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed certificate: ") + e.what());
    }
    return c;
}

json VerifyReport::to_json() const
{
    return {{"accepted", accepted},
            {"failed_step", failed_step},
            {"reason", reason},
            {"steps", steps},
            {"replayed_counts", replayed_counts}};
}

Certificate certify_anodyne(const ShapeSpec& target)
{
    std::vector<Planned> plan;
    ShapeSpec claim = target;
    switch (target.kind) {
    case ShapeKind::GenHorn: {
        const auto h = GeneralizedHorn::from_missing(target.n, target.missing);
        if (target.n < 3 || !is_broken(h.present, target.n))
            throw InvalidArgument(h.name() + " does not have a broken set of faces");
        plan_genhorn(iota(target.n), target.n, h.present, plan);
        break;
    }
    case ShapeKind::Spine2Segal: {
        const auto t = make_triangulation(target.n, target.triangles);
        const std::string defect = triangulation_defect(t);
        if (!defect.empty()) throw InvalidArgument("invalid triangulation: " + defect);
        plan_spine(iota(target.n), t, plan);
        break;
    }
    case ShapeKind::IsoHorn: {
        const int n = target.n, i = target.i;
        if (n < 2 || i < 0 || i >= n) throw InvalidArgument("iso-horn certificates need n >= 2 and 0 <= i < n");
        if (target.depth < n) throw InvalidArgument("iso-horn depth must be at least n");
        const int fits = (target.depth - n + 1) / 2;
        if (claim.stages < 0) claim.stages = fits;
        if (claim.stages > fits)
            throw InvalidArgument("depth " + std::to_string(target.depth) + " cannot hold " +
                                  std::to_string(claim.stages) + " iso-horn stages");
        for (int l = 1; l <= claim.stages; ++l)
            plan.push_back({isohorn_path(n, i, l), GeneralizedHorn::from_missing(n + 2 * l - 1, {i, i + 2 * l})});
        break;
    }
    default:
        throw InvalidArgument("certify_anodyne handles generalized horns, 2-Segal spines and iso-horns");
    }
    for (const auto& st : plan)
        if (!st.gen.is_two_segal()) throw Error("planned generator " + st.gen.name() + " is not a 2-Segal horn");
    return materialize(claim, build_shape(claim), plan);
}

VerifyReport verify_certificate(const Certificate& c)
{
    try {
        return verify_impl(c, 0);
    } catch (const Error& e) {
        VerifyReport r;
        r.steps = static_cast<int>(c.steps.size());
        return fail(r, -1, e.what());
    }
}

RetractCheck check_retract(const Shape& a, const Shape& m, const std::vector<int>& f, const std::vector<int>& p)
{
    RetractCheck rc;
    if (static_cast<int>(f.size()) != letter_count(a) || static_cast<int>(p.size()) != letter_count(m)) {
        rc.defect = "letter maps have the wrong length";
        return rc;
    }
    std::string why;
    const auto f_bot = word_map(a.ambient, m.ambient, f, why);
    rc.f_defined = f_bot.has_value();
    if (!rc.f_defined) {
        rc.defect = "f is not a map of ambients: " + why;
        return rc;
    }
    const auto p_bot = word_map(m.ambient, a.ambient, p, why);
    rc.p_defined = p_bot.has_value();
    if (!rc.p_defined) {
        rc.defect = "p is not a map of ambients: " + why;
        return rc;
    }
    const auto f_top = word_map(a.sub, m.sub, f, why);
    rc.left_square = f_top && same_map(compose(m.inclusion, *f_top), compose(*f_bot, a.inclusion));
    if (!rc.left_square) {
        rc.defect = "left square: " + why;
        return rc;
    }
    const auto p_top = word_map(m.sub, a.sub, p, why);
    rc.right_square = p_top && same_map(compose(a.inclusion, *p_top), compose(*p_bot, m.inclusion));
    if (!rc.right_square) {
        rc.defect = "right square: " + why;
        return rc;
    }
    rc.section = same_map(compose(*p_bot, *f_bot), identity_map(a.ambient.sset)) &&
                 same_map(compose(*p_top, *f_top), identity_map(a.sub.sset));
    if (!rc.section) rc.defect = "p o f is not the identity";
    return rc;
}

bool RetractWitness::ok() const
{
    if (!check.ok()) return false;
    if (kind == RetractKind::TwoSegalHornViaOuter) return middle_report && middle_report->accepted;
    return true;
}

json RetractWitness::to_json() const
{
    static const char* names[] = {"two_segal_horn_via_outer", "pushout_product_section", "edgewise_section"};
    auto name_of = [this](const std::vector<int>& m) {
        json out = json::array();
        for (int v : m) out.push_back(letters.empty() ? json(v) : json(letters[static_cast<std::size_t>(v)]));
        return out;
    };
    json j{{"kind", names[static_cast<int>(kind)]},
           {"params", params},
           {"claim", claim.to_json()},
           {"middle", middle},
           {"f", name_of(f)},
           {"p", p},
           {"checks",
            {{"f_defined", check.f_defined},
             {"p_defined", check.p_defined},
             {"left_square", check.left_square},
             {"right_square", check.right_square},
             {"section", check.section}}},
           {"defect", check.defect},
           {"ok", ok()}};
    if (!letters.empty()) j["middle_letters"] = letters;
    if (kind == RetractKind::TwoSegalHornViaOuter) {
        json chain = json::array();
        for (const auto& [face, h] : middle_chain) chain.push_back({{"face", face}, {"horn", h.name()}});
        j["middle_chain"] = chain;
        j["outer_only"] = outer_only;
        if (middle_certificate) j["middle_pushouts"] = middle_certificate->pushout_count();
        if (middle_report) j["middle_report"] = middle_report->to_json();
    }
    return j;
}

RetractWitness retract_via_outer(int i, int j, int n)
{
    if (!(0 < i && i < j - 1 && j - 1 < n - 1)) throw InvalidArgument("need 0 < i < j-1 < n-1");
    RetractWitness w;
    w.kind = RetractKind::TwoSegalHornViaOuter;
    w.params = {{"i", i}, {"j", j}, {"n", n}};
    w.claim = ShapeSpec::genhorn(n, {i, j});
    const int top = n + 1;
    auto all_but = [top](std::initializer_list<int> out) {
        std::vector<int> v;
        for (int x = 0; x <= top; ++x)
            if (std::find(out.begin(), out.end(), x) == out.end()) v.push_back(x);
        return v;
    };
    std::vector<std::vector<int>> facets;
    for (int k = 1; k < n; ++k)
        if (k != i && k != j) facets.push_back(all_but({k}));
    facets.push_back(all_but({0, top}));
    facets.push_back(all_but({n, top}));
    const ShapeSpec mid_spec = ShapeSpec::complex(top, facets);
    w.middle = "Lambda^{0," + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(n) + "," +
               std::to_string(top) + "}[" + std::to_string(top) + "] u d0d" + std::to_string(top) + " u d" +
               std::to_string(n) + "d" + std::to_string(top);
    for (int l = 0; l <= n; ++l) {
        w.f.push_back(l);
        w.p.push_back(l);
    }
    w.p.push_back(n);

    w.middle_chain = {
        {all_but({n}), GeneralizedHorn::from_missing(n, {0, i, j})},
        {all_but({0}), GeneralizedHorn::from_missing(n, {i - 1, j - 1})},
        {all_but({}), GeneralizedHorn::from_missing(top, {i, j, top})},
    };
    w.outer_only = std::all_of(w.middle_chain.begin(), w.middle_chain.end(), [](const auto& e) {
        const auto m = e.second.missing_mask();
        return (m & 1u) || (m >> e.second.n & 1u);
    });
    std::vector<Planned> plan;
    for (const auto& [face, h] : w.middle_chain) plan_genhorn(face, h.n, h.present, plan);
    const Shape mid = build_shape(mid_spec);
    w.middle_certificate = materialize(mid_spec, mid, plan);
    w.middle_report = verify_certificate(*w.middle_certificate);
    w.check = check_retract(build_shape(w.claim), mid, w.f, w.p);
    return w;
}

namespace {

Shape pushout_product_shape(int n, int j, int side)
{
    const int cols = n + 1;
    auto arrow = [cols](int x, int y) { return x / cols <= y / cols && x % cols <= y % cols; };
    // first factor present faces {1,3} for Lambda^{0,2}[3], {0,2} for Lambda^{1,3}[3]
    const std::uint32_t first_present = side == 0 ? 0b1010u : 0b0101u;
    const std::uint32_t second_missing = side == 0 ? (1u | (1u << j)) : ((1u << (n - j)) | (1u << n));
    const std::uint32_t second_present = ((1u << cols) - 1) & ~second_missing;
    auto sub = [=](const Word& w) {
        std::uint32_t a = 0, b = 0;
        for (int x : w) {
            a |= 1u << (x / cols);
            b |= 1u << (x % cols);
        }
        return (first_present & ~a) != 0 || (second_present & ~b) != 0;
    };
    return make_shape(4 * cols, arrow, sub, [](const Word&) { return true; }, n + 3, true);
}

}  // namespace

RetractWitness retract_pushout_product(int n, int j, int side)
{
    if (side != 0 && side != 1) throw InvalidArgument("side is 0 or 1");
    if (n < 3 || j < 2 || j > n - 1) throw InvalidArgument("need n >= 3 and 2 <= j <= n-1");
    RetractWitness w;
    w.kind = RetractKind::PushoutProductSection;
    w.params = {{"n", n}, {"j", j}, {"side", side}};
    const int cols = n + 1;
    auto code = [cols](int a, int b) { return a * cols + b; };
    auto f02 = [&](int l) {
        if (l == 0) return code(0, 0);
        if (l < j) return code(1, l);
        if (l == j) return code(2, j);
        return code(3, l);
    };
    auto p02 = [&](int a, int b) {
        if (a == 0) return 0;
        if (a == 1) return b <= j ? b : j;
        if (a == 2) return j;
        return b <= j ? j : b;
    };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b <= n; ++b) w.letters.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
    if (side == 0) {
        w.claim = ShapeSpec::genhorn(n, {0, j});
        w.middle = "(Lambda^{0,2}[3] x Delta[n]) u (Delta[3] x Lambda^{0," + std::to_string(j) + "}[n])";
        for (int l = 0; l <= n; ++l) w.f.push_back(f02(l));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b <= n; ++b) w.p.push_back(p02(a, b));
    } else {
        w.claim = ShapeSpec::genhorn(n, {n - j, n});
        w.middle = "(Lambda^{1,3}[3] x Delta[n]) u (Delta[3] x Lambda^{" + std::to_string(n - j) + "," +
                   std::to_string(n) + "}[n])";
        for (int l = 0; l <= n; ++l) {
            const int x = f02(n - l);
            w.f.push_back(code(3 - x / cols, n - x % cols));
        }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b <= n; ++b) w.p.push_back(n - p02(3 - a, n - b));
    }
    w.check = check_retract(build_shape(w.claim), pushout_product_shape(n, j, side), w.f, w.p);
    return w;
}

RetractWitness retract_edgewise(int k, int j, int side)
{
    if (side != 0 && side != 1) throw InvalidArgument("side is 0 or 1");
    if (k < 3 || j < 2 || j > k) throw InvalidArgument("need k >= 3 and 2 <= j <= k");
    RetractWitness w;
    w.kind = RetractKind::EdgewiseSection;
    w.params = {{"k", k}, {"j", j}, {"side", side}};
    const int top = 2 * k - 1;
    auto f0 = [&](int l) { return l == 0 ? k - j : k - 1 + l; };
    auto p0 = [&](int l) { return l < k ? 0 : l - k + 1; };
    w.middle = "A^{" + std::to_string(j - 1) + "}[" + std::to_string(top) + "]";
    if (side == 0) {
        w.claim = ShapeSpec::genhorn(k, {0, j});
        for (int l = 0; l <= k; ++l) w.f.push_back(f0(l));
        for (int l = 0; l <= top; ++l) w.p.push_back(p0(l));
    } else {
        w.claim = ShapeSpec::genhorn(k, {k - j, k});
        for (int l = 0; l <= k; ++l) w.f.push_back(top - f0(k - l));
        for (int l = 0; l <= top; ++l) w.p.push_back(k - p0(top - l));
    }
    w.check = check_retract(build_shape(w.claim), build_shape(ShapeSpec::edgewise_a(k - 1, j - 1)), w.f, w.p);
    return w;
}

bool PushoutJoinResult::ok(int i, int n, int j) const
{
    return iso.has_value() && broken && missing == std::vector<int>{i, n + j + 1};
}

json PushoutJoinResult::to_json() const
{
    return {{"join_counts", join->counts()},
            {"sub_counts", inclusion.domain->counts()},
            {"missing", missing},
            {"broken", broken},
            {"iso", iso.has_value()}};
}

PushoutJoinResult pushout_join_horn(int i, int n, int j, int k)
{
    if (n < 1 || i < 0 || i > n) throw InvalidArgument("need n >= 1 and 0 <= i <= n");
    if (k < 2 || j <= 0 || j >= k) throw InvalidArgument("j must be inner: 0 < j < k");
    if (n + k + 1 > 20) throw InvalidArgument("join too large");
    const SSetPtr dn = delta(n), dk = delta(k);
    const auto jr = join(dn, dk);
    auto in_horn = [](const SSet& x, const SimplexRef& s, int missing, int dim) {
        if (s.cell < 0) return true;
        std::uint32_t m = 0;
        for (int v : x.vertices(s)) m |= 1u << v;
        for (int v = 0; v <= dim; ++v)
            if (v != missing && !(m >> v & 1u)) return true;
        return false;
    };
    std::vector<int> cells;
    for (const Cell& c : jr.sset()->cells()) {
        const PairSimplex& s = jr.m.concrete[static_cast<std::size_t>(c.id)];
        if (in_horn(*dn, s.a, i, n) || in_horn(*dk, s.b, j, k)) cells.push_back(c.id);
    }
    const Extracted ex = extract_subcomplex(jr.sset(), cells);
    PushoutJoinResult r{jr.sset(), ex.inclusion, {}, build_shape(ShapeSpec::genhorn(n + k + 1, {i, n + j + 1})), {}, false};
    const std::set<int> sub(cells.begin(), cells.end());
    const int topc = jr.sset()->cells_of_dim(n + k + 1).front();
    const auto& faces = jr.sset()->faces(topc);
    for (int t = 0; t < static_cast<int>(faces.size()); ++t)
        if (!sub.count(faces[static_cast<std::size_t>(t)].cell)) r.missing.push_back(t);
    r.broken = is_broken((1u << i) | (1u << (n + j + 1)), n + k + 1);
    r.iso = arrow_iso(r.inclusion, r.horn.inclusion);
    return r;
}

}  // namespace q2seg
