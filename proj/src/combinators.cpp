#include "q2seg/combinators.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace q2seg {

namespace {

constexpr SimplexRef kEmptyPart{-1, -1, 0};

int effective_cap(const SSet& s) { return s.finite() ? INT_MAX : s.cap(); }

std::string part_label(const SSet& s, const SimplexRef& r)
{
    return r.cell < 0 ? std::string("()") : s.describe(r);
}

}  // namespace

std::vector<PairSimplex> ProductSource::nondegenerate(int n) const
{
    std::vector<PairSimplex> out;
    const auto xs = x->simplices(n);
    const auto ys = y->simplices(n);
    for (const auto& a : xs)
        for (const auto& b : ys)
            if ((a.collapse & b.collapse) == 0) out.push_back({a, b});
    return out;
}

PairSimplex ProductSource::face(const PairSimplex& s, int, int i) const
{
    return {x->face(s.a, i), y->face(s.b, i)};
}

PairSimplex ProductSource::degeneracy(const PairSimplex& s, int, int i) const
{
    return {x->degeneracy(s.a, i), y->degeneracy(s.b, i)};
}

std::string ProductSource::label(const PairSimplex& s, int) const
{
    return "(" + x->describe(s.a) + "," + y->describe(s.b) + ")";
}

std::vector<PairSimplex> JoinSource::nondegenerate(int n) const
{
    std::vector<PairSimplex> out;
    for (int dx = -1; dx <= n; ++dx) {
        const int dy = n - 1 - dx;
        std::vector<SimplexRef> as, bs;
        if (dx < 0) as.push_back(kEmptyPart);
        else
            for (int c : x->cells_of_dim(dx)) as.push_back(x->ref(c));
        if (dy < 0) bs.push_back(kEmptyPart);
        else
            for (int c : y->cells_of_dim(dy)) bs.push_back(y->ref(c));
        for (const auto& a : as)
            for (const auto& b : bs) out.push_back({a, b});
    }
    return out;
}

PairSimplex JoinSource::face(const PairSimplex& s, int, int i) const
{
    const int dx = s.a.dim;
    PairSimplex out = s;
    if (i <= dx) {
        out.a = dx == 0 ? kEmptyPart : x->face(s.a, i);
    } else {
        out.b = s.b.dim == 0 ? kEmptyPart : y->face(s.b, i - dx - 1);
    }
    return out;
}

PairSimplex JoinSource::degeneracy(const PairSimplex& s, int, int i) const
{
    const int dx = s.a.dim;
    PairSimplex out = s;
    if (i <= dx)
        out.a = x->degeneracy(s.a, i);
    else
        out.b = y->degeneracy(s.b, i - dx - 1);
    return out;
}

std::string JoinSource::label(const PairSimplex& s, int) const
{
    return part_label(*x, s.a) + "*" + part_label(*y, s.b);
}

ProductResult product(const SSetPtr& x, const SSetPtr& y)
{
    const bool finite = x->finite() && y->finite();
    int cap;
    if (x->empty() || y->empty())
        cap = 0;
    else if (finite)
        cap = x->top_dim() + y->top_dim();
    else
        cap = std::min(effective_cap(*x), effective_cap(*y));
    ProductResult r{materialize(ProductSource{x, y}, cap, finite), {}, {}};
    r.proj_x = {r.m.sset, x, {}};
    r.proj_y = {r.m.sset, y, {}};
    for (const auto& s : r.m.concrete) {
        r.proj_x.images.push_back(s.a);
        r.proj_y.images.push_back(s.b);
    }
    return r;
}

JoinResult join(const SSetPtr& x, const SSetPtr& y)
{
    const bool finite = x->finite() && y->finite();
    const int cap = finite ? std::max(0, x->top_dim() + y->top_dim() + 1)
                           : std::min(effective_cap(*x), effective_cap(*y));
    JoinResult r{materialize(JoinSource{x, y}, cap, finite), {}, {}};
    r.embed_x = {x, r.m.sset, {}};
    for (const Cell& c : x->cells()) r.embed_x.images.push_back(r.m.ez({x->ref(c.id), kEmptyPart}, c.dim));
    r.embed_y = {y, r.m.sset, {}};
    for (const Cell& c : y->cells()) r.embed_y.images.push_back(r.m.ez({kEmptyPart, y->ref(c.id)}, c.dim));
    return r;
}

SSetMap product_map(const SSetMap& f, const SSetMap& g, const ProductResult& source, const ProductResult& target)
{
    SSetMap out{source.sset(), target.sset(), {}};
    for (std::size_t k = 0; k < source.m.concrete.size(); ++k) {
        const auto& s = source.m.concrete[k];
        out.images.push_back(target.m.ez({f(s.a), g(s.b)}, s.a.dim));
    }
    return out;
}

SSetMap join_map(const SSetMap& f, const SSetMap& g, const JoinResult& source, const JoinResult& target)
{
    SSetMap out{source.sset(), target.sset(), {}};
    for (const auto& s : source.m.concrete) {
        const SimplexRef a = s.a.cell < 0 ? kEmptyPart : f(s.a);
        const SimplexRef b = s.b.cell < 0 ? kEmptyPart : g(s.b);
        out.images.push_back(target.m.ez({a, b}, s.a.dim + s.b.dim + 1));
    }
    return out;
}

PushoutResult pushout_along_mono(const SSetMap& i, const SSetMap& f)
{
    if (!i.is_inclusion()) throw InvalidArgument("pushout_along_mono: first map is not injective");
    if (i.domain != f.domain) throw InvalidArgument("pushout_along_mono: maps have different domains");
    const SSet& b = *i.codomain;
    const SSet& x = *f.codomain;
    std::vector<int> from_a(static_cast<std::size_t>(b.size()), -1);
    for (int a = 0; a < static_cast<int>(i.images.size()); ++a) from_a[static_cast<std::size_t>(i.images[a].cell)] = a;

    SSetBuilder builder;
    for (const Cell& c : x.cells()) builder.add(c.dim, x.faces(c.id), c.label);
    std::vector<SimplexRef> b_image(static_cast<std::size_t>(b.size()));
    auto image_of = [&](const SimplexRef& s) -> SimplexRef {
        const SimplexRef& base = b_image[static_cast<std::size_t>(s.cell)];
        if (!s.collapse) return base;
        return x.degenerate_by(base, s.degeneracy());
    };
    for (int c : b.canonical_order()) {
        const int a = from_a[static_cast<std::size_t>(c)];
        if (a >= 0) {
            b_image[static_cast<std::size_t>(c)] = f.images[static_cast<std::size_t>(a)];
            continue;
        }
        std::vector<SimplexRef> faces;
        for (const auto& fc : b.faces(c)) {
            if (from_a[static_cast<std::size_t>(fc.cell)] >= 0) {
                faces.push_back(image_of(fc));
            } else {
                faces.push_back({b_image[static_cast<std::size_t>(fc.cell)].cell, fc.dim, fc.collapse});
            }
        }
        const int id = builder.add(b.cell(c).dim, std::move(faces), b.cell(c).label);
        b_image[static_cast<std::size_t>(c)] = {id, b.cell(c).dim, 0};
    }
    const bool finite = x.finite() && b.finite();
    const int cap = finite ? 0 : std::min(effective_cap(x), effective_cap(b));
    PushoutResult r;
    r.p = builder.build(cap, finite);
    r.x_to_p = {f.codomain, r.p, {}};
    for (const Cell& c : x.cells()) r.x_to_p.images.push_back(r.p->ref(c.id));
    r.b_to_p = {i.codomain, r.p, std::move(b_image)};
    return r;
}

SimplexRef opposite_ref(const SimplexRef& s)
{
    std::uint32_t m = 0;
    for (int t = 0; t < s.dim; ++t)
        if (s.collapse >> t & 1u) m |= 1u << (s.dim - 1 - t);
    return {s.cell, s.dim, m};
}

SSetPtr opposite(const SSetPtr& x)
{
    SSetBuilder b;
    for (const Cell& c : x->cells()) {
        std::vector<SimplexRef> faces;
        const auto& fs = x->faces(c.id);
        for (auto it = fs.rbegin(); it != fs.rend(); ++it) faces.push_back(opposite_ref(*it));
        b.add(c.dim, std::move(faces), c.label);
    }
    return b.build(x->cap(), x->finite());
}

CoproductResult coproduct(const SSetPtr& x, const SSetPtr& y)
{
    SSetBuilder b;
    for (const Cell& c : x->cells()) b.add(c.dim, x->faces(c.id), c.label);
    const int shift = x->size();
    for (const Cell& c : y->cells()) {
        auto faces = y->faces(c.id);
        for (auto& f : faces) f.cell += shift;
        b.add(c.dim, std::move(faces), c.label);
    }
    const bool finite = x->finite() && y->finite();
    CoproductResult r;
    r.sset = b.build(finite ? 0 : std::min(effective_cap(*x), effective_cap(*y)), finite);
    r.in_x = {x, r.sset, {}};
    for (const Cell& c : x->cells()) r.in_x.images.push_back(r.sset->ref(c.id));
    r.in_y = {y, r.sset, {}};
    for (const Cell& c : y->cells()) r.in_y.images.push_back(r.sset->ref(c.id + shift));
    return r;
}

namespace {

// Color refinement shared between both sides so classes are comparable.
struct Refiner {
    std::map<std::vector<long long>, int> codes;
    int code(const std::vector<long long>& key)
    {
        auto [it, fresh] = codes.emplace(key, static_cast<int>(codes.size()));
        return it->second;
    }
};

std::vector<int> initial_colors(const SSet& s, const std::vector<int>& user, Refiner& r)
{
    std::vector<int> out(static_cast<std::size_t>(s.size()));
    for (const Cell& c : s.cells()) {
        std::vector<long long> key{0, c.dim, user.empty() ? 0 : user[static_cast<std::size_t>(c.id)]};
        for (const auto& f : s.faces(c.id)) key.push_back(f.collapse);
        out[static_cast<std::size_t>(c.id)] = r.code(key);
    }
    return out;
}

std::vector<int> refine(const SSet& s, const std::vector<int>& col, Refiner& r)
{
    std::vector<std::vector<long long>> cof(static_cast<std::size_t>(s.size()));
    for (const Cell& c : s.cells()) {
        const auto& fs = s.faces(c.id);
        for (std::size_t i = 0; i < fs.size(); ++i)
            cof[static_cast<std::size_t>(fs[i].cell)].push_back(
                (static_cast<long long>(col[static_cast<std::size_t>(c.id)]) << 20) ^
                (static_cast<long long>(i) << 10) ^ static_cast<long long>(fs[i].collapse));
    }
    std::vector<int> out(col.size());
    for (const Cell& c : s.cells()) {
        std::vector<long long> key{1, col[static_cast<std::size_t>(c.id)]};
        for (const auto& f : s.faces(c.id)) key.push_back(col[static_cast<std::size_t>(f.cell)]);
        auto& cf = cof[static_cast<std::size_t>(c.id)];
        std::sort(cf.begin(), cf.end());
        key.push_back(-1);
        key.insert(key.end(), cf.begin(), cf.end());
        out[static_cast<std::size_t>(c.id)] = r.code(key);
    }
    return out;
}

int class_count(const std::vector<int>& a)
{
    std::vector<int> s = a;
    std::sort(s.begin(), s.end());
    return static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
}

class IsoSearch {
  public:
    IsoSearch(const SSet& x, const SSet& y, std::vector<int> cx, std::vector<int> cy)
        : x_(x), y_(y), cx_(std::move(cx)), cy_(std::move(cy)),
          fwd_(static_cast<std::size_t>(x.size()), -1), used_(static_cast<std::size_t>(y.size()), 0)
    {
        for (int d = x.top_dim(); d >= 0; --d)
            for (int c : x.cells_of_dim(d)) order_.push_back(c);
        for (int c = 0; c < y.size(); ++c) by_color_[cy_[static_cast<std::size_t>(c)]].push_back(c);
    }

    bool fix(int a, int b) { return assign(a, b); }

    bool run(std::size_t pos)
    {
        while (pos < order_.size() && fwd_[static_cast<std::size_t>(order_[pos])] >= 0) ++pos;
        if (pos == order_.size()) return true;
        const int a = order_[pos];
        for (int b : by_color_[cx_[static_cast<std::size_t>(a)]]) {
            if (used_[static_cast<std::size_t>(b)]) continue;
            const std::size_t mark = trail_.size();
            if (assign(a, b) && run(pos + 1)) return true;
            undo(mark);
        }
        return false;
    }

    std::vector<int> result() const { return fwd_; }

  private:
    bool assign(int a, int b)
    {
        const int cur = fwd_[static_cast<std::size_t>(a)];
        if (cur >= 0) return cur == b;
        if (used_[static_cast<std::size_t>(b)] || cx_[static_cast<std::size_t>(a)] != cy_[static_cast<std::size_t>(b)])
            return false;
        fwd_[static_cast<std::size_t>(a)] = b;
        used_[static_cast<std::size_t>(b)] = 1;
        trail_.push_back(a);
        const auto& fa = x_.faces(a);
        const auto& fb = y_.faces(b);
        for (std::size_t i = 0; i < fa.size(); ++i) {
            if (fa[i].collapse != fb[i].collapse) return false;
            if (!assign(fa[i].cell, fb[i].cell)) return false;
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            const int a = trail_.back();
            trail_.pop_back();
            used_[static_cast<std::size_t>(fwd_[static_cast<std::size_t>(a)])] = 0;
            fwd_[static_cast<std::size_t>(a)] = -1;
        }
    }

    const SSet& x_;
    const SSet& y_;
    std::vector<int> cx_, cy_;
    std::vector<int> fwd_;
    std::vector<char> used_;
    std::vector<int> order_;
    std::vector<int> trail_;
    std::map<int, std::vector<int>> by_color_;
};

}  // namespace

std::optional<std::vector<int>> iso_check(const SSet& x, const SSet& y, const IsoOptions& opts)
{
    if (x.size() != y.size() || x.counts() != y.counts()) return std::nullopt;
    if (x.finite() != y.finite() || (!x.finite() && x.cap() != y.cap())) return std::nullopt;
    Refiner r;
    auto cx = initial_colors(x, opts.color_x, r);
    auto cy = initial_colors(y, opts.color_y, r);
    for (int round = 0; round < 64; ++round) {
        auto nx = refine(x, cx, r);
        auto ny = refine(y, cy, r);
        const bool stable = class_count(nx) == class_count(cx) && class_count(ny) == class_count(cy);
        cx = std::move(nx);
        cy = std::move(ny);
        if (stable) break;
    }
    auto sx = cx, sy = cy;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    if (sx != sy) return std::nullopt;
    IsoSearch search(x, y, std::move(cx), std::move(cy));
    for (auto [a, b] : opts.fixed)
        if (!search.fix(a, b)) return std::nullopt;
    if (!search.run(0)) return std::nullopt;
    return search.result();
}

std::optional<std::vector<int>> arrow_iso(const SSetMap& i, const SSetMap& i2, const std::vector<int>& alpha)
{
    IsoOptions o;
    o.color_x.assign(static_cast<std::size_t>(i.codomain->size()), 0);
    o.color_y.assign(static_cast<std::size_t>(i2.codomain->size()), 0);
    for (const auto& s : i.images) o.color_x[static_cast<std::size_t>(s.cell)] = 1;
    for (const auto& s : i2.images) o.color_y[static_cast<std::size_t>(s.cell)] = 1;
    for (std::size_t a = 0; a < alpha.size(); ++a)
        o.fixed.emplace_back(i.images[a].cell, i2.images[static_cast<std::size_t>(alpha[a])].cell);
    return iso_check(*i.codomain, *i2.codomain, o);
}

std::optional<std::vector<int>> arrow_iso(const SSetMap& i, const SSetMap& i2)
{
    if (!i.is_inclusion() || !i2.is_inclusion()) throw InvalidArgument("arrow_iso expects inclusions");
    IsoOptions o;
    o.color_x.assign(static_cast<std::size_t>(i.codomain->size()), 0);
    o.color_y.assign(static_cast<std::size_t>(i2.codomain->size()), 0);
    for (const auto& s : i.images) o.color_x[static_cast<std::size_t>(s.cell)] = 1;
    for (const auto& s : i2.images) o.color_y[static_cast<std::size_t>(s.cell)] = 1;
    return iso_check(*i.codomain, *i2.codomain, o);
}

}  // namespace q2seg
