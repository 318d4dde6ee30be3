#include "q2seg/jaug.hpp"

#include <algorithm>
#include <functional>

#include "q2seg/combinators.hpp"
#include "q2seg/error.hpp"

namespace q2seg {

namespace {

// Vertex positions of w inside the face d_k of [n].
std::vector<int> positions_in_face(const Word& w, int k)
{
    std::vector<int> pos;
    for (int v : w) pos.push_back(v - (v > k ? 1 : 0));
    return pos;
}

std::uint32_t mask_of(const std::vector<int>& idx)
{
    std::uint32_t m = 0;
    for (int v : idx) m |= 1u << v;
    return m;
}

Word swap_reverse(const Word& w)
{
    Word r(w.rbegin(), w.rend());
    for (int& v : r) v = 1 - v;
    return r;
}

// Homotopy inversion on the simplices h_F spanned by U = [0..n] minus F, where
// F avoids the edge (e, e+1). H(F) has vertex list U with e, e+1 repeated twice.
class Inverter {
  public:
    using Source = std::function<SimplexRef(const std::vector<int>& u)>;

    Inverter(HornOracle& oracle, const JMap& a, int n, int e, Source h, std::map<int, SimplexRef> specified)
        : oracle_(oracle), a_(a), x_(*oracle.sset()), n_(n), e_(e), h_(std::move(h)), specified_(std::move(specified))
    {
    }

    // Vertex list of H(F) as (vertex, copy) pairs.
    std::vector<std::pair<int, int>> layout(const std::vector<int>& u) const
    {
        std::vector<std::pair<int, int>> out;
        for (int v : u) {
            if (v == e_ + 1) continue;
            if (v == e_) {
                out.insert(out.end(), {{e_, 0}, {e_ + 1, 0}, {e_, 1}, {e_ + 1, 1}});
                continue;
            }
            out.push_back({v, 0});
        }
        return out;
    }

    std::vector<int> complement(std::uint32_t f) const
    {
        std::vector<int> u;
        for (int v = 0; v <= n_; ++v)
            if (!((f >> v) & 1u)) u.push_back(v);
        return u;
    }

    SimplexRef run(std::uint32_t f)
    {
        auto it = memo_.find(f);
        if (it != memo_.end()) return it->second;
        const std::vector<int> u = complement(f);
        const auto lay = layout(u);
        SimplexRef out;
        // restrict a specified face that already contains this one
        for (const auto& [v, spec] : specified_) {
            if (!((f >> v) & 1u)) continue;
            const auto big = layout(complement(1u << v));
            std::vector<int> pos;
            for (const auto& p : lay) pos.push_back(static_cast<int>(std::find(big.begin(), big.end(), p) - big.begin()));
            out = x_.restrict(spec, pos);
            memo_[f] = out;
            return out;
        }
        const int m = static_cast<int>(u.size()) - 1;
        if (m == 1) {
            out = a_.at({0, 1, 0, 1});
        } else {
            const SimplexRef h = h_(u);
            const int jj = static_cast<int>(std::find(u.begin(), u.end(), e_) - u.begin());
            HornFaces faces;
            faces[jj + 1] = x_.degeneracy(h, jj);
            faces[jj + 2] = x_.degeneracy(h, jj + 1);
            for (std::size_t t = 0; t < u.size(); ++t) {
                const int v = u[t];
                if (v == e_ || v == e_ + 1) continue;
                faces[static_cast<int>(t) + (v > e_ + 1 ? 2 : 0)] = run(f | (1u << v));
            }
            out = oracle_.fill(m + 2, faces);
        }
        memo_[f] = out;
        return out;
    }

  private:
    HornOracle& oracle_;
    const JMap& a_;
    const SSet& x_;
    int n_;
    int e_;
    Source h_;
    std::map<int, SimplexRef> specified_;  // keyed by the removed vertex
    std::map<std::uint32_t, SimplexRef> memo_;
};

void require_edge(const SSet& x, const SimplexRef& edge, const JMap& a, const char* what)
{
    if (a.depth() < 3) throw InvalidArgument(std::string(what) + ": J depth must be at least 3");
    if (a.a.codomain.get() != &x && a.a.codomain->size() != x.size())
        throw InvalidArgument(std::string(what) + ": J map has a different target");
    if (edge != a.at({0, 1})) throw InvalidArgument(std::string(what) + ": edge is not a(0 -> 1)");
}

SimplexRef fill_upper(HornOracle& oracle, int n, int i, const HornFaces& horn, const JMap& a)
{
    const SSet& x = *oracle.sset();
    // h_F = restriction of some horn face containing U
    auto source = [&](const std::vector<int>& u) {
        const std::uint32_t um = mask_of(u);
        for (const auto& [k, face] : horn)
            if (!((um >> k) & 1u)) return x.restrict(face, positions_in_face(u, k));
        throw Error("J-augmented filling: no horn face contains the requested simplex");
    };
    require_edge(x, source({i, i + 1}), a, "fill_j_augmented");
    Inverter inv(oracle, a, n, i, source, {});
    HornFaces top;
    top[i + 1] = x.degeneracy(horn.at(i + 1), i);
    for (int k = 0; k <= n; ++k) {
        if (k == i || k == i + 1) continue;
        const SimplexRef hk = inv.run(1u << k);
        top[k < i ? k : k + 1] = x.face(hk, (k < i ? i - 1 : i) + 3);
    }
    const SimplexRef tau = oracle.fill(n + 1, top);
    return x.face(tau, i + 2);
}

HornFaces opposite_faces(const HornFaces& horn, int n)
{
    HornFaces out;
    for (const auto& [k, f] : horn) out[n - k] = opposite_ref(f);
    return out;
}

JMap opposite_j_map(const JMap& a, const SSetPtr& xop)
{
    JMap out{a.j, SSetMap{a.a.domain, xop, {}}};
    for (std::size_t c = 0; c < a.j.words.size(); ++c)
        out.a.images.push_back(opposite_ref(a.at(swap_reverse(a.j.words[c]))));
    return out;
}

}  // namespace

namespace {

Shape horn_shape(int n, const HornFaces& faces)
{
    std::vector<int> missing;
    for (int k = 0; k <= n; ++k)
        if (!faces.count(k)) missing.push_back(k);
    if (missing.empty()) throw InvalidArgument("a horn misses at least one face");
    return build_shape(ShapeSpec::genhorn(n, missing));
}

SSetMap map_on_shape(const Shape& s, const SSetPtr& x, int n, const HornFaces& faces)
{
    for (const auto& [k, f] : faces) {
        if (k < 0 || k > n) throw InvalidArgument("horn face index out of range");
        if (f.dim != n - 1) throw InvalidArgument("horn face has the wrong dimension");
    }
    Images img;
    for (const Word& w : s.sub.words) {
        const std::uint32_t wm = mask_of(w);
        std::optional<SimplexRef> val;
        for (const auto& [k, f] : faces) {
            if ((wm >> k) & 1u) continue;
            const SimplexRef r = x->restrict(f, positions_in_face(w, k));
            if (val && *val != r) throw InvalidArgument("horn faces disagree on " + word_label(w));
            val = r;
        }
        img.push_back(*val);
    }
    SSetMap m{s.sub.sset, x, img};
    const std::string d = m.defect();
    if (!d.empty()) throw InvalidArgument("horn faces do not form a map: " + d);
    return m;
}

}  // namespace

SSetMap horn_map_from_faces(const SSetPtr& x, int n, const HornFaces& faces)
{
    return map_on_shape(horn_shape(n, faces), x, n, faces);
}

LiftingProblem horn_lifting_problem(const SSetPtr& x, int n, const HornFaces& faces)
{
    const Shape s = horn_shape(n, faces);
    return {s.inclusion, map_on_shape(s, x, n, faces)};
}

HornOracle::HornOracle(SSetPtr x, std::uint64_t budget)
    : HornOracle(std::make_shared<LiftTarget>(std::move(x)), std::make_shared<std::vector<OracleQuery>>(), budget)
{
}

HornOracle::HornOracle(std::shared_ptr<LiftTarget> t, std::shared_ptr<std::vector<OracleQuery>> log,
                       std::uint64_t budget)
    : target_(std::move(t)), log_(std::move(log)), shapes_(std::make_shared<std::map<std::pair<int, std::uint32_t>, Shape>>()),
      budget_(budget)
{
}

HornOracle HornOracle::opposite() const
{
    return HornOracle(std::make_shared<LiftTarget>(q2seg::opposite(sset())), log_, budget_);
}

SimplexRef HornOracle::fill(int n, const HornFaces& faces)
{
    std::vector<int> present;
    for (const auto& kv : faces) present.push_back(kv.first);
    const bool broken = n >= 3 && is_broken(present, n);
    log_->push_back({n, present, broken});
    if (!broken) throw InvalidArgument("oracle query is not a generalized 2-Segal horn");
    const std::uint32_t pm = mask_of(present);
    auto it = shapes_->find({n, pm});
    if (it == shapes_->end()) it = shapes_->emplace(std::make_pair(n, pm), horn_shape(n, faces)).first;
    const Shape& s = it->second;
    const SSetMap m = map_on_shape(s, sset(), n, faces);
    auto lift = solve_lifting({s.inclusion, m}, *target_, budget_);
    if (!lift) throw Error("oracle failure: no filler for " + GeneralizedHorn::from_present(n, present).name());
    return lift->images.back();
}

JMap constant_j_map(const SSetPtr& x, int vertex, int depth)
{
    JMap out{build_shape(ShapeSpec::jtrunc(depth)).sub, {}};
    out.a = {out.j.sset, x, {}};
    for (const auto& c : out.j.sset->cells()) {
        SimplexRef v = x->ref(vertex);
        for (int d = 0; d < c.dim; ++d) v = x->degeneracy(v, 0);
        out.a.images.push_back(v);
    }
    return out;
}

std::optional<JMap> extend_edge_to_j(const SSetPtr& x, const SimplexRef& edge, int depth, std::uint64_t budget)
{
    if (edge.dim != 1) throw InvalidArgument("extend_edge_to_j needs an edge");
    JMap out{build_shape(ShapeSpec::jtrunc(depth)).sub, {}};
    const SSetPtr d1 = delta(1);
    const SSetMap inc{d1, out.j.sset, {out.j.simplex({0}), out.j.simplex({1}), out.j.simplex({0, 1})}};
    const SSetMap part{d1, x, {x->face(edge, 1), x->face(edge, 0), edge}};
    auto lift = solve_lifting({inc, part}, LiftTarget(x), budget);
    if (!lift) return std::nullopt;
    out.a = *lift;
    return out;
}

SimplexRef invert_homotopy(HornOracle& oracle, const SimplexRef& h, int j, const JMap& a,
                           const std::map<int, SimplexRef>& specified)
{
    const SSet& x = *oracle.sset();
    const int n = h.dim;
    if (n < 1 || j < 0 || j + 1 > n) throw InvalidArgument("invert_homotopy needs 0 <= j < dim h");
    require_edge(x, x.restrict(h, std::vector<int>{j, j + 1}), a, "invert_homotopy");
    std::map<int, SimplexRef> by_vertex;
    for (const auto& [k, f] : specified) {
        if (k >= j && k <= j + 3) throw InvalidArgument("faces j..j+3 of H are determined");
        if (k < 0 || k > n + 2) throw InvalidArgument("specified face index out of range");
        if (f.dim != n + 1) throw InvalidArgument("specified face has the wrong dimension");
        by_vertex[k < j ? k : k - 2] = f;
    }
    auto source = [&](const std::vector<int>& u) { return x.restrict(h, u); };
    Inverter inv(oracle, a, n, j, source, by_vertex);
    SimplexRef big;
    if (n == 1) {
        big = a.at({0, 1, 0, 1});
    } else {
        HornFaces faces;
        faces[j + 1] = x.degeneracy(h, j);
        faces[j + 2] = x.degeneracy(h, j + 1);
        for (int v = 0; v <= n; ++v) {
            if (v == j || v == j + 1) continue;
            faces[v < j ? v : v + 2] = inv.run(1u << v);
        }
        big = oracle.fill(n + 2, faces);
    }
    if (x.face(big, j + 1) != x.degeneracy(h, j) || x.face(big, j + 2) != x.degeneracy(h, j + 1) ||
        x.restrict(big, std::vector<int>{j, j + 1, j + 2, j + 3}) != a.at({0, 1, 0, 1}))
        throw Error("invert_homotopy: postcondition failed");
    for (const auto& [k, f] : specified)
        if (x.face(big, k) != f) throw Error("invert_homotopy: specified face not matched");
    return big;
}

SimplexRef fill_j_augmented(HornOracle& oracle, int n, int i, int j, const HornFaces& horn, const JMap& a)
{
    if (n < 2 || i < 0 || i > n) throw InvalidArgument("J-augmented horn needs n >= 2 and 0 <= i <= n");
    if ((j != i && j != i - 1) || j < 0 || j + 1 > n) throw InvalidArgument("J edge must be adjacent to the missing face");
    for (int k = 0; k <= n; ++k)
        if (k != i && !horn.count(k)) throw InvalidArgument("horn face " + std::to_string(k) + " missing");
    if (horn.count(i)) throw InvalidArgument("horn must omit face i");
    horn_map_from_faces(oracle.sset(), n, horn);
    SimplexRef sigma;
    if (j == i) {
        sigma = fill_upper(oracle, n, i, horn, a);
    } else {
        // reflect: Lambda^{n-i}[n] in X^op with edge (n-i, n-i+1)
        HornOracle op = oracle.opposite();
        const SimplexRef s = fill_upper(op, n, n - i, opposite_faces(horn, n), opposite_j_map(a, op.sset()));
        sigma = opposite_ref(s);
    }
    const SSet& x = *oracle.sset();
    for (const auto& [k, f] : horn)
        if (x.face(sigma, k) != f) throw Error("fill_j_augmented: filler does not restrict to the horn");
    return sigma;
}

}  // namespace q2seg
