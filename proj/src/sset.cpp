#include "q2seg/sset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <unordered_set>

#include "q2seg/error.hpp"

namespace q2seg {

namespace {

const std::vector<int> kNoCells;

// values of the surjection encoded by mask on [m]
void surjection_values(std::uint32_t mask, int m, int* out)
{
    int cur = 0;
    for (int t = 0; t <= m; ++t) {
        out[t] = cur;
        if (t < m && !(mask >> t & 1u)) ++cur;
    }
}

}  // namespace

void SSet::require_dim(int n, const std::string& what) const
{
    if (!covers(n))
        throw CapExceeded(what + ": needs dimension " + std::to_string(n) + " but cap is " +
                          std::to_string(cap_));
}

const std::vector<int>& SSet::cells_of_dim(int d) const
{
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return kNoCells;
    return by_dim_[static_cast<std::size_t>(d)];
}

std::vector<int> SSet::counts() const
{
    std::vector<int> out;
    for (const auto& v : by_dim_) out.push_back(static_cast<int>(v.size()));
    return out;
}

std::vector<int> SSet::canonical_order() const
{
    std::vector<int> out;
    for (const auto& v : by_dim_) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<int> SSet::compute_closure_order() const
{
    std::vector<int> roots = canonical_order();
    std::stable_sort(roots.begin(), roots.end(), [this](int x, int y) { return cell(x).dim > cell(y).dim; });
    std::vector<int> out;
    out.reserve(cells_.size());
    std::vector<char> seen(cells_.size(), 0);
    std::vector<std::pair<int, std::size_t>> stack;
    for (int r : roots) {
        if (seen[static_cast<std::size_t>(r)]) continue;
        seen[static_cast<std::size_t>(r)] = 1;
        stack.emplace_back(r, 0);
        while (!stack.empty()) {
            auto& [c, next] = stack.back();
            const auto& fs = faces(c);
            if (next < fs.size()) {
                const int f = fs[next++].cell;
                if (!seen[static_cast<std::size_t>(f)]) {
                    seen[static_cast<std::size_t>(f)] = 1;
                    stack.emplace_back(f, 0);
                }
                continue;
            }
            out.push_back(c);
            stack.pop_back();
        }
    }
    return out;
}

SimplexRef SSet::restrict_cell(int c, int* phi, int p) const
{
    for (;;) {
        const int k = cells_[static_cast<std::size_t>(c)].dim;
        std::uint64_t seen = 0;
        for (int t = 0; t <= p; ++t) seen |= 1ull << phi[t];
        const std::uint64_t full = (k >= 63) ? ~0ull : ((1ull << (k + 1)) - 1);
        if (seen == full) {
            std::uint32_t mask = 0;
            for (int t = 0; t < p; ++t)
                if (phi[t] == phi[t + 1]) mask |= 1u << t;
            return {c, p, mask};
        }
        const int j = std::countr_one(seen);
        const SimplexRef& y = faces_[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
        std::array<int, kMaxDim + 2> tau{};
        surjection_values(y.collapse, k - 1, tau.data());
        for (int t = 0; t <= p; ++t) phi[t] = tau[static_cast<std::size_t>(phi[t] - (phi[t] > j ? 1 : 0))];
        c = y.cell;
    }
}

SimplexRef SSet::restrict(const SimplexRef& x, const OrdinalMap& theta) const
{
    if (theta.target_dim != x.dim) throw InvalidArgument("restrict: map target does not match simplex dim");
    const int p = theta.source_dim();
    if (p > kMaxDim) throw InvalidArgument("restrict: dimension beyond collapse-mask range");
    std::array<int, kMaxDim + 2> sig{}, phi{};
    surjection_values(x.collapse, x.dim, sig.data());
    for (int t = 0; t <= p; ++t) phi[static_cast<std::size_t>(t)] = sig[static_cast<std::size_t>(theta(t))];
    return restrict_cell(x.cell, phi.data(), p);
}

SimplexRef SSet::restrict(const SimplexRef& x, const std::vector<int>& positions) const
{
    return restrict(x, OrdinalMap(x.dim, positions));
}

SimplexRef SSet::face(const SimplexRef& x, int i) const
{
    if (x.dim < 1 || i < 0 || i > x.dim)
        throw InvalidArgument("face index " + std::to_string(i) + " out of range for dim " + std::to_string(x.dim));
    if (x.collapse == 0) {
        return faces_[static_cast<std::size_t>(x.cell)][static_cast<std::size_t>(i)];
    }
    return restrict(x, OrdinalMap::coface(x.dim, i));
}

SimplexRef SSet::degeneracy(const SimplexRef& x, int i) const
{
    if (i < 0 || i > x.dim) throw InvalidArgument("degeneracy index out of range");
    if (x.dim + 1 > kMaxDim) throw InvalidArgument("degeneracy beyond collapse-mask range");
    // s^i inserts a collapse at position i and shifts the higher bits.
    const std::uint32_t low = x.collapse & ((1u << i) - 1);
    const std::uint32_t high = (x.collapse >> i) << (i + 1);
    return {x.cell, x.dim + 1, low | high | (1u << i)};
}

SimplexRef SSet::degenerate_by(const SimplexRef& x, const DegeneracyOp& s) const
{
    if (s.target_dim() != x.dim) throw InvalidArgument("degenerate_by: dimension mismatch");
    std::array<int, kMaxDim + 2> sv{};
    surjection_values(s.mask(), s.source_dim(), sv.data());
    std::uint32_t mask = s.mask();
    for (int t = 0; t < s.source_dim(); ++t)
        if (!(mask >> t & 1u) && (x.collapse >> sv[static_cast<std::size_t>(t)] & 1u)) mask |= 1u << t;
    return {x.cell, s.source_dim(), mask};
}

std::vector<int> SSet::vertices(const SimplexRef& x) const
{
    std::vector<int> out;
    for (int v = 0; v <= x.dim; ++v) out.push_back(restrict(x, OrdinalMap(x.dim, {v})).cell);
    return out;
}

std::vector<SimplexRef> SSet::simplices(int n) const
{
    require_dim(n, "simplices");
    std::vector<SimplexRef> out;
    for (int d = 0; d <= std::min(n, top_dim()); ++d) {
        const int extra = n - d;
        // all n-bit masks with exactly `extra` bits, ascending
        std::vector<std::uint32_t> masks;
        if (extra == 0) {
            masks.push_back(0);
        } else {
            std::uint32_t m = (1u << extra) - 1;
            const std::uint64_t limit = 1ull << n;
            while (m < limit) {
                masks.push_back(m);
                const std::uint32_t c = m & (~m + 1u);
                const std::uint32_t r = m + c;
                if (r == 0) break;
                m = (((r ^ m) >> 2) / c) | r;
            }
        }
        for (int id : cells_of_dim(d))
            for (auto m : masks) out.push_back({id, n, m});
    }
    return out;
}

std::uint64_t SSet::simplex_count(int n) const
{
    std::uint64_t total = 0;
    for (int d = 0; d <= std::min(n, top_dim()); ++d) {
        std::uint64_t c = 1;
        for (int t = 0; t < n - d; ++t) c = c * static_cast<std::uint64_t>(n - t) / static_cast<std::uint64_t>(t + 1);
        total += c * static_cast<std::uint64_t>(count(d));
    }
    return total;
}

std::string SSet::describe(const SimplexRef& x) const
{
    const Cell& c = cell(x.cell);
    std::string base = c.label.empty() ? "#" + std::to_string(c.id) : c.label;
    if (!x.collapse) return base;
    std::ostringstream os;
    os << 's';
    for (int t : x.degeneracy().collapsed_indices()) os << t;
    os << '(' << base << ')';
    return os.str();
}

void SSet::validate() const
{
    for (const Cell& c : cells_) {
        if (!finite_ && c.dim > cap_) throw Error("cell above cap in capped simplicial set");
        const auto& fs = faces_[static_cast<std::size_t>(c.id)];
        if (c.dim == 0) {
            if (!fs.empty()) throw Error("vertex with faces");
            continue;
        }
        if (static_cast<int>(fs.size()) != c.dim + 1) throw Error("cell " + std::to_string(c.id) + ": wrong face count");
        for (const auto& f : fs) {
            if (f.dim != c.dim - 1 || f.cell < 0 || f.cell >= c.id || cell(f.cell).dim != f.cell_dim() ||
                (f.dim < 32 && (f.collapse >> f.dim) != 0))
                throw Error("cell " + std::to_string(c.id) + ": malformed face reference");
        }
        if (c.dim < 2) continue;
        for (int j = 1; j <= c.dim; ++j)
            for (int i = 0; i < j; ++i) {
                const SimplexRef a = face(fs[static_cast<std::size_t>(j)], i);
                const SimplexRef b = face(fs[static_cast<std::size_t>(i)], j - 1);
                if (a != b)
                    throw Error("cell " + std::to_string(c.id) + " (" + describe(ref(c.id)) + "): d" +
                                std::to_string(i) + "d" + std::to_string(j) + " != d" + std::to_string(j - 1) + "d" +
                                std::to_string(i));
            }
    }
}

int SSetBuilder::add(int dim, std::vector<SimplexRef> faces, std::string label)
{
    if (dim < 0 || dim > kMaxDim) throw InvalidArgument("cell dimension out of range");
    const int id = size();
    for (const auto& f : faces)
        if (f.cell < 0 || f.cell >= id) throw InvalidArgument("face refers to a cell not yet added");
    if (dim == 0 ? !faces.empty() : static_cast<int>(faces.size()) != dim + 1)
        throw InvalidArgument("wrong number of faces for a " + std::to_string(dim) + "-cell");
    set_.cells_.push_back({id, dim, std::move(label)});
    set_.faces_.push_back(std::move(faces));
    if (static_cast<int>(set_.by_dim_.size()) <= dim) set_.by_dim_.resize(static_cast<std::size_t>(dim) + 1);
    set_.by_dim_[static_cast<std::size_t>(dim)].push_back(id);
    return id;
}

SSetPtr SSetBuilder::build(int cap, bool finite, bool validate)
{
    set_.finite_ = finite;
    set_.cap_ = finite ? std::max(0, set_.top_dim()) : cap;
    if (!finite && cap < 0) throw InvalidArgument("negative cap");
    auto out = std::make_shared<SSet>(std::move(set_));
    set_ = SSet{};
    if (validate) out->validate();
    out->closure_order_ = out->compute_closure_order();
    return out;
}

SSetPtr empty_sset()
{
    SSetBuilder b;
    return b.build(0, true);
}

SSetPtr point() { return delta(0); }

SSetPtr delta(int n)
{
    if (n < 0 || n > 20) throw InvalidArgument("delta: dimension out of supported range");
    // cells are vertex subsets, ordered by (size, lexicographic tuple)
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < (1u << (n + 1)); ++m) masks.push_back(m);
    auto tuple_less = [](std::uint32_t a, std::uint32_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        while (a && b) {
            const int la = std::countr_zero(a), lb = std::countr_zero(b);
            if (la != lb) return la < lb;
            a &= a - 1;
            b &= b - 1;
        }
        return false;
    };
    std::sort(masks.begin(), masks.end(), tuple_less);
    std::vector<int> id_of(1u << (n + 1), -1);
    SSetBuilder b;
    for (auto m : masks) {
        std::vector<int> verts;
        for (int v = 0; v <= n; ++v)
            if (m >> v & 1u) verts.push_back(v);
        const int d = static_cast<int>(verts.size()) - 1;
        std::vector<SimplexRef> faces;
        if (d > 0)
            for (int k = 0; k <= d; ++k) {
                const std::uint32_t fm = m & ~(1u << verts[static_cast<std::size_t>(k)]);
                faces.push_back({id_of[fm], d - 1, 0});
            }
        std::string label = "[";
        for (std::size_t k = 0; k < verts.size(); ++k) label += (k ? "," : "") + std::to_string(verts[k]);
        label += "]";
        id_of[m] = b.add(d, std::move(faces), std::move(label));
    }
    return b.build(n, true);
}

SimplexRef SSetMap::operator()(const SimplexRef& x) const
{
    const SimplexRef& img = images[static_cast<std::size_t>(x.cell)];
    if (!x.collapse) return img;
    return codomain->degenerate_by(img, x.degeneracy());
}

std::string SSetMap::defect() const
{
    if (!domain || !codomain) return "map without domain or codomain";
    if (static_cast<int>(images.size()) != domain->size()) return "image table size mismatch";
    for (const Cell& c : domain->cells()) {
        const SimplexRef& img = images[static_cast<std::size_t>(c.id)];
        if (img.dim != c.dim || img.cell < 0 || img.cell >= codomain->size() ||
            codomain->cell(img.cell).dim != img.cell_dim())
            return "cell " + std::to_string(c.id) + ": image has wrong dimension";
        for (int i = 0; c.dim > 0 && i <= c.dim; ++i) {
            if ((*this)(domain->faces(c.id)[static_cast<std::size_t>(i)]) != codomain->face(img, i))
                return "cell " + std::to_string(c.id) + ": face " + std::to_string(i) + " does not commute";
        }
    }
    return {};
}

void SSetMap::validate() const
{
    const std::string d = defect();
    if (!d.empty()) throw Error("invalid simplicial map: " + d);
}

bool SSetMap::is_inclusion() const
{
    std::vector<char> seen(static_cast<std::size_t>(codomain ? codomain->size() : 0), 0);
    for (const auto& img : images) {
        if (img.collapse || img.cell < 0 || img.cell >= static_cast<int>(seen.size())) return false;
        if (seen[static_cast<std::size_t>(img.cell)]++) return false;
    }
    return true;
}

SSetMap identity_map(const SSetPtr& x)
{
    SSetMap m{x, x, {}};
    for (const Cell& c : x->cells()) m.images.push_back(x->ref(c.id));
    return m;
}

SSetMap compose(const SSetMap& g, const SSetMap& f)
{
    if (f.codomain != g.domain) throw InvalidArgument("maps not composable");
    SSetMap out{f.domain, g.codomain, {}};
    for (const auto& img : f.images) out.images.push_back(g(img));
    return out;
}

bool same_map(const SSetMap& a, const SSetMap& b)
{
    return a.domain == b.domain && a.codomain == b.codomain && a.images == b.images;
}

std::vector<int> face_closure(const SSet& x, const std::vector<int>& seeds)
{
    std::vector<char> in(static_cast<std::size_t>(x.size()), 0);
    std::vector<int> stack(seeds.begin(), seeds.end());
    while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        if (in[static_cast<std::size_t>(c)]) continue;
        in[static_cast<std::size_t>(c)] = 1;
        for (const auto& f : x.faces(c)) stack.push_back(f.cell);
    }
    std::vector<int> out;
    for (int c = 0; c < x.size(); ++c)
        if (in[static_cast<std::size_t>(c)]) out.push_back(c);
    return out;
}

bool is_subcomplex(const SSet& x, const std::vector<int>& cells)
{
    std::vector<char> in(static_cast<std::size_t>(x.size()), 0);
    for (int c : cells) in[static_cast<std::size_t>(c)] = 1;
    for (int c : cells)
        for (const auto& f : x.faces(c))
            if (!in[static_cast<std::size_t>(f.cell)]) return false;
    return true;
}

Extracted extract_subcomplex(const SSetPtr& parent, const std::vector<int>& cells)
{
    if (!is_subcomplex(*parent, cells)) throw InvalidArgument("cell set is not closed under faces");
    std::vector<char> in(static_cast<std::size_t>(parent->size()), 0);
    for (int c : cells) in[static_cast<std::size_t>(c)] = 1;
    std::vector<int> new_id(static_cast<std::size_t>(parent->size()), -1);
    std::vector<int> parent_cell;
    SSetBuilder b;
    for (int c : parent->canonical_order()) {
        if (!in[static_cast<std::size_t>(c)]) continue;
        std::vector<SimplexRef> faces;
        for (auto f : parent->faces(c)) {
            f.cell = new_id[static_cast<std::size_t>(f.cell)];
            faces.push_back(f);
        }
        new_id[static_cast<std::size_t>(c)] = b.add(parent->cell(c).dim, std::move(faces), parent->cell(c).label);
        parent_cell.push_back(c);
    }
    Extracted out;
    out.sset = b.build(parent->cap(), parent->finite(), false);
    out.inclusion = {out.sset, parent, {}};
    for (int c : parent_cell) out.inclusion.images.push_back(parent->ref(c));
    out.parent_cell = std::move(parent_cell);
    return out;
}

std::vector<int> image_cells(const SSetMap& inclusion)
{
    std::vector<int> out;
    for (const auto& img : inclusion.images) out.push_back(img.cell);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace q2seg
