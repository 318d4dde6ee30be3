#include "q2seg/ordinal.hpp"

#include <bit>
#include <sstream>

#include "q2seg/error.hpp"

namespace q2seg {

int popcount32(std::uint32_t x) { return std::popcount(x); }

OrdinalMap::OrdinalMap(int target, std::vector<int> vals) : target_dim(target), values(std::move(vals))
{
    if (values.empty() || target < 0)
        throw InvalidArgument("ordinal map needs a nonempty source and target");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] < 0 || values[k] > target)
            throw InvalidArgument("ordinal map value out of range: " + str());
        if (k && values[k] < values[k - 1])
            throw InvalidArgument("ordinal map not monotone: " + str());
    }
}

bool OrdinalMap::injective() const
{
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] == values[k - 1]) return false;
    return true;
}

bool OrdinalMap::surjective() const
{
    if (values.front() != 0 || values.back() != target_dim) return false;
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] > values[k - 1] + 1) return false;
    return true;
}

bool OrdinalMap::is_identity() const { return source_dim() == target_dim && injective(); }

std::string OrdinalMap::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t k = 0; k < values.size(); ++k) os << (k ? "," : "") << values[k];
    os << "]->[" << target_dim << ']';
    return os.str();
}

OrdinalMap OrdinalMap::identity(int n)
{
    std::vector<int> v(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v[k] = k;
    return {n, std::move(v)};
}

OrdinalMap OrdinalMap::coface(int n, int i)
{
    if (n < 1 || i < 0 || i > n) throw InvalidArgument("coface index out of range");
    std::vector<int> v;
    for (int k = 0; k < n; ++k) v.push_back(k < i ? k : k + 1);
    return {n, std::move(v)};
}

OrdinalMap OrdinalMap::codegeneracy(int n, int i)
{
    if (n < 0 || i < 0 || i > n) throw InvalidArgument("codegeneracy index out of range");
    std::vector<int> v;
    for (int k = 0; k <= n + 1; ++k) v.push_back(k <= i ? k : k - 1);
    return {n, std::move(v)};
}

OrdinalMap OrdinalMap::from_image(int n, const std::vector<int>& image)
{
    OrdinalMap f(n, image);
    if (!f.injective()) throw InvalidArgument("image list must be strictly increasing");
    return f;
}

OrdinalMap compose(const OrdinalMap& g, const OrdinalMap& f)
{
    if (f.target_dim != g.source_dim()) throw InvalidArgument("ordinal maps not composable");
    std::vector<int> v(f.values.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = g(f.values[k]);
    return {g.target_dim, std::move(v)};
}

DegeneracyOp::DegeneracyOp(int source_dim, std::uint32_t mask) : m_(source_dim), mask_(mask)
{
    if (m_ < 0 || m_ > kMaxDim) throw InvalidArgument("degeneracy source dimension out of range");
    if (m_ < 32 && (mask_ >> m_) != 0) throw InvalidArgument("collapse mask has bits beyond the source");
}

DegeneracyOp DegeneracyOp::from_indices(int source_dim, const std::vector<int>& collapsed)
{
    std::uint32_t mask = 0;
    int prev = -1;
    for (int t : collapsed) {
        if (t <= prev || t < 0 || t >= source_dim)
            throw InvalidArgument("collapsed indices must be strictly increasing within [0, m)");
        mask |= 1u << t;
        prev = t;
    }
    return {source_dim, mask};
}

DegeneracyOp DegeneracyOp::from_surjection(const OrdinalMap& s)
{
    if (!s.surjective()) throw InvalidArgument("not a surjection: " + s.str());
    std::uint32_t mask = 0;
    for (int t = 0; t < s.source_dim(); ++t)
        if (s(t) == s(t + 1)) mask |= 1u << t;
    return {s.source_dim(), mask};
}

int DegeneracyOp::target_dim() const { return m_ - std::popcount(mask_); }

std::vector<int> DegeneracyOp::collapsed_indices() const
{
    std::vector<int> out;
    for (int t = 0; t < m_; ++t)
        if (mask_ >> t & 1u) out.push_back(t);
    return out;
}

OrdinalMap DegeneracyOp::surjection() const
{
    std::vector<int> v(static_cast<std::size_t>(m_) + 1);
    int cur = 0;
    for (int t = 0; t <= m_; ++t) {
        v[t] = cur;
        if (t < m_ && !(mask_ >> t & 1u)) ++cur;
    }
    return {target_dim(), std::move(v)};
}

std::pair<DegeneracyOp, OrdinalMap> ordinal_factorize(const OrdinalMap& f)
{
    std::uint32_t mask = 0;
    std::vector<int> image{f(0)};
    for (int t = 0; t < f.source_dim(); ++t) {
        if (f(t) == f(t + 1))
            mask |= 1u << t;
        else
            image.push_back(f(t + 1));
    }
    return {DegeneracyOp(f.source_dim(), mask), OrdinalMap(f.target_dim, std::move(image))};
}

std::vector<OrdinalMap> all_monotone(int n, int m)
{
    std::vector<OrdinalMap> out;
    std::vector<int> v(static_cast<std::size_t>(n) + 1, 0);
    for (;;) {
        out.emplace_back(m, v);
        int k = n;
        while (k >= 0 && v[k] == m) --k;
        if (k < 0) break;
        ++v[k];
        for (int t = k + 1; t <= n; ++t) v[t] = v[k];
    }
    return out;
}

}  // namespace q2seg
