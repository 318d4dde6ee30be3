#include "q2seg/pathspace.hpp"

#include "q2seg/error.hpp"

namespace q2seg {

std::vector<SimplexRef> PathSource::nondegenerate(int n) const
{
    // s_j of P is s_{j+1} (left) or s_j (right) of X; the remaining bit is free
    const std::uint32_t allowed = side == Side::Left ? 1u : (1u << n);
    std::vector<SimplexRef> out;
    for (const auto& s : x->simplices(n + 1))
        if ((s.collapse & ~allowed) == 0) out.push_back(s);
    return out;
}

SimplexRef PathSource::face(const SimplexRef& s, int, int i) const
{
    return x->face(s, side == Side::Left ? i + 1 : i);
}

SimplexRef PathSource::degeneracy(const SimplexRef& s, int, int i) const
{
    return x->degeneracy(s, side == Side::Left ? i + 1 : i);
}

std::string PathSource::label(const SimplexRef& s, int) const { return x->describe(s); }

std::vector<SimplexRef> EdgewiseSource::nondegenerate(int n) const
{
    std::vector<SimplexRef> out;
    for (const auto& s : x->simplices(2 * n + 1)) {
        bool degenerate = false;
        for (int l = 0; l < n && !degenerate; ++l)
            degenerate = ((s.collapse >> (n - 1 - l)) & 1u) && ((s.collapse >> (n + 1 + l)) & 1u);
        if (!degenerate) out.push_back(s);
    }
    return out;
}

SimplexRef EdgewiseSource::face(const SimplexRef& s, int n, int i) const
{
    return x->face(x->face(s, n + 1 + i), n - i);
}

SimplexRef EdgewiseSource::degeneracy(const SimplexRef& s, int n, int i) const
{
    return x->degeneracy(x->degeneracy(s, n + 1 + i), n - i);
}

std::string EdgewiseSource::label(const SimplexRef& s, int) const { return x->describe(s); }

PathSpace path_space(const SSetPtr& x, Side side)
{
    if (x->finite()) return materialize(PathSource{x, side}, std::max(x->top_dim(), 0), true);
    if (x->cap() < 1) throw CapExceeded("path space needs cap >= 1");
    return materialize(PathSource{x, side}, x->cap() - 1, false);
}

Edgewise edgewise_subdivision(const SSetPtr& x)
{
    if (x->finite()) return materialize(EdgewiseSource{x}, std::max(x->top_dim(), 0), true);
    if (x->cap() < 1) throw CapExceeded("edgewise subdivision needs cap >= 1");
    return materialize(EdgewiseSource{x}, (x->cap() - 1) / 2, false);
}

}  // namespace q2seg
