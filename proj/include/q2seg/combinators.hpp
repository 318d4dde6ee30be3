#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "q2seg/materialize.hpp"
#include "q2seg/sset.hpp"

namespace q2seg {

struct PairSimplex {
    SimplexRef a;
    SimplexRef b;
    friend bool operator==(const PairSimplex&, const PairSimplex&) = default;
};

struct PairSimplexHash {
    std::size_t operator()(const PairSimplex& p) const noexcept
    {
        return SimplexRefHash{}(p.a) * 31u ^ SimplexRefHash{}(p.b);
    }
};

struct ProductSource {
    using Simplex = PairSimplex;
    using Hash = PairSimplexHash;
    SSetPtr x, y;

    std::vector<Simplex> nondegenerate(int n) const;
    Simplex face(const Simplex& s, int n, int i) const;
    Simplex degeneracy(const Simplex& s, int n, int i) const;
    std::string label(const Simplex& s, int n) const;
};

// The empty part of a join simplex has dim -1 and cell -1.
struct JoinSource {
    using Simplex = PairSimplex;
    using Hash = PairSimplexHash;
    SSetPtr x, y;

    std::vector<Simplex> nondegenerate(int n) const;
    Simplex face(const Simplex& s, int n, int i) const;
    Simplex degeneracy(const Simplex& s, int n, int i) const;
    std::string label(const Simplex& s, int n) const;
};

struct ProductResult {
    Materialized<ProductSource> m;
    SSetMap proj_x, proj_y;
    const SSetPtr& sset() const { return m.sset; }
};

struct JoinResult {
    Materialized<JoinSource> m;
    SSetMap embed_x, embed_y;
    const SSetPtr& sset() const { return m.sset; }
};

// Caps: finite factors count as unbounded; the output cap is the least input cap.
ProductResult product(const SSetPtr& x, const SSetPtr& y);
JoinResult join(const SSetPtr& x, const SSetPtr& y);

// f x g into an already built product of the codomains.
SSetMap product_map(const SSetMap& f, const SSetMap& g, const ProductResult& source, const ProductResult& target);
SSetMap join_map(const SSetMap& f, const SSetMap& g, const JoinResult& source, const JoinResult& target);

struct PushoutResult {
    SSetPtr p;
    SSetMap x_to_p;  // keeps X's cell ids
    SSetMap b_to_p;
};

// P = X u_A B. Cells of B not in the image of i are appended in B's (dim, id) order.
PushoutResult pushout_along_mono(const SSetMap& i, const SSetMap& f);

// Reverses vertex order: d_i of the result is d_{n-i}.
SSetPtr opposite(const SSetPtr& x);
SimplexRef opposite_ref(const SimplexRef& s);

struct CoproductResult {
    SSetPtr sset;
    SSetMap in_x, in_y;
};
CoproductResult coproduct(const SSetPtr& x, const SSetPtr& y);

struct IsoOptions {
    // Optional cell colors; a match must preserve them.
    std::vector<int> color_x, color_y;
    // Forced assignments (x cell, y cell).
    std::vector<std::pair<int, int>> fixed;
};

// Cell bijection X -> Y commuting with faces, if one exists.
std::optional<std::vector<int>> iso_check(const SSet& x, const SSet& y, const IsoOptions& opts = {});

// Isomorphism of arrows A -> B and A' -> B' that is the identity-compatible
// square fixing A: beta o i = i' o alpha with alpha given.
std::optional<std::vector<int>> arrow_iso(const SSetMap& i, const SSetMap& i2, const std::vector<int>& alpha);
// Same, searching for alpha too (subcomplex images colored).
std::optional<std::vector<int>> arrow_iso(const SSetMap& i, const SSetMap& i2);

}  // namespace q2seg
