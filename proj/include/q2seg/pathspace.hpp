#pragma once

#include "q2seg/materialize.hpp"
#include "q2seg/sset.hpp"

namespace q2seg {

enum class Side { Left, Right };

// n-simplices are (n+1)-simplices of X. Left: d_j is d_{j+1} of X. Right: d_j is d_j of X.
struct PathSource {
    using Simplex = SimplexRef;
    using Hash = SimplexRefHash;
    SSetPtr x;
    Side side = Side::Left;

    std::vector<Simplex> nondegenerate(int n) const;
    Simplex face(const Simplex& s, int n, int i) const;
    Simplex degeneracy(const Simplex& s, int n, int i) const;
    std::string label(const Simplex& s, int n) const;
};

// n-simplices are (2n+1)-simplices of X; d_l is d_{n-l} d_{n+1+l} of X.
struct EdgewiseSource {
    using Simplex = SimplexRef;
    using Hash = SimplexRefHash;
    SSetPtr x;

    std::vector<Simplex> nondegenerate(int n) const;
    Simplex face(const Simplex& s, int n, int i) const;
    Simplex degeneracy(const Simplex& s, int n, int i) const;
    std::string label(const Simplex& s, int n) const;
};

using PathSpace = Materialized<PathSource>;
using Edgewise = Materialized<EdgewiseSource>;

// Cap X.cap - 1; a finite X gives a finite result.
PathSpace path_space(const SSetPtr& x, Side side);
// Cap floor((X.cap - 1) / 2); a finite X gives a finite result.
Edgewise edgewise_subdivision(const SSetPtr& x);

}  // namespace q2seg
