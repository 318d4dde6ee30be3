#pragma once

#include <concepts>
#include <string>
#include <unordered_map>
#include <vector>

#include "q2seg/error.hpp"
#include "q2seg/sset.hpp"

namespace q2seg {

// A Source describes a simplicial set by concrete simplices:
//   Simplex, Hash, face(x, n, i), degeneracy(x, n, i), label(x, n),
//   and either all(n) or nondegenerate(n).
template <class S>
concept HasNondegenerate = requires(const S& s, int n) { s.nondegenerate(n); };

template <class Src>
struct Materialized {
    using Simplex = typename Src::Simplex;

    Src source;
    SSetPtr sset;
    std::vector<Simplex> concrete;
    std::unordered_multimap<std::size_t, int> index;  // hash of concrete[id] -> id

    int find_cell(const Simplex& x) const
    {
        auto [lo, hi] = index.equal_range(typename Src::Hash{}(x));
        for (auto it = lo; it != hi; ++it)
            if (concrete[static_cast<std::size_t>(it->second)] == x) return it->second;
        return -1;
    }

    bool is_degenerate(const Simplex& x, int n) const
    {
        for (int i = 0; i < n; ++i)
            if (source.degeneracy(source.face(x, n, i), n - 1, i) == x) return true;
        return false;
    }

    // Eilenberg-Zilber form of a concrete n-simplex.
    SimplexRef ez(const Simplex& x, int n) const
    {
        Simplex y = x;
        int d = n;
        std::vector<int> stripped;
        for (bool again = true; again && d > 0;) {
            again = false;
            for (int i = 0; i < d; ++i) {
                Simplex z = source.face(y, d, i);
                if (source.degeneracy(z, d - 1, i) == y) {
                    stripped.push_back(i);
                    y = std::move(z);
                    --d;
                    again = true;
                    break;
                }
            }
        }
        const int id = find_cell(y);
        if (id < 0) {
            sset->require_dim(d, "materialized lookup");
            throw Error("materialized lookup: nondegenerate simplex missing from the cell table");
        }
        // x = y o s^{i_r} o ... o s^{i_1}
        OrdinalMap g = OrdinalMap::identity(n);
        int cur = n;
        for (int i : stripped) {
            g = compose(OrdinalMap::codegeneracy(cur - 1, i), g);
            --cur;
        }
        return {id, n, DegeneracyOp::from_surjection(g).mask()};
    }

    Simplex realize(const SimplexRef& r) const
    {
        Simplex x = concrete[static_cast<std::size_t>(r.cell)];
        int d = r.cell_dim();
        for (int t : r.degeneracy().collapsed_indices()) {
            x = source.degeneracy(x, d, t);
            ++d;
        }
        return x;
    }
};

// Builds the cell table through dimension cap. finite asserts that no
// nondegenerate simplices exist above cap.
template <class Src>
Materialized<Src> materialize(Src src, int cap, bool finite)
{
    Materialized<Src> m{std::move(src), nullptr, {}, {}};
    SSetBuilder b;
    // faces are looked up in the partially built table
    auto partial = std::make_shared<SSet>();
    for (int n = 0; n <= cap; ++n) {
        std::vector<typename Src::Simplex> level;
        if constexpr (HasNondegenerate<Src>) {
            level = m.source.nondegenerate(n);
        } else {
            for (auto& x : m.source.all(n))
                if (!m.is_degenerate(x, n)) level.push_back(std::move(x));
        }
        std::vector<std::vector<SimplexRef>> face_lists;
        face_lists.reserve(level.size());
        if (n > 0) {
            // snapshot of cells below n so ez can resolve faces
            SSetBuilder snap_builder = b;
            m.sset = snap_builder.build(n - 1, false, false);
            for (const auto& x : level) {
                std::vector<SimplexRef> faces;
                for (int i = 0; i <= n; ++i) faces.push_back(m.ez(m.source.face(x, n, i), n - 1));
                face_lists.push_back(std::move(faces));
            }
        }
        m.concrete.reserve(m.concrete.size() + level.size());
        for (std::size_t k = 0; k < level.size(); ++k) {
            const int id = b.add(n, n > 0 ? std::move(face_lists[k]) : std::vector<SimplexRef>{},
                                 m.source.label(level[k], n));
            m.index.emplace(typename Src::Hash{}(level[k]), id);
            m.concrete.push_back(std::move(level[k]));
        }
    }
    m.sset = b.build(cap, finite);
    return m;
}

}  // namespace q2seg
