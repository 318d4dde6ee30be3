#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "q2seg/materialize.hpp"

namespace q2seg {

struct Morphism {
    int src = 0;
    int tgt = 0;
    std::string name;
};

class FiniteCategory {
  public:
    FiniteCategory() = default;
    // compose[g][f] = g o f, or -1 when tgt(f) != src(g). Validated.
    FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms, std::vector<int> identities,
                   std::vector<std::vector<int>> compose);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int morphism_count() const { return static_cast<int>(morphisms_.size()); }
    const std::string& object_name(int o) const { return objects_[static_cast<std::size_t>(o)]; }
    const Morphism& morphism(int m) const { return morphisms_[static_cast<std::size_t>(m)]; }
    int identity(int o) const { return identities_[static_cast<std::size_t>(o)]; }
    bool is_identity(int m) const;
    int compose(int g, int f) const;
    // g o f = id and f o g = id for some g
    int inverse(int f) const;

    // Number of identity-free composable strings of each length 0..max_len.
    std::vector<std::uint64_t> nondegenerate_counts(int max_len) const;

    nlohmann::json to_json() const;
    static FiniteCategory from_json(const nlohmann::json& j);

  private:
    void validate() const;

    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<int> identities_;
    std::vector<std::vector<int>> compose_;
    std::vector<char> is_id_;
};

FiniteCategory poset_category(int n);       // 0 -> 1 -> ... -> n
FiniteCategory free_isomorphism();          // two objects, one morphism per hom set
FiniteCategory discrete_category(int k);
FiniteCategory cyclic_group(int order);
FiniteCategory symmetric_group3();
// Concrete category of functions between small finite sets, closed under
// composition; rejection-sampled to keep nerves small.
FiniteCategory random_category(std::uint64_t seed, int max_objects = 5, int max_morphisms = 12,
                               std::uint64_t max_cells_dim7 = 4000);

struct NerveSource {
    using Simplex = std::vector<int>;  // {-1 - object} in dim 0, composable arrows otherwise
    struct Hash {
        std::size_t operator()(const Simplex& s) const noexcept;
    };
    const FiniteCategory* cat;

    std::vector<Simplex> nondegenerate(int n) const;
    Simplex face(const Simplex& s, int n, int i) const;
    Simplex degeneracy(const Simplex& s, int n, int i) const;
    std::string label(const Simplex& s, int n) const;
    int vertex(const Simplex& s, int n, int v) const;
};

struct Nerve {
    std::shared_ptr<const FiniteCategory> cat;
    Materialized<NerveSource> m;
    const SSetPtr& sset() const { return m.sset; }
    // EZ form of a composable string (identities allowed).
    SimplexRef simplex(const std::vector<int>& arrows) const;
    SimplexRef object(int o) const;
};

Nerve nerve(const FiniteCategory& c, int cap);

}  // namespace q2seg
