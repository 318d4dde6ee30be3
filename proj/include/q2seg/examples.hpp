#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "q2seg/abgroup.hpp"
#include "q2seg/audit.hpp"
#include "q2seg/materialize.hpp"
#include "q2seg/sset.hpp"

namespace q2seg {

// Rooted forest with nodes on layers 1..layers, a parent never above its child.
// Nodes are in canonical preorder, so equal forests compare equal.
struct LayeredForest {
    int layers = 0;
    std::vector<int> parent;  // -1 for roots
    std::vector<int> layer;

    int size() const { return static_cast<int>(parent.size()); }
    std::string code() const;

    friend bool operator==(const LayeredForest&, const LayeredForest&) = default;
};

LayeredForest canonical_forest(int layers, const std::vector<int>& parent, const std::vector<int>& layer);

struct ForestSource {
    using Simplex = LayeredForest;
    struct Hash {
        std::size_t operator()(const LayeredForest& f) const noexcept;
    };
    int max_nodes = 0;

    std::vector<Simplex> nondegenerate(int n) const;
    // d_0 drops layer 1, d_n drops layer n, inner d_l merges layers l and l+1.
    Simplex face(const Simplex& s, int n, int i) const;
    // s_i inserts an empty layer after layer i.
    Simplex degeneracy(const Simplex& s, int n, int i) const;
    std::string label(const Simplex& s, int n) const;
};

struct ForestOracle {
    AuditReport audit;  // identities over every simplex through cap
    Materialized<ForestSource> m;
    const SSetPtr& sset() const { return m.sset; }
};

// Layered forests with at most max_nodes nodes. The result is finite once cap
// reaches max_nodes.
ForestOracle hopf_forest_set(int max_nodes, int cap);

// Entries A_{j,k} for 0 <= k < j <= n. h(j,k) : A_{j,k} -> A_{j+1,k} and
// v(j,k) : A_{j,k} -> A_{j,k+1}; entries with j == k are zero.
struct WaldhausenGrid {
    int n = 0;
    std::vector<FinAbGroup> entries;  // index j(j-1)/2 + k
    std::vector<AbHom> h;             // same index, used for k < j < n
    std::vector<AbHom> v;             // same index, used for k+1 < j

    static int index(int j, int k) { return j * (j - 1) / 2 + k; }
    FinAbGroup entry(int j, int k) const;
    // Horizontal map out of (j,k) for k <= j < n, vertical out of (j,k) for k < j.
    AbHom hmap(int j, int k) const;
    AbHom vmap(int j, int k) const;

    WaldhausenGrid face(int i) const;
    WaldhausenGrid degeneracy(int i) const;
    // Empty iff horizontals are injective, verticals surjective and every
    // elementary square commutes and is bicartesian.
    std::string defect() const;
    std::string label() const;
    nlohmann::json to_json() const;

    friend bool operator==(const WaldhausenGrid&, const WaldhausenGrid&) = default;
};

// Entrywise isomorphisms commuting with every map, if any.
bool grids_isomorphic(const WaldhausenGrid& a, const WaldhausenGrid& b);

// Grid over the groups of order <= 8: catalog ids plus each hom as the images
// of the source generators, three bits apiece. Unused slots stay zero, so
// equality is on the nose.
struct PackedGrid {
    std::uint8_t n = 0;
    std::array<std::uint8_t, 21> g{};   // index j(j-1)/2 + k
    std::array<std::uint16_t, 15> h{};  // h(j,k) for j < n, index j(j-1)/2 + k
    std::array<std::uint16_t, 15> v{};  // v(j,k) for k+1 < j, index (j-1)(j-2)/2 + k

    PackedGrid face(int i) const;
    PackedGrid degeneracy(int i) const;
    std::string label() const;

    friend bool operator==(const PackedGrid&, const PackedGrid&) = default;
};

// Groups of order <= 8 in groups_up_to order; PackedGrid::g indexes this list.
const std::vector<FinAbGroup>& small_group_catalog();
// Throws InvalidArgument for grids outside the catalog or above dimension 6.
PackedGrid pack(const WaldhausenGrid& g);
WaldhausenGrid unpack(const PackedGrid& p);

struct WaldhausenSource {
    using Simplex = PackedGrid;
    struct Hash {
        std::size_t operator()(const PackedGrid& g) const noexcept;
    };
    std::shared_ptr<const std::vector<std::vector<PackedGrid>>> levels;  // every grid, by dimension
    bool labels = true;

    std::vector<Simplex> nondegenerate(int n) const;
    Simplex face(const Simplex& s, int n, int i) const { return (void)n, s.face(i); }
    Simplex degeneracy(const Simplex& s, int n, int i) const { return (void)n, s.degeneracy(i); }
    std::string label(const Simplex& s, int n) const { return (void)n, labels ? s.label() : std::string(); }
};

struct WaldhausenOracle {
    int max_order = 0;
    std::optional<AuditReport> audit;  // identities over every enumerated grid, when requested
    Materialized<WaldhausenSource> m;

    const SSetPtr& sset() const { return m.sset; }
    std::optional<SimplexRef> find(const WaldhausenGrid& g) const;
    WaldhausenGrid grid(const SimplexRef& x) const { return unpack(m.realize(x)); }
};

// Every grid through dimension cap, each extended from its d_n face.
std::vector<std::vector<PackedGrid>> enumerate_waldhausen(int max_order, int cap, std::uint64_t budget = 20'000'000);
// The enumeration is dropped once materialized; with audit it is first checked
// against every simplicial identity.
WaldhausenOracle waldhausen_sset_ab(int max_order, int cap, std::uint64_t budget = 20'000'000, bool audit = false,
                                    bool labels = true);

struct CounterexampleReport {
    WaldhausenGrid sigma, sigma_prime;
    std::string sigma_defect, sigma_prime_defect;
    bool sigma_in_oracle = false, sigma_prime_in_oracle = false;
    bool d0_isomorphic = false, d2_isomorphic = false, totals_isomorphic = true;

    bool reproduces() const;
    nlohmann::json to_json() const;
};

// The pair of 3-simplices with total group Z/4+Z/2; oracle may be null to skip
// the membership check.
CounterexampleReport appendix_counterexample(const WaldhausenOracle* oracle = nullptr);

}  // namespace q2seg
