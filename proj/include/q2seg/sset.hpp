#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "q2seg/ordinal.hpp"

namespace q2seg {

// A simplex in Eilenberg-Zilber form: the nondegenerate cell pulled back along
// the surjection [dim] ->> [cell dim] encoded by collapse.
struct SimplexRef {
    int cell = -1;
    int dim = 0;
    std::uint32_t collapse = 0;

    bool degenerate() const { return collapse != 0; }
    int cell_dim() const { return dim - popcount32(collapse); }
    DegeneracyOp degeneracy() const { return {dim, collapse}; }

    friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

struct SimplexRefHash {
    std::size_t operator()(const SimplexRef& s) const noexcept
    {
        std::uint64_t h = static_cast<std::uint32_t>(s.cell);
        h = h * 0x9E3779B97F4A7C15ull ^ (static_cast<std::uint64_t>(s.dim) << 40) ^ s.collapse;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

struct SimplexListHash {
    std::size_t operator()(const std::vector<SimplexRef>& v) const noexcept
    {
        std::size_t h = v.size();
        for (const auto& s : v) h = h * 1000003u ^ SimplexRefHash{}(s);
        return h;
    }
};

struct Cell {
    int id = -1;
    int dim = 0;
    std::string label;
};

class SSetBuilder;

// Nondegenerate cells with normalized faces. If finite(), every cell is
// present; otherwise the data is complete exactly in dimensions 0..cap().
class SSet {
  public:
    int cap() const { return cap_; }
    bool finite() const { return finite_; }
    bool covers(int n) const { return finite_ || n <= cap_; }
    void require_dim(int n, const std::string& what) const;

    int size() const { return static_cast<int>(cells_.size()); }
    bool empty() const { return cells_.empty(); }
    int top_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const Cell& cell(int id) const { return cells_[static_cast<std::size_t>(id)]; }
    const std::vector<Cell>& cells() const { return cells_; }
    const std::vector<int>& cells_of_dim(int d) const;
    int count(int d) const { return static_cast<int>(cells_of_dim(d).size()); }
    std::vector<int> counts() const;
    // Cell ids sorted by (dim, id).
    std::vector<int> canonical_order() const;
    // Post-order of face closures, top cells first: every cell follows its faces.
    const std::vector<int>& closure_order() const { return closure_order_; }

    const std::vector<SimplexRef>& faces(int id) const { return faces_[static_cast<std::size_t>(id)]; }
    SimplexRef ref(int id) const { return {id, cell(id).dim, 0}; }

    SimplexRef face(const SimplexRef& x, int i) const;
    SimplexRef degeneracy(const SimplexRef& x, int i) const;
    // x o theta for theta : [p] -> [x.dim].
    SimplexRef restrict(const SimplexRef& x, const OrdinalMap& theta) const;
    SimplexRef restrict(const SimplexRef& x, const std::vector<int>& positions) const;
    // x o s for a surjection s onto [x.dim].
    SimplexRef degenerate_by(const SimplexRef& x, const DegeneracyOp& s) const;
    std::vector<int> vertices(const SimplexRef& x) const;

    // Every n-simplex, ordered by cell (dim, id) then collapse mask.
    std::vector<SimplexRef> simplices(int n) const;
    std::uint64_t simplex_count(int n) const;
    std::string describe(const SimplexRef& x) const;

    // Re-checks every face table; throws on a violated identity.
    void validate() const;

  private:
    friend class SSetBuilder;
    SimplexRef restrict_cell(int c, int* phi, int p) const;
    std::vector<int> compute_closure_order() const;

    int cap_ = 0;
    bool finite_ = true;
    std::vector<Cell> cells_;
    std::vector<std::vector<SimplexRef>> faces_;
    std::vector<std::vector<int>> by_dim_;
    std::vector<int> closure_order_;
};

using SSetPtr = std::shared_ptr<const SSet>;

class SSetBuilder {
  public:
    // Faces may only mention cells added earlier.
    int add(int dim, std::vector<SimplexRef> faces, std::string label = {});
    int size() const { return static_cast<int>(set_.cells_.size()); }
    const Cell& cell(int id) const { return set_.cells_[static_cast<std::size_t>(id)]; }
    SSetPtr build(int cap, bool finite, bool validate = true);

  private:
    SSet set_;
};

SSetPtr empty_sset();
SSetPtr delta(int n);
SSetPtr point();

struct SSetMap {
    SSetPtr domain;
    SSetPtr codomain;
    std::vector<SimplexRef> images;

    SimplexRef operator()(const SimplexRef& x) const;
    // Empty string iff dims match and faces commute.
    std::string defect() const;
    void validate() const;
    // Injective on simplices: distinct nondegenerate cells go to distinct nondegenerate cells.
    bool is_inclusion() const;
};

SSetMap identity_map(const SSetPtr& x);
SSetMap compose(const SSetMap& g, const SSetMap& f);
bool same_map(const SSetMap& a, const SSetMap& b);

// Closure of seeds under faces, sorted ascending.
std::vector<int> face_closure(const SSet& x, const std::vector<int>& seeds);
// True iff cells is closed under faces.
bool is_subcomplex(const SSet& x, const std::vector<int>& cells);

struct Extracted {
    SSetPtr sset;
    SSetMap inclusion;
    std::vector<int> parent_cell;  // new id -> parent id
};

// Cells must be face-closed; new ids follow the parent's (dim, id) order.
Extracted extract_subcomplex(const SSetPtr& parent, const std::vector<int>& cells);
// Cells hit by an inclusion.
std::vector<int> image_cells(const SSetMap& inclusion);

}  // namespace q2seg
