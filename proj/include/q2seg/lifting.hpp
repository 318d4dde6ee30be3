#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "q2seg/sset.hpp"

namespace q2seg {

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

// Read-mostly index of a target's simplices by their face tuples.
class LiftTarget {
  public:
    explicit LiftTarget(SSetPtr x);

    const SSetPtr& sset() const { return x_; }
    const SSet& operator*() const { return *x_; }
    const SSet* operator->() const { return x_.get(); }
    // Every n-simplex (degenerate or not) whose faces are exactly `faces`.
    const std::vector<SimplexRef>& candidates(const std::vector<SimplexRef>& faces) const;
    const std::vector<SimplexRef>& vertices() const { return vertices_; }

  private:
    using Level = std::unordered_map<std::vector<SimplexRef>, std::vector<SimplexRef>, SimplexListHash>;
    const Level& level(int n) const;

    SSetPtr x_;
    std::vector<SimplexRef> vertices_;
    mutable std::mutex mu_;
    mutable std::vector<std::unique_ptr<Level>> levels_;
};

using Images = std::vector<SimplexRef>;
// Returning false stops the enumeration.
using LiftVisitor = std::function<bool(const Images&)>;

// Extends a partial assignment on the cells of B (cell == -1 means free)
// by backtracking over free cells in (dim, id) order.
std::uint64_t extend_assignments(const SSet& b, const LiftTarget& t, Images fixed, const LiftVisitor& visit,
                                 std::uint64_t budget = kDefaultBudget, std::mt19937_64* rng = nullptr);

struct LiftingProblem {
    SSetMap inclusion;  // A -> B
    SSetMap partial;    // A -> X
};

// Initial assignment on B determined by the problem.
Images fixed_images(const LiftingProblem& p);

std::optional<SSetMap> solve_lifting(const LiftingProblem& p, const LiftTarget& t, std::uint64_t budget = kDefaultBudget);
std::vector<SSetMap> enumerate_lifts(const LiftingProblem& p, const LiftTarget& t, std::size_t limit = SIZE_MAX,
                                     std::uint64_t budget = kDefaultBudget);
std::uint64_t count_lifts(const LiftingProblem& p, const LiftTarget& t, std::uint64_t limit = UINT64_MAX,
                          std::uint64_t budget = kDefaultBudget);
std::optional<SSetMap> random_lift(const LiftingProblem& p, const LiftTarget& t, std::mt19937_64& rng,
                                   std::uint64_t budget = kDefaultBudget);

// All maps A -> X, as lifts along the empty inclusion.
std::uint64_t for_each_map(const SSetPtr& a, const LiftTarget& t, const LiftVisitor& visit,
                           std::uint64_t budget = kDefaultBudget);
std::optional<SSetMap> random_map(const SSetPtr& a, const LiftTarget& t, std::mt19937_64& rng,
                                  std::uint64_t budget = kDefaultBudget);

}  // namespace q2seg
