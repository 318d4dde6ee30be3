#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "q2seg/lifting.hpp"
#include "q2seg/shapes.hpp"

namespace q2seg {

// Faces of a generalized horn Lambda^S[n] -> X, keyed by present face index.
using HornFaces = std::map<int, SimplexRef>;

// The map Lambda^S[n] -> X with the given faces; throws InvalidArgument when
// the faces disagree on an overlap.
SSetMap horn_map_from_faces(const SSetPtr& x, int n, const HornFaces& faces);
// The same map together with its horn inclusion, ready for the lifting engine.
LiftingProblem horn_lifting_problem(const SSetPtr& x, int n, const HornFaces& faces);

struct OracleQuery {
    int n = 0;
    std::vector<int> present;
    bool broken = false;
};

// Fills generalized horns whose present set is broken, by lifting in X.
class HornOracle {
  public:
    explicit HornOracle(SSetPtr x, std::uint64_t budget = kDefaultBudget);

    const SSetPtr& sset() const { return target_->sset(); }
    // Throws InvalidArgument for a non-broken present set and Error when no filler exists.
    SimplexRef fill(int n, const HornFaces& faces);
    const std::vector<OracleQuery>& queries() const { return *log_; }
    // Oracle for X^op sharing this query log.
    HornOracle opposite() const;

  private:
    HornOracle(std::shared_ptr<LiftTarget> t, std::shared_ptr<std::vector<OracleQuery>> log, std::uint64_t budget);

    std::shared_ptr<LiftTarget> target_;
    std::shared_ptr<std::vector<OracleQuery>> log_;
    std::shared_ptr<std::map<std::pair<int, std::uint32_t>, Shape>> shapes_;
    std::uint64_t budget_;
};

// A map a : JTrunc(depth) -> X.
struct JMap {
    WordComplex j;
    SSetMap a;

    int depth() const { return j.sset->cap(); }
    SimplexRef at(const Word& w) const { return a(j.simplex(w)); }
};

// a with a(0) = a(1) = v, every simplex degenerate.
JMap constant_j_map(const SSetPtr& x, int vertex, int depth);
// Some extension of the edge over JTrunc(depth), if one exists.
std::optional<JMap> extend_edge_to_j(const SSetPtr& x, const SimplexRef& edge, int depth,
                                     std::uint64_t budget = kDefaultBudget);

// (n+2)-simplex H with d_{j+1}H = s_j h, d_{j+2}H = s_{j+1} h, vertices j..j+3
// spanning a(0101), and d_k H = specified[k] for each given k outside j..j+3.
SimplexRef invert_homotopy(HornOracle& oracle, const SimplexRef& h, int j, const JMap& a,
                           const std::map<int, SimplexRef>& specified = {});

// Filler of Lambda^i[n] -> X whose j -> j+1 edge is a(01), j in {i-1, i}.
SimplexRef fill_j_augmented(HornOracle& oracle, int n, int i, int j, const HornFaces& horn, const JMap& a);

}  // namespace q2seg
