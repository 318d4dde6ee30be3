#include "q2seg/equivalence.hpp"

#include <deque>
#include <unordered_map>

#include "q2seg/error.hpp"

namespace q2seg {

nlohmann::json EdgeStatus::to_json(const SSet& x) const
{
    nlohmann::json j = {{"edge", x.describe(edge)},
                        {"bi_invertible", bi_invertible},
                        {"extends_to_j_depth", extends_to_j_depth},
                        {"requested_depth", requested_depth}};
    if (left_witness) j["left_witness"] = x.describe(*left_witness);
    if (right_witness) j["right_witness"] = x.describe(*right_witness);
    return j;
}

EdgeStatus edge_status(const SSetPtr& x, const SimplexRef& edge, int j_depth, std::uint64_t budget)
{
    if (edge.dim != 1) throw InvalidArgument("edge_status needs a 1-simplex");
    x->require_dim(2, "edge_status");
    EdgeStatus st;
    st.edge = edge;
    st.requested_depth = j_depth;
    for (const auto& s : x->simplices(2)) {
        if (!x->face(s, 1).degenerate()) continue;
        if (!st.left_witness && x->face(s, 2) == edge) st.left_witness = s;
        if (!st.right_witness && x->face(s, 0) == edge) st.right_witness = s;
        if (st.left_witness && st.right_witness) break;
    }
    st.bi_invertible = st.left_witness && st.right_witness;
    for (int d = 1; d <= j_depth; ++d) {
        if (!x->covers(d)) break;
        if (!extend_edge_to_j(x, edge, d, budget)) break;
        st.extends_to_j_depth = d;
    }
    return st;
}

HomotopyResult homotopic(const SSetPtr& x, const SimplexRef& a, const SimplexRef& b, std::uint64_t budget)
{
    if (a.dim != b.dim) throw InvalidArgument("homotopic needs simplices of equal dimension");
    const int n = a.dim;
    HomotopyResult r;
    if (a == b) {
        r.answer = Tri::Yes;
        r.witnesses.push_back(x->degeneracy(a, 0));
        return r;
    }
    if (!x->covers(n + 1)) return r;
    // adjacency from every homotopy (n+1)-simplex
    std::unordered_map<SimplexRef, std::vector<std::pair<SimplexRef, SimplexRef>>, SimplexRefHash> adj;
    std::uint64_t spent = 0;
    for (const auto& h : x->simplices(n + 1)) {
        if (++spent > budget) return r;
        for (int i = 0; i < n + 1; ++i) {
            if (!x->restrict(h, std::vector<int>{i, i + 1}).degenerate()) continue;
            const SimplexRef u = x->face(h, i), v = x->face(h, i + 1);
            if (u == v) continue;
            adj[u].push_back({v, h});
            adj[v].push_back({u, h});
        }
    }
    std::unordered_map<SimplexRef, std::pair<SimplexRef, SimplexRef>, SimplexRefHash> parent;
    std::deque<SimplexRef> queue{a};
    parent[a] = {a, SimplexRef{}};
    while (!queue.empty()) {
        const SimplexRef u = queue.front();
        queue.pop_front();
        if (u == b) break;
        for (const auto& [v, h] : adj[u])
            if (!parent.count(v)) {
                parent[v] = {u, h};
                queue.push_back(v);
            }
    }
    if (!parent.count(b)) {
        r.answer = Tri::No;
        return r;
    }
    for (SimplexRef cur = b; cur != a; cur = parent[cur].first) r.witnesses.insert(r.witnesses.begin(), parent[cur].second);
    r.answer = Tri::Yes;
    return r;
}

}  // namespace q2seg
