#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "q2seg/error.hpp"

namespace q2seg {

struct AuditReport {
    std::vector<std::uint64_t> simplices;  // per dimension, degenerate ones included
    std::uint64_t identities = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
    nlohmann::json to_json() const
    {
        return {{"simplices", simplices}, {"identities", identities}, {"failures", failures}, {"ok", ok()}};
    }
};

// Every simplex through dimension cap: nondegenerate ones plus all degeneracies.
template <class Src>
std::vector<std::vector<typename Src::Simplex>> all_simplices(const Src& src, int cap,
                                                              std::uint64_t budget = 20'000'000)
{
    using S = typename Src::Simplex;
    std::vector<std::vector<S>> levels;
    std::uint64_t total = 0;
    for (int n = 0; n <= cap; ++n) {
        std::unordered_set<S, typename Src::Hash> seen;
        std::vector<S> level;
        auto push = [&](S x) {
            if (seen.insert(x).second) level.push_back(std::move(x));
        };
        for (auto& x : src.nondegenerate(n)) push(std::move(x));
        if (n > 0)
            for (const S& y : levels.back())
                for (int i = 0; i < n; ++i) push(src.degeneracy(y, n - 1, i));
        total += level.size();
        if (total > budget) throw BudgetExceeded("simplex enumeration exceeded its budget");
        levels.push_back(std::move(level));
    }
    return levels;
}

// Checks every simplicial identity on every simplex through cap, and that faces
// and degeneracies stay inside the enumerated levels.
template <class Src>
AuditReport audit_simplicial_identities(const Src& src, const std::vector<std::vector<typename Src::Simplex>>& levels,
                                        std::size_t max_failures = 16)
{
    using S = typename Src::Simplex;
    AuditReport r;
    const int cap = static_cast<int>(levels.size()) - 1;
    std::vector<std::unordered_set<S, typename Src::Hash>> member(levels.size());
    for (std::size_t n = 0; n < levels.size(); ++n) {
        member[n].insert(levels[n].begin(), levels[n].end());
        r.simplices.push_back(levels[n].size());
    }
    auto expect = [&](bool ok, const std::string& what, int n, std::size_t idx) {
        ++r.identities;
        if (!ok && r.failures.size() < max_failures)
            r.failures.push_back(what + " fails on " + src.label(levels[static_cast<std::size_t>(n)][idx], n));
    };
    for (int n = 0; n <= cap; ++n) {
        const auto& lv = levels[static_cast<std::size_t>(n)];
        for (std::size_t idx = 0; idx < lv.size(); ++idx) {
            const S& x = lv[idx];
            std::vector<S> d;
            if (n > 0)
                for (int i = 0; i <= n; ++i) {
                    d.push_back(src.face(x, n, i));
                    expect(member[static_cast<std::size_t>(n - 1)].count(d.back()) > 0, "face closure d" + std::to_string(i), n, idx);
                }
            for (int j = 1; n >= 2 && j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    expect(src.face(d[static_cast<std::size_t>(j)], n - 1, i) ==
                               src.face(d[static_cast<std::size_t>(i)], n - 1, j - 1),
                           "d" + std::to_string(i) + "d" + std::to_string(j), n, idx);
            std::vector<S> s;
            for (int j = 0; j <= n; ++j) s.push_back(src.degeneracy(x, n, j));
            for (int j = 0; j <= n; ++j) {
                const S& sj = s[static_cast<std::size_t>(j)];
                if (n + 1 <= cap)
                    expect(member[static_cast<std::size_t>(n + 1)].count(sj) > 0, "degeneracy closure s" + std::to_string(j), n, idx);
                for (int i = 0; i <= n + 1; ++i) {
                    const S lhs = src.face(sj, n + 1, i);
                    bool ok;
                    if (i == j || i == j + 1) ok = lhs == x;
                    else if (i < j) ok = lhs == src.degeneracy(d[static_cast<std::size_t>(i)], n - 1, j - 1);
                    else ok = lhs == src.degeneracy(d[static_cast<std::size_t>(i - 1)], n - 1, j);
                    expect(ok, "d" + std::to_string(i) + "s" + std::to_string(j), n, idx);
                }
                for (int i = 0; i <= j; ++i)
                    expect(src.degeneracy(sj, n + 1, i) == src.degeneracy(s[static_cast<std::size_t>(i)], n + 1, j + 1),
                           "s" + std::to_string(i) + "s" + std::to_string(j), n, idx);
            }
        }
    }
    return r;
}

}  // namespace q2seg
