#include <doctest.h>

#include <random>
#include <set>

#include "q2seg/category.hpp"
#include "q2seg/combinators.hpp"
#include "q2seg/lifting.hpp"
#include "q2seg/pathspace.hpp"
#include "q2seg/shapes.hpp"

using namespace q2seg;

namespace {

std::uint64_t binom(int n, int k)
{
    std::uint64_t r = 1;
    for (int t = 1; t <= k; ++t) r = r * static_cast<std::uint64_t>(n - k + t) / static_cast<std::uint64_t>(t);
    return r;
}

// Counts extensions by trying every assignment of the free cells.
std::uint64_t brute_force_lifts(const LiftingProblem& p, const SSetPtr& x)
{
    const SSetPtr& b = p.inclusion.codomain;
    Images base = fixed_images(p);
    std::vector<int> free;
    for (int c = 0; c < b->size(); ++c)
        if (base[static_cast<std::size_t>(c)].cell < 0) free.push_back(c);
    std::vector<std::vector<SimplexRef>> options;
    for (int c : free) options.push_back(x->simplices(b->cell(c).dim));
    std::uint64_t count = 0;
    std::vector<std::size_t> pick(free.size(), 0);
    while (true) {
        Images img = base;
        for (std::size_t k = 0; k < free.size(); ++k) img[static_cast<std::size_t>(free[k])] = options[k][pick[k]];
        if (SSetMap{b, x, img}.defect().empty()) ++count;
        std::size_t k = 0;
        while (k < free.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
        if (k == free.size()) break;
    }
    return count;
}

}  // namespace

TEST_CASE("category validation rejects broken tables")
{
    auto c = poset_category(2);
    auto j = c.to_json();
    CHECK_NOTHROW(FiniteCategory::from_json(j));
    auto bad = j;
    bad["compose"]["(1<=2,0<=1)"] = "0<=1";
    CHECK_THROWS_AS(FiniteCategory::from_json(bad), InvalidArgument);
    auto round = FiniteCategory::from_json(j);
    CHECK(round.to_json() == j);
    CHECK(cyclic_group(3).inverse(1) == 2);
    CHECK(poset_category(1).inverse(1) == -1);
}

TEST_CASE("nerve of [n] is the standard simplex")
{
    for (int n = 0; n <= 4; ++n) {
        auto nv = nerve(poset_category(n), n + 1);
        CHECK(nv.sset()->finite());
        CHECK(iso_check(*nv.sset(), *delta(n)).has_value());
    }
}

TEST_CASE("nerve of the free isomorphism matches the truncated J")
{
    auto nv = nerve(free_isomorphism(), 4);
    CHECK_FALSE(nv.sset()->finite());
    CHECK(nv.sset()->counts() == std::vector<int>{2, 2, 2, 2, 2});
    auto j = build_shape(ShapeSpec::jtrunc(4));
    CHECK(iso_check(*nv.sset(), *j.sub.sset).has_value());
}

TEST_CASE("nerve of a discrete category is a disjoint union of points")
{
    auto nv = nerve(discrete_category(2), 3);
    CHECK(nv.sset()->finite());
    CHECK(iso_check(*nv.sset(), *coproduct(point(), point()).sset).has_value());
}

TEST_CASE("nerve simplex counts match composable strings")
{
    // |N(G)_n| = |G|^n for a group
    auto nv = nerve(symmetric_group3(), 4);
    for (int n = 0; n <= 4; ++n) {
        std::uint64_t expect = 1;
        for (int k = 0; k < n; ++k) expect *= 6;
        CHECK(nv.sset()->simplex_count(n) == expect);
    }
    nv.sset()->validate();
}

TEST_CASE("random categories are deterministic and bounded")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto a = random_category(seed);
        auto b = random_category(seed);
        CHECK(a.to_json() == b.to_json());
        CHECK(a.object_count() >= 2);
        CHECK(a.object_count() <= 5);
        CHECK(a.morphism_count() <= 12);
        CHECK(a.nondegenerate_counts(7).back() <= 4000);
    }
}

TEST_CASE("path space levels")
{
    auto d2 = delta(2);
    auto p = path_space(d2, Side::Left);
    CHECK(p.sset->simplex_count(0) == d2->simplex_count(1));
    // monotone maps [2] -> [2]
    CHECK(p.sset->simplex_count(1) == binom(5, 2));
    CHECK(p.sset->simplex_count(1) == 10);
    p.sset->validate();
    auto q = path_space(d2, Side::Right);
    CHECK(q.sset->simplex_count(1) == 10);
    q.sset->validate();
}

TEST_CASE("left path space of a nerve")
{
    auto nv = nerve(poset_category(2), 4);
    auto p = path_space(nv.sset(), Side::Left);
    // vertices are all edges, identities included
    CHECK(p.sset->count(0) == 6);
    p.sset->validate();
}

TEST_CASE("edgewise subdivision faces")
{
    auto d3 = delta(3);
    auto e = edgewise_subdivision(d3);
    CHECK(e.sset->simplex_count(0) == d3->simplex_count(1));
    e.sset->validate();
    for (const auto& s : d3->simplices(3)) {
        const SimplexRef r = e.ez(s, 1);
        const SimplexRef f0 = e.sset->face(r, 0);
        CHECK(e.realize(f0) == d3->face(d3->face(s, 2), 1));
        const SimplexRef f1 = e.sset->face(r, 1);
        CHECK(e.realize(f1) == d3->face(d3->face(s, 3), 0));
    }
}

TEST_CASE("edgewise subdivision of a nerve at cap")
{
    auto nv = nerve(cyclic_group(2), 7);
    auto e = edgewise_subdivision(nv.sset());
    CHECK(e.sset->cap() == 3);
    // (esd X)_n = X_{2n+1}
    for (int n = 0; n <= 3; ++n) CHECK(e.sset->simplex_count(n) == nv.sset()->simplex_count(2 * n + 1));
    e.sset->validate();
}

TEST_CASE("nerves have unique inner and 2-Segal horn fillers")
{
    auto nv = nerve(symmetric_group3(), 4);
    LiftTarget t(nv.sset());
    auto horn = build_shape(ShapeSpec::horn(2, 1));
    std::uint64_t maps = 0;
    for_each_map(horn.sub.sset, t, [&](const Images& img) {
        ++maps;
        LiftingProblem p{horn.inclusion, SSetMap{horn.sub.sset, nv.sset(), img}};
        CHECK(count_lifts(p, t) == 1);
        return true;
    });
    CHECK(maps == 36);
    auto g = build_shape(ShapeSpec::genhorn(3, {0, 2}));
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        auto m = random_map(g.sub.sset, t, rng);
        REQUIRE(m.has_value());
        LiftingProblem p{g.inclusion, *m};
        CHECK(count_lifts(p, t) == 1);
        auto lift = solve_lifting(p, t);
        REQUIRE(lift.has_value());
        CHECK(lift->defect().empty());
        CHECK(same_map(compose(*lift, g.inclusion), *m));
    }
}

TEST_CASE("lifting agrees with brute force on small problems")
{
    std::vector<ShapeSpec> shapes = {ShapeSpec::horn(2, 1), ShapeSpec::horn(2, 0), ShapeSpec::boundary(2),
                                     ShapeSpec::spine1(2), ShapeSpec::boundary(1)};
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto nv = nerve(random_category(seed), 3);
        LiftTarget t(nv.sset());
        std::mt19937_64 rng(seed);
        for (const auto& spec : shapes) {
            auto sh = build_shape(spec);
            for (int k = 0; k < 4; ++k) {
                auto m = random_map(sh.sub.sset, t, rng);
                REQUIRE(m.has_value());
                LiftingProblem p{sh.inclusion, *m};
                CHECK(count_lifts(p, t) == brute_force_lifts(p, nv.sset()));
                for (const auto& l : enumerate_lifts(p, t)) CHECK(l.defect().empty());
            }
        }
    }
}

TEST_CASE("lifting enumerates all maps out of a small complex")
{
    // maps Delta[1] -> Delta[2] are monotone pairs
    LiftTarget t(delta(2));
    CHECK(for_each_map(delta(1), t, [](const Images&) { return true; }) == 6);
    CHECK(for_each_map(delta(2), t, [](const Images&) { return true; }) == 10);
    // Lambda^{0,2}[3] in itself has no filler
    auto g = build_shape(ShapeSpec::genhorn(3, {0, 2}));
    LiftTarget self(g.sub.sset);
    LiftingProblem p{g.inclusion, identity_map(g.sub.sset)};
    CHECK_FALSE(solve_lifting(p, self).has_value());
}

TEST_CASE("lifting honours the node budget")
{
    auto nv = nerve(symmetric_group3(), 3);
    LiftTarget t(nv.sset());
    CHECK_THROWS_AS(for_each_map(delta(2), t, [](const Images&) { return true; }, 10), BudgetExceeded);
}
