#include <doctest.h>

#include <map>
#include <numeric>

#include "q2seg/error.hpp"
#include "q2seg/examples.hpp"
#include "q2seg/fillers.hpp"
#include "q2seg/jaug.hpp"

using namespace q2seg;

namespace {

// Isomorphism classes of abelian groups of order n: product of partition counts of the exponents.
int abelian_classes(int n)
{
    auto partitions = [](int e) {
        std::vector<int> p(static_cast<std::size_t>(e + 1), 0);
        p[0] = 1;
        for (int part = 1; part <= e; ++part)
            for (int s = part; s <= e; ++s) p[static_cast<std::size_t>(s)] += p[static_cast<std::size_t>(s - part)];
        return p[static_cast<std::size_t>(e)];
    };
    int classes = 1;
    for (int q = 2; n > 1; ++q) {
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        classes *= partitions(e);
    }
    return classes;
}

// Unlabelled rooted forests on n nodes, by the Euler transform of rooted trees.
std::vector<long long> forest_counts(int max_n)
{
    std::vector<long long> trees(static_cast<std::size_t>(max_n + 2), 0), forests(static_cast<std::size_t>(max_n + 1), 0);
    forests[0] = 1;
    for (int n = 1; n <= max_n; ++n) {
        trees[static_cast<std::size_t>(n)] = forests[static_cast<std::size_t>(n - 1)];
        long long s = 0;
        for (int k = 1; k <= n; ++k) {
            long long c = 0;
            for (int d = 1; d <= k; ++d)
                if (k % d == 0) c += d * trees[static_cast<std::size_t>(d)];
            s += c * forests[static_cast<std::size_t>(n - k)];
        }
        forests[static_cast<std::size_t>(n)] = s / n;
    }
    return forests;
}

long long short_exact_sequences(int max_order)
{
    long long count = 0;
    const auto gs = groups_up_to(max_order);
    for (const auto& a : gs)
        for (const auto& b : gs)
            for (const auto& c : gs) {
                if (a.order() * c.order() != b.order()) continue;
                for (const auto& f : all_homs(a, b)) {
                    if (!f.injective()) continue;
                    for (const auto& g : all_homs(b, c))
                        if (g.surjective() && g.kernel() == f.image()) ++count;
                }
            }
    return count;
}

}  // namespace

TEST_CASE("catalog has one group per isomorphism class")
{
    const auto gs = groups_up_to(8);
    int expected = 0;
    for (int n = 1; n <= 8; ++n) expected += abelian_classes(n);
    CHECK(static_cast<int>(gs.size()) == expected);
    CHECK(gs.size() == 11);
    CHECK(gs.front().trivial());
    CHECK(FinAbGroup::from_cyclic({2, 3}) == FinAbGroup{{6}});
    CHECK(FinAbGroup::from_cyclic({4, 2}) == FinAbGroup{{2, 4}});
    CHECK(FinAbGroup::from_cyclic({2, 2, 4}).name() == "Z/2+Z/2+Z/4");
    CHECK_THROWS_AS(FinAbGroup::from_factors({4, 2}), InvalidArgument);
}

TEST_CASE("hom counts are products of gcds and kernels times images fill the source")
{
    const auto gs = groups_up_to(8);
    for (const auto& a : gs)
        for (const auto& b : gs) {
            long long expected = 1;
            for (int x : a.factors)
                for (int y : b.factors) expected *= std::gcd(x, y);
            const auto homs = all_homs(a, b);
            CHECK(static_cast<long long>(homs.size()) == expected);
            for (const auto& f : homs) {
                CHECK(f.defect().empty());
                CHECK(f.kernel().size() * f.image().size() == static_cast<std::size_t>(a.order()));
            }
        }
    CHECK(automorphisms(FinAbGroup{{2, 2}}).size() == 6);
    CHECK(automorphisms(FinAbGroup{{8}}).size() == 4);
    CHECK(automorphisms(FinAbGroup{{2, 2, 2}}).size() == 168);
}

TEST_CASE("a single node on two layers gives two 2-simplices")
{
    const ForestSource src{1};
    const auto levels = all_simplices(src, 2);
    int one_node = 0;
    for (const auto& f : levels[2])
        if (f.size() == 1) ++one_node;
    CHECK(one_node == 2);
}

TEST_CASE("forest oracle without nodes is a point")
{
    const auto o = hopf_forest_set(0, 3);
    CHECK(o.audit.ok());
    CHECK(o.sset()->counts() == std::vector<int>{1});
    CheckOptions opts;
    const auto r = check_cases(LiftTarget(o.sset()), two_segal_horn_cases(3, 3), true, opts);
    CHECK(r.passed());
    CHECK(r.checked == 2);
}

TEST_CASE("forest edges are the forests on one layer")
{
    const auto o = hopf_forest_set(4, 4);
    CHECK(o.audit.ok());
    CHECK(o.audit.identities > 0);
    const auto forests = forest_counts(4);
    CHECK(o.sset()->count(1) == forests[1] + forests[2] + forests[3] + forests[4]);
    CHECK(o.sset()->finite());
    for (int id : o.sset()->cells_of_dim(4)) CHECK(o.m.concrete[static_cast<std::size_t>(id)].size() == 4);
}

TEST_CASE("inner forest faces merge layers and outer faces delete them")
{
    const ForestSource src{3};
    // root on layer 1 with children on layers 2 and 3
    const auto f = canonical_forest(3, {-1, 0, 0}, {1, 2, 3});
    CHECK(src.face(f, 3, 1).code() == canonical_forest(2, {-1, 0, 0}, {1, 1, 2}).code());
    CHECK(src.face(f, 3, 0).code() == canonical_forest(2, {-1, -1}, {1, 2}).code());
    CHECK(src.face(f, 3, 3).code() == canonical_forest(2, {-1, 0}, {1, 2}).code());
    CHECK(src.degeneracy(f, 3, 0).layer == std::vector<int>{2, 3, 4});
}

TEST_CASE("sampled 2-Segal horns fill in the forest oracle")
{
    const auto o = hopf_forest_set(4, 4);
    CheckOptions opts;
    opts.mode = CheckMode::sample(17, 40);
    const auto r = check_filler_property(o.sset(), Property::Quasi2Segal, 4, opts);
    CHECK(r.passed());
    CHECK(r.checked == 40 * two_segal_horn_cases(3, 4).size());
}

TEST_CASE("Waldhausen edges are groups and triangles are short exact sequences")
{
    const auto levels = enumerate_waldhausen(4, 2);
    CHECK(levels[1].size() == groups_up_to(4).size());
    CHECK(static_cast<long long>(levels[2].size()) == short_exact_sequences(4));

    const auto o = waldhausen_sset_ab(4, 2);
    for (const auto& g : levels[1]) {
        const auto ref = o.m.ez(g, 1);
        CHECK(ref.degenerate() == unpack(g).entry(1, 0).trivial());
    }
}

TEST_CASE("Waldhausen grids are valid and packed operations agree with the readable ones")
{
    const auto levels = enumerate_waldhausen(4, 3);
    const WaldhausenSource src{std::make_shared<const std::vector<std::vector<PackedGrid>>>(levels)};
    CHECK(audit_simplicial_identities(src, levels).ok());
    for (std::size_t t = 0; t < levels[3].size(); t += 7) {
        const PackedGrid& p = levels[3][t];
        const WaldhausenGrid g = unpack(p);
        CHECK(g.defect().empty());
        CHECK(pack(g) == p);
        for (int i = 0; i <= 3; ++i) {
            CHECK(unpack(p.face(i)) == g.face(i));
            CHECK(unpack(p.degeneracy(i)) == g.degeneracy(i));
        }
    }
}

TEST_CASE("Waldhausen oracle audit at cap 4")
{
    const auto o = waldhausen_sset_ab(4, 4, 20'000'000, true);
    REQUIRE(o.audit);
    CHECK(o.audit->ok());
    CHECK(o.audit->simplices == std::vector<std::uint64_t>{1, 5, 27, 368, 17073});
}

TEST_CASE("Waldhausen enumeration respects its budget and bounds")
{
    CHECK_THROWS_AS(enumerate_waldhausen(8, 3, 1000), BudgetExceeded);
    CHECK_THROWS_AS(enumerate_waldhausen(9, 2), InvalidArgument);
    CHECK_THROWS_AS(enumerate_waldhausen(4, 5), InvalidArgument);
}

TEST_CASE("Waldhausen filler counts match the grids sharing a horn")
{
    const auto levels = enumerate_waldhausen(4, 3);
    std::map<std::pair<std::string, std::string>, int> by_horn;
    for (const auto& p : levels[3]) ++by_horn[{p.face(1).label(), p.face(3).label()}];
    const PackedGrid* widest = nullptr;
    int most = 0;
    for (const auto& p : levels[3]) {
        const int c = by_horn[{p.face(1).label(), p.face(3).label()}];
        if (c > most) {
            most = c;
            widest = &p;
        }
    }
    REQUIRE(widest);
    CHECK(most >= 2);

    const auto o = waldhausen_sset_ab(4, 3);
    const auto x = o.m.ez(*widest, 3);
    const auto& X = o.sset();
    const auto problem = horn_lifting_problem(X, 3, {{1, X->face(x, 1)}, {3, X->face(x, 3)}});
    CHECK(count_lifts(problem, LiftTarget(X)) == static_cast<std::uint64_t>(most));
}

TEST_CASE("sampled 2-Segal horns fill in the Waldhausen oracle")
{
    const auto o = waldhausen_sset_ab(4, 4);
    CheckOptions opts;
    opts.mode = CheckMode::sample(23, 30);
    const auto r = check_filler_property(o.sset(), Property::Quasi2Segal, 4, opts);
    CHECK(r.passed());
}

TEST_CASE("counterexample grids share faces up to isomorphism only")
{
    const auto r = appendix_counterexample();
    CHECK(r.sigma_defect.empty());
    CHECK(r.sigma_prime_defect.empty());
    CHECK(r.reproduces());
    CHECK_FALSE(r.sigma.face(0) == r.sigma_prime.face(0));
    CHECK(r.d0_isomorphic);
    CHECK(r.sigma.face(2) == r.sigma_prime.face(2));
    CHECK_FALSE(r.totals_isomorphic);
    CHECK(unpack(pack(r.sigma)) == r.sigma);
    CHECK(grids_isomorphic(r.sigma, r.sigma));
}

TEST_CASE("grids differing by an automorphism are isomorphic but not equal")
{
    const auto levels = enumerate_waldhausen(4, 2);
    WaldhausenGrid g;
    for (const auto& p : levels[2]) {
        g = unpack(p);
        if (g.entry(2, 0) == FinAbGroup{{2, 2}} && g.entry(1, 0) == FinAbGroup{{2}}) break;
    }
    REQUIRE(g.entry(2, 0) == FinAbGroup{{2, 2}});
    WaldhausenGrid twisted = g;
    const AbHom swap{g.entry(2, 0), g.entry(2, 0), {0, 1, 1, 0}};
    twisted.h[static_cast<std::size_t>(WaldhausenGrid::index(1, 0))] = hom_compose(swap, g.hmap(1, 0));
    twisted.v[static_cast<std::size_t>(WaldhausenGrid::index(2, 0))] = hom_compose(g.vmap(2, 0), swap);
    CHECK(twisted.defect().empty());
    CHECK_FALSE(twisted == g);
    CHECK(grids_isomorphic(g, twisted));

    WaldhausenGrid broken = g;
    broken.v[static_cast<std::size_t>(WaldhausenGrid::index(2, 0))] = hom_zero(g.entry(2, 0), g.entry(2, 1));
    CHECK_FALSE(broken.defect().empty());
    const auto o = waldhausen_sset_ab(4, 2);
    CHECK(o.find(g));
    CHECK_FALSE(o.find(broken));
}
