#include "doctest.h"
#include "q2seg/ordinal.hpp"

using namespace q2seg;

TEST_CASE("factorization of identity and simple collapses")
{
    auto [s, i] = ordinal_factorize(OrdinalMap::identity(2));
    CHECK(s.is_identity());
    CHECK(i.is_identity());

    auto [s2, i2] = ordinal_factorize(OrdinalMap(1, {0, 0, 1}));
    CHECK(s2.collapsed_indices() == std::vector<int>{0});
    CHECK(i2.is_identity());
}

TEST_CASE("factorization of [0,0,2] against exhaustive factor search")
{
    const OrdinalMap f(2, {0, 0, 2});
    // oracle: every (surjection, injection) pair through every middle object
    int found = 0;
    for (int k = 0; k <= 2; ++k)
        for (const auto& s : all_monotone(2, k))
            for (const auto& i : all_monotone(k, 2))
                if (s.surjective() && i.injective() && compose(i, s) == f) {
                    ++found;
                    CHECK(k == 1);
                    CHECK(s.values == std::vector<int>{0, 0, 1});
                    CHECK(i.values == std::vector<int>{0, 2});
                }
    CHECK(found == 1);
    auto [s, i] = ordinal_factorize(f);
    CHECK(s.collapsed_indices() == std::vector<int>{0});
    CHECK(i.values == std::vector<int>{0, 2});
}

TEST_CASE("factorization recomposes for every monotone map up to [4]->[4]")
{
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m)
            for (const auto& f : all_monotone(n, m)) {
                auto [s, i] = ordinal_factorize(f);
                CHECK(i.injective());
                CHECK(compose(i, s.surjection()) == f);
                CHECK(DegeneracyOp::from_surjection(s.surjection()) == s);
            }
}

TEST_CASE("cosimplicial identities")
{
    for (int n = 2; n <= 5; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                CHECK(compose(OrdinalMap::coface(n, j), OrdinalMap::coface(n - 1, i)) ==
                      compose(OrdinalMap::coface(n, i), OrdinalMap::coface(n - 1, j - 1)));
    for (int n = 1; n <= 5; ++n)
        for (int i = 0; i <= n; ++i) {
            CHECK(compose(OrdinalMap::codegeneracy(n, i), OrdinalMap::coface(n + 1, i)).is_identity());
            CHECK(compose(OrdinalMap::codegeneracy(n, i), OrdinalMap::coface(n + 1, i + 1)).is_identity());
        }
}

TEST_CASE("monotone map counts match binomials")
{
    // |hom([n],[m])| = C(n+m+1, n+1)
    auto binom = [](int a, int b) {
        long long r = 1;
        for (int t = 0; t < b; ++t) r = r * (a - t) / (t + 1);
        return r;
    };
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m)
            CHECK(static_cast<long long>(all_monotone(n, m).size()) == binom(n + m + 1, n + 1));
}

TEST_CASE("degeneracy op round trip and composition")
{
    for (int m = 0; m <= 6; ++m)
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            DegeneracyOp d(m, mask);
            CHECK(DegeneracyOp::from_indices(m, d.collapsed_indices()) == d);
            CHECK(DegeneracyOp::from_surjection(d.surjection()) == d);
        }
    CHECK_THROWS(OrdinalMap(1, {1, 0}));
    CHECK_THROWS(DegeneracyOp(2, 4u));
}
