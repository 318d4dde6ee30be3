#include <bit>
#include <set>

#include "doctest.h"
#include "q2seg/combinators.hpp"
#include "q2seg/error.hpp"
#include "q2seg/horns.hpp"
#include "q2seg/shapes.hpp"

using namespace q2seg;

namespace {

bool broken_oracle(std::uint32_t s, int n)
{
    auto in = [s](int v) { return (s >> v & 1u) != 0; };
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l)
                    if ((in(i) && in(k) && !in(j) && !in(l)) || (!in(i) && !in(k) && in(j) && in(l))) return true;
    return false;
}

long long catalan(int m)
{
    long long c = 1;
    for (int k = 0; k < m; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

// count sets of n-2 pairwise noncrossing diagonals of the (n+1)-gon
long long triangulation_count_oracle(int n)
{
    std::vector<std::pair<int, int>> diags;
    for (int a = 0; a <= n; ++a)
        for (int b = a + 2; b <= n; ++b)
            if (!(a == 0 && b == n)) diags.push_back({a, b});
    const int need = n - 2;
    long long count = 0;
    const int m = static_cast<int>(diags.size());
    for (std::uint32_t sel = 0; sel < (1u << m); ++sel) {
        if (std::popcount(sel) != need) continue;
        bool ok = true;
        for (int x = 0; x < m && ok; ++x)
            for (int y = 0; y < m && ok; ++y)
                if ((sel >> x & 1u) && (sel >> y & 1u)) {
                    auto [a, b] = diags[static_cast<std::size_t>(x)];
                    auto [c, d] = diags[static_cast<std::size_t>(y)];
                    if (a < c && c < b && b < d) ok = false;
                }
        count += ok;
    }
    return count;
}

std::uint32_t mask_of(const std::string& label)
{
    std::uint32_t m = 0;
    int cur = -1;
    for (char ch : label) {
        if (ch >= '0' && ch <= '9') cur = (cur < 0 ? 0 : cur * 10) + (ch - '0');
        else if (cur >= 0) {
            m |= 1u << cur;
            cur = -1;
        }
    }
    return m;
}

}  // namespace

TEST_CASE("broken subsets")
{
    CHECK(is_broken({0, 2}, 3));
    CHECK(is_broken({1, 3}, 3));
    CHECK_FALSE(is_broken({0, 1, 6, 7}, 7));
    CHECK(is_broken({0, 1, 3, 4, 5}, 7));
    CHECK_THROWS_AS(is_broken({0}, 2), InvalidArgument);
    for (int n = 3; n <= 10; ++n) {
        const std::uint32_t full = (1u << (n + 1)) - 1;
        for (std::uint32_t s = 0; s <= full; ++s) {
            REQUIRE(is_broken(s, n) == broken_oracle(s, n));
            REQUIRE(is_broken(s, n) == is_broken(full & ~s, n));
        }
    }
    std::set<std::pair<int, int>> pairs;
    for (int i = 0; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j)
            if (is_broken({i, j}, 3)) pairs.insert({i, j});
    CHECK(pairs == std::set<std::pair<int, int>>{{0, 2}, {1, 3}});
}

TEST_CASE("two-segal horn enumeration")
{
    auto h3 = enumerate_two_segal_horns(3);
    REQUIRE(h3.size() == 2);
    CHECK(h3[0].missing() == std::vector<int>{0, 2});
    CHECK(h3[1].missing() == std::vector<int>{1, 3});
    CHECK(enumerate_two_segal_horns(4).size() == 5);
    CHECK(enumerate_two_segal_horns(5).size() == 9);
    for (int n = 3; n <= 8; ++n)
        for (const auto& h : enumerate_two_segal_horns(n)) CHECK(h.is_two_segal());
    CHECK_FALSE(GeneralizedHorn::from_missing(3, {1, 2}).is_two_segal());
    CHECK_THROWS(GeneralizedHorn::from_present(3, {0, 1, 2, 3}));
    CHECK_THROWS(GeneralizedHorn::from_present(3, {}));
}

TEST_CASE("triangulation counts")
{
    CHECK(enumerate_triangulations(2).size() == 1);
    CHECK(enumerate_triangulations(3).size() == 2);
    CHECK(enumerate_triangulations(5).size() == 14);
    for (int n = 2; n <= 7; ++n) CHECK(static_cast<long long>(enumerate_triangulations(n).size()) == triangulation_count_oracle(n));
    for (int n = 2; n <= 9; ++n) {
        const auto all = enumerate_triangulations(n);
        CHECK(static_cast<long long>(all.size()) == catalan(n - 1));
        std::set<std::vector<Triangle>> distinct;
        for (const auto& t : all) {
            REQUIRE(triangulation_defect(t).empty());
            distinct.insert(t.triangles);
            const auto ex = extreme_vertices(t);
            REQUIRE(ex.size() >= 2);
            REQUIRE(std::any_of(ex.begin(), ex.end(), [n](int v) { return v > 0 && v < n; }));
        }
        CHECK(distinct.size() == all.size());
    }
}

TEST_CASE("extreme vertices")
{
    CHECK(extreme_vertices(make_triangulation(5, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}})) == std::vector<int>{1, 5});
    CHECK(extreme_vertices(make_triangulation(2, {{0, 1, 2}})) == std::vector<int>{0, 1, 2});
    CHECK(extreme_vertices(make_triangulation(5, {{0, 1, 2}, {0, 2, 4}, {2, 3, 4}, {0, 4, 5}})) ==
          std::vector<int>{1, 3, 5});
}

TEST_CASE("triangulation with prescribed extremes")
{
    // the recipe puts the ears of 0 and 2, so the result is {013,123}
    CHECK(triangulation_with_extremes(3, 0, 2).triangles == std::vector<Triangle>{{0, 1, 3}, {1, 2, 3}});
    CHECK(triangulation_with_extremes(4, 1, 3).triangles == std::vector<Triangle>{{0, 1, 2}, {0, 2, 4}, {2, 3, 4}});
    const auto t5 = triangulation_with_extremes(5, 0, 3);
    CHECK(std::binary_search(t5.triangles.begin(), t5.triangles.end(), Triangle{0, 1, 5}));
    CHECK(std::binary_search(t5.triangles.begin(), t5.triangles.end(), Triangle{2, 3, 4}));
    CHECK_THROWS_AS(triangulation_with_extremes(4, 1, 2), InvalidArgument);
    for (int n = 3; n <= 9; ++n)
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                if (!is_broken({i, j}, n)) continue;
                const auto t = triangulation_with_extremes(n, i, j);
                REQUIRE(triangulation_defect(t).empty());
                const auto ex = extreme_vertices(t);
                REQUIRE(std::count(ex.begin(), ex.end(), i) == 1);
                REQUIRE(std::count(ex.begin(), ex.end(), j) == 1);
            }
}

TEST_CASE("basic shapes")
{
    auto h = build_shape(ShapeSpec::horn(2, 1));
    CHECK(h.sub.sset->counts() == std::vector<int>{3, 2});
    auto g = build_shape(ShapeSpec::genhorn(3, {0, 2}));
    CHECK(g.sub.sset->counts() == std::vector<int>{4, 5, 2});
    auto j = build_shape(ShapeSpec::jtrunc(4));
    CHECK(j.sub.sset->counts() == std::vector<int>{2, 2, 2, 2, 2});
    CHECK(j.inclusion.defect().empty());
    CHECK(build_shape(ShapeSpec::boundary(3)).sub.sset->counts() == std::vector<int>{4, 6, 4});
    CHECK(build_shape(ShapeSpec::spine1(4)).sub.sset->counts() == std::vector<int>{5, 4});
    CHECK_THROWS_AS(build_shape(ShapeSpec::genhorn(3, {0, 1, 2, 3})), InvalidArgument);
    CHECK_THROWS_AS(build_shape(ShapeSpec::horn(2, 3)), InvalidArgument);
}

TEST_CASE("generalized horns are unions of their listed faces")
{
    for (int n = 1; n <= 6; ++n) {
        const std::uint32_t full = (1u << (n + 1)) - 1;
        for (std::uint32_t present = 1; present < full; ++present) {
            std::vector<int> missing;
            for (int k = 0; k <= n; ++k)
                if (!(present >> k & 1u)) missing.push_back(k);
            auto s = build_shape(ShapeSpec::genhorn(n, missing));
            REQUIRE(s.inclusion.defect().empty());
            REQUIRE(s.inclusion.is_inclusion());
            REQUIRE(is_subcomplex(*s.ambient.sset, image_cells(s.inclusion)));
            // oracle: a vertex subset T lies in the union iff some present m is outside T
            std::set<std::uint32_t> expect, got;
            for (std::uint32_t t = 1; t <= full; ++t)
                if (present & ~t) expect.insert(t);
            for (const Cell& c : s.sub.sset->cells()) got.insert(mask_of(c.label));
            REQUIRE(expect == got);
        }
    }
}

TEST_CASE("cone on inner horns gives the 0,j horns")
{
    auto pt = delta(0);
    CHECK(iso_check(*join(pt, build_shape(ShapeSpec::horn(2, 1)).sub.sset).sset(),
                    *build_shape(ShapeSpec::genhorn(3, {0, 2})).sub.sset)
              .has_value());
    for (int n = 3; n <= 6; ++n)
        for (int j = 2; j < n; ++j) {
            auto cone = join(pt, build_shape(ShapeSpec::horn(n - 1, j - 1)).sub.sset);
            auto target = build_shape(ShapeSpec::genhorn(n, {0, j})).sub.sset;
            REQUIRE(iso_check(*cone.sset(), *target).has_value());
        }
    CHECK_FALSE(iso_check(*build_shape(ShapeSpec::genhorn(3, {0, 2})).sub.sset,
                          *build_shape(ShapeSpec::genhorn(3, {1, 3})).sub.sset)
                     .has_value());
}

TEST_CASE("join face arithmetic on simplices")
{
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k + n <= 5; ++k) {
            auto j = join(delta(n), delta(k));
            auto d = delta(n + k + 1);
            auto iso = iso_check(*j.sset(), *d);
            REQUIRE(iso.has_value());
            for (int c = 0; c < j.sset()->size(); ++c) {
                const auto& s = j.m.concrete[static_cast<std::size_t>(c)];
                std::uint32_t expect = 0;
                if (s.a.cell >= 0) expect |= mask_of(delta(n)->cell(s.a.cell).label);
                if (s.b.cell >= 0) expect |= mask_of(delta(k)->cell(s.b.cell).label) << (n + 1);
                REQUIRE(mask_of(d->cell((*iso)[static_cast<std::size_t>(c)]).label) == expect);
            }
        }
}

TEST_CASE("iso-horn shapes")
{
    auto v = build_shape(ShapeSpec::isohorn(2, 1, 4));
    CHECK(v.inclusion.defect().empty());
    // faces d_0 (isoplex on {1,2}) and d_2 (the edge 0-1)
    CHECK(v.sub.sset->count(0) == 3);
    CHECK(v.sub.sset->count(1) == 3);
    CHECK(v.sub.sset->count(4) == 2);
    auto staged = build_shape(ShapeSpec::isohorn(2, 1, 5, 2));
    CHECK(staged.ambient.index.count(isohorn_path(2, 1, 2)) == 1);
    CHECK(staged.ambient.index.count({0, 2, 1}) == 1);
    CHECK(staged.ambient.index.count({0, 2, 1, 2, 1, 2}) == 0);
    CHECK(isohorn_path(3, 1, 2) == Word{0, 1, 2, 1, 2, 1, 3});
    CHECK_THROWS_AS(build_shape(ShapeSpec::isohorn(2, 1, 3, 3)), InvalidArgument);
}

TEST_CASE("shape spec json round trip")
{
    const std::vector<ShapeSpec> specs = {
        ShapeSpec::delta(3),          ShapeSpec::genhorn(4, {1, 3, 4}),
        ShapeSpec::horn(3, 1),        ShapeSpec::spine(triangulation_with_extremes(4, 1, 3)),
        ShapeSpec::isohorn(2, 1, 5, 2), ShapeSpec::edgewise_a(2, 1),
        ShapeSpec::jtrunc(3),         ShapeSpec::complex(3, {{0, 1}, {1, 2, 3}}),
    };
    for (const auto& s : specs) {
        auto back = ShapeSpec::from_json(s.to_json());
        CHECK(back.to_json() == s.to_json());
    }
    CHECK(ShapeSpec::from_json(nlohmann::json::parse(R"({"shape":"genhorn","n":4,"missing":[1,3]})")).missing ==
          std::vector<int>{1, 3});
}
