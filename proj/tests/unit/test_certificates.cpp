#include <doctest.h>

#include "q2seg/certificates.hpp"
#include "q2seg/error.hpp"

using namespace q2seg;

namespace {

const PushoutStep& pushout(const Certificate& c, std::size_t k) { return std::get<PushoutStep>(c.steps.at(k)); }

std::vector<int> delta_counts(int n)
{
    std::vector<int> out;
    for (int d = 0; d <= n; ++d) {
        long long b = 1;
        for (int t = 1; t <= d + 1; ++t) b = b * (n + 1 - (d + 1) + t) / t;
        out.push_back(static_cast<int>(b));
    }
    return out;
}

}  // namespace

TEST_CASE("generalized horn with three missing faces takes two pushouts")
{
    const auto c = certify_anodyne(ShapeSpec::genhorn(4, {1, 3, 4}));
    REQUIRE(c.steps.size() == 2);
    CHECK(pushout(c, 0).generator == GeneralizedHorn::from_missing(3, {1, 3}));
    CHECK(pushout(c, 1).generator == GeneralizedHorn::from_missing(4, {1, 4}));
    const auto r = verify_certificate(c);
    CHECK(r.accepted);
    CHECK(r.replayed_counts == delta_counts(4));
}

TEST_CASE("a spine of the square is one 2-Segal horn")
{
    const auto t = make_triangulation(3, {{0, 1, 2}, {0, 2, 3}});
    const auto c = certify_anodyne(ShapeSpec::spine(t));
    REQUIRE(c.steps.size() == 1);
    CHECK(pushout(c, 0).generator == GeneralizedHorn::from_missing(3, {0, 2}));
    CHECK(verify_certificate(c).accepted);
}

TEST_CASE("iso-horn stages glue Lambda^{i,i+2l}")
{
    const auto c = certify_anodyne(ShapeSpec::isohorn(2, 1, 5));
    CHECK(c.claim.stages == 2);
    REQUIRE(c.steps.size() == 2);
    CHECK(pushout(c, 0).generator == GeneralizedHorn::from_missing(3, {1, 3}));
    CHECK(pushout(c, 1).generator == GeneralizedHorn::from_missing(5, {1, 5}));
    CHECK(verify_certificate(c).accepted);
    CHECK_THROWS_AS(certify_anodyne(ShapeSpec::isohorn(2, 1, 4, 2)), InvalidArgument);
}

TEST_CASE("certificates round-trip for every small generalized 2-Segal horn and spine")
{
    for (int n = 3; n <= 5; ++n) {
        const std::uint32_t full = (1u << (n + 1)) - 1;
        for (std::uint32_t present = 1; present < full; ++present) {
            if (!is_broken(present, n)) continue;
            const auto h = GeneralizedHorn{n, present};
            const auto c = certify_anodyne(ShapeSpec::genhorn(n, h.missing()));
            const auto r = verify_certificate(c);
            CHECK_MESSAGE(r.accepted, h.name() << ": " << r.reason);
            for (std::size_t k = 0; k < c.steps.size(); ++k) CHECK(pushout(c, k).generator.is_two_segal());
        }
    }
    for (int n = 3; n <= 6; ++n)
        for (const auto& t : enumerate_triangulations(n)) {
            const auto r = verify_certificate(certify_anodyne(ShapeSpec::spine(t)));
            CHECK_MESSAGE(r.accepted, triangulation_name(t) << ": " << r.reason);
            CHECK(r.replayed_counts == delta_counts(n));
        }
}

TEST_CASE("certify rejects a horn whose faces are not broken")
{
    CHECK_THROWS_AS(certify_anodyne(ShapeSpec::genhorn(4, {0, 1, 2})), InvalidArgument);
    CHECK_THROWS_AS(certify_anodyne(ShapeSpec::delta(3)), InvalidArgument);
}

TEST_CASE("verification rejects adjacent generators and corrupted attaching maps")
{
    Certificate bad{ShapeSpec::genhorn(3, {1, 2}), {}};
    bad.steps.emplace_back(PushoutStep{GeneralizedHorn::from_missing(3, {1, 2}), {}});
    const auto r = verify_certificate(bad);
    CHECK_FALSE(r.accepted);
    CHECK(r.failed_step == 0);
    CHECK(r.reason.find("generator not 2-Segal") != std::string::npos);

    auto c = certify_anodyne(ShapeSpec::genhorn(4, {1, 3, 4}));
    auto& step = std::get<PushoutStep>(c.steps[1]);
    // send vertex 0 of the generator to vertex 1
    REQUIRE(step.attach[0].dim == 0);
    step.attach[0].cell = step.attach[1].cell;
    const auto rc = verify_certificate(c);
    CHECK_FALSE(rc.accepted);
    CHECK(rc.failed_step == 1);
    CHECK(rc.reason.find("face mismatch") != std::string::npos);
}

TEST_CASE("a certificate that glues the wrong simplex fails the final comparison")
{
    // both steps valid as pushouts, but the result has an extra 3-simplex
    auto c = certify_anodyne(ShapeSpec::genhorn(4, {1, 3, 4}));
    c.steps.push_back(c.steps[0]);
    const auto r = verify_certificate(c);
    CHECK_FALSE(r.accepted);
    CHECK(r.reason.find("not isomorphic") != std::string::npos);
}

TEST_CASE("certificate JSON round-trips byte for byte")
{
    const auto c = certify_anodyne(ShapeSpec::isohorn(3, 0, 6));
    const auto j = c.to_json();
    CHECK(j.at("schema") == "cert/1");
    const auto back = Certificate::from_json(j);
    CHECK(back.to_json().dump() == j.dump());
    CHECK(verify_certificate(back).accepted);
    CHECK_THROWS_AS(Certificate::from_json(nlohmann::json{{"schema", "cert/9"}}), InvalidArgument);
}

TEST_CASE("edgewise section formulas")
{
    const auto w = retract_edgewise(3, 2, 0);
    CHECK(w.f == std::vector<int>{1, 3, 4, 5});
    CHECK(w.p == std::vector<int>{0, 0, 0, 1, 2, 3});
    CHECK(w.ok());
    CHECK(retract_edgewise(3, 2, 1).ok());
    CHECK_THROWS_AS(retract_edgewise(2, 2, 0), InvalidArgument);
}

TEST_CASE("pushout-product section formulas")
{
    const auto w = retract_pushout_product(4, 2, 0);
    const std::vector<std::string> expect{"(0,0)", "(1,1)", "(2,2)", "(3,3)", "(3,4)"};
    for (int l = 0; l <= 4; ++l) CHECK(w.letters[static_cast<std::size_t>(w.f[static_cast<std::size_t>(l)])] == expect[static_cast<std::size_t>(l)]);
    CHECK(w.check.ok());
    CHECK(retract_pushout_product(4, 2, 1).check.ok());
}

TEST_CASE("inner 2-Segal horn retracts from a chain through Delta[n+1]")
{
    const auto w = retract_via_outer(1, 3, 5);
    CHECK(w.check.ok());
    REQUIRE(w.middle_report);
    CHECK(w.middle_report->accepted);
    CHECK(w.outer_only);
    CHECK(w.p == std::vector<int>{0, 1, 2, 3, 4, 5, 5});

    // the chain's second horn is inner once i > 1
    CHECK_FALSE(retract_via_outer(2, 4, 6).outer_only);

    Certificate rc{w.claim, {}};
    rc.steps.emplace_back(RetractStep{std::make_shared<const Certificate>(*w.middle_certificate), w.f, w.p});
    CHECK(verify_certificate(rc).accepted);
    CHECK(Certificate::from_json(rc.to_json()).to_json() == rc.to_json());
    auto broken_p = w.p;
    broken_p.back() = 0;
    Certificate rc2{w.claim, {}};
    rc2.steps.emplace_back(RetractStep{std::make_shared<const Certificate>(*w.middle_certificate), w.f, broken_p});
    CHECK_FALSE(verify_certificate(rc2).accepted);
}

TEST_CASE("pushout-join of horns is a 2-Segal horn")
{
    const auto a = pushout_join_horn(1, 2, 1, 2);
    CHECK(a.missing == std::vector<int>{1, 4});
    CHECK(a.ok(1, 2, 1));
    const auto b = pushout_join_horn(0, 1, 1, 2);
    CHECK(b.missing == std::vector<int>{0, 3});
    CHECK(b.ok(0, 1, 1));
    CHECK_THROWS_AS(pushout_join_horn(0, 1, 2, 2), InvalidArgument);
}
