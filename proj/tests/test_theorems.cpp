#include <catch2/catch_amalgamated.hpp>

#include "czint/theorems.hpp"

using namespace czint;

namespace {

SimpleOrbit elliptic(long long p, long long q, const std::string& name) {
    return SimpleOrbit{name, Rational(1), Elliptic{Rational(p, q)}};
}
SimpleOrbit even_orbit(long long a0, const std::string& name) {
    return SimpleOrbit{name, Rational(1), EvenHyperbolic{a0}};
}
SimpleOrbit odd_orbit(long long a0, const std::string& name) {
    return SimpleOrbit{name, Rational(1), OddHyperbolic{a0}};
}

EndData make_end(SimpleOrbit orbit, long long m, std::vector<long long> w, bool holo = true) {
    return EndData(CoveredOrbit{std::move(orbit), m}, std::move(w), holo);
}

CurveData make_curve(const std::string& name, long long genus, std::vector<EndData> ends,
                     long long c1 = 0) {
    CurveData u;
    u.name = name;
    u.components.push_back({genus, std::move(ends)});
    u.c1_rel = c1;
    u.validate();
    return u;
}

GeometricWitness zero_witness(const CurveData& u) {
    GeometricWitness w;
    for (const auto* e : u.ends()) w.orbit_intersections[e->orbit().name] = 0;
    return w;
}

// Open book bound by a single elliptic binding of rotation theta = p/q.
OpenBookData disk_open_book(long long p, long long q) {
    SimpleOrbit b = elliptic(p, q, "binding");
    long long alpha = alpha_iter(b, 1);
    // the page index pins c1: ind = 2 c1 + mu(b) - 1 = 2
    long long c1 = (3 - cz_index(b, 1)) / 2;
    OpenBookData ob;
    ob.bindings = {b};
    ob.page = make_curve("page", 0, {make_end(b, 1, {alpha})}, c1);
    ob.validate();
    return ob;
}

} // namespace

TEST_CASE("gin-zero checker") {
    // two planes at distinct orbits, disjoint from each other's limits
    CurveData u = make_curve("u", 0, {make_end(even_orbit(0, "h1"), 1, {0})});
    u.witness = GeometricWitness{};
    u.witness->orbit_intersections = {{"h1", 0}, {"h2", 0}};
    CurveData v = make_curve("v", 0, {make_end(even_orbit(0, "h2"), 1, {0})});
    v.witness = u.witness;
    CheckVerdict verdict = check_gin_zero(u, v);
    CHECK(verdict.value);
    for (const auto& s : verdict.sets) CHECK(s.value);

    // mixed-sign pair at an elliptic orbit must fail through the even-orbit
    // clause; a crossing of the other positive limit balances the formula
    SimpleOrbit e = elliptic(5, 7, "e");
    SimpleOrbit top = even_orbit(0, "top");
    CurveData um = make_curve("u", 0, {make_end(top, 1, {0}), make_end(e, -1, {-1})});
    um.witness = zero_witness(um);
    CurveData vm = make_curve("v", 0, {make_end(e, 1, {0})});
    vm.witness = GeometricWitness{};
    vm.witness->orbit_intersections = {{"e", 0}, {"top", 1}};
    CheckVerdict mixed = check_gin_zero(um, vm);
    CHECK_FALSE(mixed.value);
    bool saw_even_clause = false;
    for (const auto& s : mixed.sets)
        for (const auto& c : s.clauses)
            if (!c.satisfied && c.clause.find("both even") != std::string::npos)
                saw_even_clause = true;
    CHECK(saw_even_clause);

    // sub-extremal end balanced by an intersection with the limit orbit:
    // realizable data, gin = 1 from either side, consistently false
    SimpleOrbit h = even_orbit(1, "h");
    CurveData ud = make_curve("u", 0, {make_end(h, 1, {0})});
    ud.witness = zero_witness(ud);
    CurveData vd = make_curve("v", 0, {make_end(h, 1, {1})});
    vd.witness = GeometricWitness{};
    vd.witness->orbit_intersections = {{"h", 1}};
    CHECK(gin_cylindrical(ud, vd).total == 1);
    CHECK_FALSE(check_gin_zero(ud, vd).value);
}

TEST_CASE("gin-zero checker rejects asymmetric data") {
    SimpleOrbit h = even_orbit(1, "h");
    CurveData u = make_curve("u", 0, {make_end(h, 1, {1})});
    u.witness = zero_witness(u);
    CurveData v = make_curve("v", 0, {make_end(h, 1, {0})});
    v.witness = zero_witness(v);
    // gin(u,v) = 0 but gin(v,u) = 1: not realizable by actual curves
    CHECK_THROWS_MATCHES(check_gin_zero(u, v), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("InconsistentWitness")));
}

TEST_CASE("no-isect checker") {
    SimpleOrbit h = even_orbit(1, "h");
    CurveData u = make_curve("u", 0, {make_end(h, 2, {2})});
    u.witness = zero_witness(u);
    CurveData v = make_curve("v", 0, {make_end(h, 1, {1})});
    v.witness = zero_witness(v);
    CheckVerdict ok = check_no_isect(u, v);
    CHECK(ok.value);

    GeometricWitness hit;
    hit.orbit_intersections = {{"h", 1}};
    CurveData u2 = u;
    u2.witness = hit;
    CHECK_FALSE(check_no_isect(u2, v).value);
}

TEST_CASE("sgin-zero checker") {
    // the open-book page: all four condition sets true
    OpenBookData ob = disk_open_book(6, 5);
    CurveData page = ob.page;
    page.witness = zero_witness(page);
    page.witness->wind_pi = 0;
    CheckVerdict verdict = check_sgin_zero(page);
    CHECK(verdict.value);
    CHECK(verdict.sets.size() == 4);
    for (const auto& s : verdict.sets) CHECK(s.value);
    CHECK(self_gin_cylindrical(page).total == 0);

    // plane with a sub-extremal end: consistently false
    CurveData u = make_curve("u", 0, {make_end(even_orbit(1, "h"), 1, {0})}, 1);
    u.witness = zero_witness(u);
    u.witness->wind_pi = 0;
    CHECK_FALSE(check_sgin_zero(u).value);

    // unrealizable data: gin formula says zero but sigma_bar = 2
    CurveData bad = make_curve("bad", 0, {make_end(even_orbit(1, "h"), 2, {2})}, -1);
    bad.witness = zero_witness(bad);
    bad.witness->wind_pi = 0;
    CHECK_THROWS_AS(check_sgin_zero(bad), Error);

    CurveData cover = page;
    cover.simple = false;
    CHECK_THROWS_AS(check_sgin_zero(cover), Error);
}

TEST_CASE("embedded-projection checker") {
    OpenBookData ob = disk_open_book(6, 5);
    CurveData page = ob.page;
    page.witness = zero_witness(page);
    page.witness->wind_pi = 0;
    CheckVerdict verdict = check_embedded_projection(page);
    CHECK(verdict.value);

    // two ends at one orbit with unequal winding ratios; wind_pi balances the
    // index identity, all sets agree on false
    SimpleOrbit h = even_orbit(1, "h");
    CurveData u = make_curve("u", 0, {make_end(h, 1, {1}), make_end(h, 1, {0})});
    u.witness = zero_witness(u);
    u.witness->wind_pi = 1;
    u.witness->pair_profiles[{0, 1}] =
        PairProfile(make_end(h, 1, {1}), make_end(h, 1, {0}), {1});
    CHECK_FALSE(check_embedded_projection(u).value);
}

TEST_CASE("direction of approach") {
    SimpleOrbit h = even_orbit(1, "h");
    CurveData u = make_curve("u", 0, {make_end(h, 2, {2})});
    CurveData v = make_curve("v", 0, {make_end(h, 2, {2})});
    PairProfile submax(make_end(h, 2, {2}), make_end(h, 2, {2}), {1, 2});
    CurvePairWitness pw;
    pw.int_uv = 0;
    pw.pair_profiles[{0, 0}] = submax;

    DirectionVerdict d = same_direction_positivity(u, v, submax, true, &pw);
    CHECK(d.eligible);
    CHECK(d.concluded_positive);
    CHECK(d.pair_index == 1);
    REQUIRE(d.gin.has_value());
    CHECK(*d.gin >= 1);

    PairProfile saturated(make_end(h, 2, {2}), make_end(h, 2, {2}), {2, 2});
    CHECK_THROWS_MATCHES(same_direction_positivity(u, v, saturated, true), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("ProfileContradictsFlag")));

    DirectionVerdict none = same_direction_positivity(u, v, saturated, false);
    CHECK(none.eligible);
    CHECK_FALSE(none.concluded_positive);

    // elliptic orbits are never eligible
    SimpleOrbit e = elliptic(5, 7, "e");
    PairProfile pe(make_end(e, 1, {0}), make_end(e, 1, {0}), {0});
    CHECK_THROWS_AS(same_direction_positivity(u, v, pe, true), Error);

    // odd hyperbolic orbits require even covers on both sides
    SimpleOrbit o = odd_orbit(0, "o");
    PairProfile po(make_end(o, 1, {0}), make_end(o, 1, {0}), {0});
    CHECK_THROWS_AS(same_direction_positivity(u, v, po, true), Error);
    PairProfile po2(make_end(o, 2, {1}), make_end(o, 2, {1}), {0, 1});
    CHECK(same_direction_positivity(u, v, po2, true).concluded_positive);
}

TEST_CASE("open book analysis") {
    OpenBookData ob = disk_open_book(5, 7);

    // positive puncture at a non-binding orbit: alternative (1)
    CurveData u1 = make_curve("u1", 0, {make_end(even_orbit(0, "stray"), 1, {0})});
    OpenBookVerdict v1 = openbook_analyze(u1, ob);
    CHECK(v1.alternative == 1);
    CHECK(v1.witness_orbit == "stray");

    // all limits binding covers, one double cover: alternative (2)
    SimpleOrbit b = ob.bindings.front();
    CurveData u2 = make_curve("u2", 0, {make_end(b, 2, {1})});
    OpenBookVerdict v2 = openbook_analyze(u2, ob);
    CHECK(v2.alternative == 2);
    CHECK(v2.gin_with_page == 1); // floor(10/7)
    CHECK(v2.witness_mult == 2);
    CHECK(v2.rotation == Rational(5, 7));
    CHECK(v2.rotation_bound_holds); // 2 > 7/5

    // simple binding limits only: contradiction with not being a page
    CurveData u3 = make_curve("u3", 0, {make_end(b, 1, {0})});
    CHECK_THROWS_MATCHES(openbook_analyze(u3, ob), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("InconsistentInput")));

    // degenerate open books are rejected up front
    OpenBookData bad = ob;
    bad.page.components.front().punctures.front() =
        make_end(b, 1, {alpha_iter(b, 1) - 1});
    CHECK_THROWS_AS(openbook_analyze(u2, bad), Error);
}

TEST_CASE("generalized curve positivity") {
    SimpleOrbit h = even_orbit(1, "h");
    CurveData u = make_curve("u", 0, {make_end(h, 2, {2})});
    u.flag = CurveFlag::generalized_holomorphic;
    u.witness = zero_witness(u);
    CurveData v = make_curve("v", 0, {make_end(h, 1, {1})});
    v.flag = CurveFlag::generalized_holomorphic;
    v.witness = zero_witness(v);

    GenHolVerdict ok = genhol_positivity(u, v);
    CHECK(ok.breakdown.total == 0);
    CHECK(ok.all_terms_nonnegative);

    GeometricWitness hit;
    hit.orbit_intersections = {{"h", 1}};
    CurveData u2 = u;
    u2.witness = hit;
    CHECK(genhol_positivity(u2, v).breakdown.total >= 1);

    CurveData smooth = u;
    smooth.flag = CurveFlag::smooth;
    CHECK_THROWS_AS(genhol_positivity(smooth, v), Error);

    // d0 < 0 never enters: rejected when the curve is built
    CurveData holder;
    holder.name = "neg";
    holder.flag = CurveFlag::generalized_holomorphic;
    holder.components.push_back(
        {0, {make_end(even_orbit(0, "h"), 1, {3}, false)}});
    CHECK_THROWS_AS(holder.validate(), Error);
}
