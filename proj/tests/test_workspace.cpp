#include <catch2/catch_amalgamated.hpp>

#include "czint/commands.hpp"

using namespace czint;

namespace {

json base_workspace() {
    return json::parse(R"({
      "schema_version": 1,
      "orbits": [
        {"name": "e1", "period": {"num": 1, "den": 1}, "kind": "elliptic",
         "theta": {"num": 5, "den": 7}},
        {"name": "b",  "period": 1, "kind": "elliptic", "theta": {"num": 6, "den": 5}},
        {"name": "h1", "period": 2, "kind": "even_hyperbolic", "alpha0": 1},
        {"name": "o1", "period": 1, "kind": "odd_hyperbolic", "alpha0": 0}
      ],
      "curves": [
        {"name": "page", "c1_rel": 0,
         "components": [{"genus": 0, "punctures": [
            {"orbit": "b", "mult": 1, "windings": [1]}]}],
         "witness": {"wind_pi": 0, "orbit_intersections": {"b": 0}}},
        {"name": "u",
         "components": [{"genus": 0, "punctures": [
            {"orbit": "h1", "mult": 2, "windings": [2]}]}],
         "witness": {"orbit_intersections": {"h1": 0},
                     "curve_intersections": {"v": 0}}},
        {"name": "v",
         "components": [{"genus": 0, "punctures": [
            {"orbit": "h1", "mult": 1, "windings": [1]}]}],
         "witness": {"orbit_intersections": {"h1": 0}}},
        {"name": "dbl",
         "components": [{"genus": 0, "punctures": [
            {"orbit": "b", "mult": 6, "windings": [7]}]}]},
        {"name": "top1",
         "components": [{"genus": 0, "punctures": [
            {"orbit": "h1", "mult": 1, "windings": [1]},
            {"orbit": "o1", "mult": -1, "windings": [-1]}]}],
         "witness": {"orbit_intersections": {"h1": 0, "o1": 0}}},
        {"name": "bot1",
         "components": [{"genus": 0, "punctures": [
            {"orbit": "o1", "mult": 1, "windings": [0]}]}],
         "witness": {"orbit_intersections": {"o1": 0}}}
      ],
      "relative_intersections": [{"a": "u", "b": "v", "rin": -2}],
      "pairs": [
        {"a": {"curve": "u", "puncture": 0},
         "b": {"curve": "v", "puncture": 0},
         "relative_windings": [2, 2]}
      ],
      "openbooks": [{"name": "ob1", "bindings": ["b"], "page": "page"}],
      "oracle_scenarios": [
        {"name": "ell3", "model": "elliptic", "theta": {"num": 3, "den": 10},
         "modes": 48, "window": 30.0, "covers": [2]}
      ]
    })");
}

} // namespace

TEST_CASE("workspace parses and cross-references resolve") {
    Workspace ws = parse_workspace_json(base_workspace());
    CHECK(ws.orbits.size() == 4);
    CHECK(ws.curves.size() == 6);
    REQUIRE(ws.find_orbit("e1"));
    CHECK(ws.find_orbit("e1")->is_elliptic());
    REQUIRE(ws.find_curve("page"));
    CHECK(fredholm_index(*ws.find_curve("page")) == 2);
    CHECK(ws.find_openbook("ob1"));
    CHECK(ws.find_scenario("ell3"));
    CurvePairWitness pw = ws.pair_witness("u", "v");
    CHECK(pw.int_uv == 0);
    REQUIRE(pw.declared_rin.has_value());
    CHECK(*pw.declared_rin == -2);
    CHECK(pw.pair_profiles.count({0, 0}) == 1);
}

TEST_CASE("guard and reference diagnostics") {
    json bad_mult = base_workspace();
    bad_mult["curves"][1]["components"][0]["punctures"][0] = {
        {"orbit", "e1"}, {"mult", 7}, {"windings", {0}}};
    try {
        parse_workspace_json(bad_mult);
        FAIL("expected GuardError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::guard_error);
        CHECK(std::string(e.what()).find("/curves/1/components/0/punctures/0") !=
              std::string::npos);
    }

    json dangling = base_workspace();
    dangling["curves"][1]["components"][0]["punctures"][0]["orbit"] = "ghost";
    try {
        parse_workspace_json(dangling);
        FAIL("expected ReferenceError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::reference_error);
    }

    json floaty = base_workspace();
    floaty["orbits"][0]["theta"] = 0.714285;
    try {
        parse_workspace_json(floaty);
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::schema_error);
        CHECK(std::string(e.what()).find("float") != std::string::npos);
    }

    json vstring = base_workspace();
    vstring["schema_version"] = 99;
    CHECK_THROWS_AS(parse_workspace_json(vstring), Error);
}

TEST_CASE("invariants command") {
    Workspace ws = parse_workspace_json(base_workspace());
    Command cmd{"invariants", {{"orbit", "e1"}, {"cover", "4"}}, {}};
    Report rep = run(cmd, ws);
    REQUIRE(rep.items.size() == 1);
    const json& item = rep.items[0];
    CHECK(item.at("alpha") == 2);
    CHECK(item.at("parity") == 1);
    CHECK(item.at("mu") == 5);
    CHECK(item.at("sigma_bar") == 2);
    CHECK(item.at("rot") == "5/7");
    CHECK(rep.exit_code() == 0);
}

TEST_CASE("gin command routes agree") {
    Workspace ws = parse_workspace_json(base_workspace());
    Report cyl = run(Command{"gin", {{"a", "u"}, {"b", "v"}, {"mode", "cylindrical"}}, {}}, ws);
    CHECK(cyl.items[0].at("gin").at("total") == 0);
    CHECK(cyl.exit_code() == 0);

    Report wit = run(Command{"gin", {{"a", "u"}, {"b", "v"}, {"mode", "witness"}}, {}}, ws);
    CHECK(wit.items[0].at("gin") == 0);

    Report rin = run(Command{"gin", {{"a", "u"}, {"b", "v"}, {"mode", "rin"}}, {}}, ws);
    CHECK(rin.items[0].at("rin") == -2);
    CHECK(rin.items[0].at("omega") == 2);
    CHECK(rin.items[0].at("gin") == 0);
}

TEST_CASE("adjunction, check, concat, and openbook commands") {
    Workspace ws = parse_workspace_json(base_workspace());

    Report adj = run(Command{"adjunction", {{"curve", "page"}}, {}}, ws);
    CHECK(adj.items[0].at("defect") == 0);
    CHECK(adj.items[0].at("index") == 2);

    Report sz = run(Command{"check", {{"theorem", "sgin-zero"}, {"curve", "page"}}, {}}, ws);
    CHECK(sz.items[0].at("value") == true);

    Report wp = run(Command{"check", {{"theorem", "windpi"}, {"curve", "page"}}, {}}, ws);
    CHECK(wp.items[0].at("wind_pi") == 0);

    Report cc = run(Command{"concat",
                            {{"u1", "top1"}, {"u2", "bot1"}, {"v1", "top1"}, {"v2", "bot1"}},
                            {}},
                    ws);
    CHECK(cc.items[0].at("defect") == 1);
    CHECK(cc.items[0].at("strict_expected") == true);

    Report ob = run(Command{"openbook", {{"curve", "dbl"}, {"openbook", "ob1"}}, {}}, ws);
    CHECK(ob.items[0].at("alternative") == 2);
    CHECK(ob.items[0].at("gin_with_page") == 1); // floor(6/5)
    CHECK(ob.items[0].at("rotation") == "1/5");
}

TEST_CASE("oracle command") {
    Workspace ws = parse_workspace_json(base_workspace());
    Report rep = run(Command{"oracle", {{"scenario", "ell3"}}, {}}, ws);
    CHECK(rep.exit_code() == 0);
    CHECK(rep.items[0].at("laws").at("ok") == true);
    CHECK(rep.items[0].at("alpha") == 0);
    CHECK(rep.items[0].at("parity") == 1);
    CHECK(rep.items[0].at("covers")[0].at("alpha") == 0); // floor(2 * 3/10)

    Report builtin = run(Command{"oracle",
                                 {{"scenario", "elliptic"},
                                  {"theta", "3/10"},
                                  {"modes", "32"}},
                                 {}},
                         Workspace{});
    CHECK(builtin.exit_code() == 0);
    CHECK(builtin.items[0].at("alpha") == 0);
}

TEST_CASE("reports are deterministic and round-trip") {
    Workspace ws = parse_workspace_json(base_workspace());
    Command cmd{"gin", {{"a", "u"}, {"b", "v"}, {"mode", "cylindrical"}}, {}};
    Report r1 = run(cmd, ws);
    Report r2 = run(cmd, ws);
    CHECK(r1.to_json().dump(2) == r2.to_json().dump(2));

    Report back = Report::from_json(r1.to_json());
    CHECK(back == r1);
}
