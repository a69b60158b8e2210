#pragma once

#include <set>

#include "czint/selftest.hpp"
#include "czint/workspace.hpp"

namespace czint {

// Command dispatch shared by the CLI and the tests.  Every command produces a
// Report whose JSON body is canonical (object keys sorted by the JSON
// library), so identical inputs yield byte-identical output.

struct Command {
    std::string name;
    std::map<std::string, std::string> opts;
    std::set<std::string> flags;

    const std::string& opt(const std::string& key) const {
        auto it = opts.find(key);
        if (it == opts.end())
            fail(Errc::invalid_argument, "command '" + name + "' needs --" + key);
        return it->second;
    }
    std::string opt_or(const std::string& key, const std::string& fallback) const {
        auto it = opts.find(key);
        return it == opts.end() ? fallback : it->second;
    }
    bool flag(const std::string& key) const { return flags.count(key) > 0; }
};

struct Report {
    std::string command;
    json items = json::array();
    std::vector<std::string> violations;

    int exit_code() const { return violations.empty() ? 0 : 1; }

    json to_json() const {
        return json{{"command", command}, {"items", items}, {"violations", violations}};
    }
    static Report from_json(const json& j) {
        Report r;
        r.command = j.at("command").get<std::string>();
        r.items = j.at("items");
        r.violations = j.at("violations").get<std::vector<std::string>>();
        return r;
    }
    friend bool operator==(const Report& a, const Report& b) {
        return a.to_json() == b.to_json();
    }
};

namespace cmd_detail {

inline long long to_ll(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(Errc::invalid_argument, "expected an integer for " + what + ", got '" + s + "'");
    }
}

inline Rational to_rational(const std::string& s, const std::string& what) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(to_ll(s, what));
    return Rational(to_ll(s.substr(0, slash), what), to_ll(s.substr(slash + 1), what));
}

inline const CurveData& need_curve(const Workspace& ws, const std::string& name) {
    const CurveData* c = ws.find_curve(name);
    if (!c) fail(Errc::reference_error, "unknown curve '" + name + "'");
    return *c;
}

inline const SimpleOrbit& need_orbit(const Workspace& ws, const std::string& name) {
    const SimpleOrbit* o = ws.find_orbit(name);
    if (!o) fail(Errc::reference_error, "unknown orbit '" + name + "'");
    return *o;
}

inline json breakdown_json(const GinBreakdown& b) {
    json terms = json::array();
    for (const auto& t : b.terms) terms.push_back({{"term", t.label}, {"value", t.value}});
    return json{{"total", b.total}, {"terms", terms}};
}

inline json verdict_json(const CheckVerdict& v) {
    json sets = json::array();
    for (const auto& s : v.sets) {
        json clauses = json::array();
        for (const auto& c : s.clauses) {
            json jc{{"clause", c.clause}, {"satisfied", c.satisfied}};
            if (!c.detail.empty()) jc["detail"] = c.detail;
            clauses.push_back(jc);
        }
        sets.push_back({{"set", s.name}, {"value", s.value}, {"clauses", clauses}});
    }
    return json{{"checker", v.checker}, {"value", v.value}, {"sets", sets}};
}

inline json law_json(const LawReport& r) {
    return json{{"ok", r.ok}, {"checked", r.checked}, {"violations", r.violations}};
}

inline void run_invariants(const Command& cmd, const Workspace& ws, Report& rep) {
    const SimpleOrbit& orbit = need_orbit(ws, cmd.opt("orbit"));
    long long k = to_ll(cmd.opt_or("cover", "1"), "--cover");
    json item{{"orbit", orbit.name},
              {"cover", k},
              {"alpha", alpha_iter(orbit, k)},
              {"parity", parity_iter(orbit, k)},
              {"mu", cz_index(orbit, k)},
              {"sigma_bar", spectral_covering(orbit, k)}};
    if (orbit.is_elliptic()) item["rot"] = rotation_index(orbit).str();
    rep.items.push_back(item);
}

inline void run_gin(const Command& cmd, const Workspace& ws, Report& rep) {
    const CurveData& u = need_curve(ws, cmd.opt("a"));
    std::string mode = cmd.opt_or("mode", "cylindrical");
    if (cmd.flag("self")) {
        GinBreakdown b = self_gin_cylindrical(u);
        rep.items.push_back({{"a", u.name}, {"b", u.name}, {"mode", "cylindrical"},
                             {"gin", breakdown_json(b)}});
        return;
    }
    const CurveData& v = need_curve(ws, cmd.opt("b"));
    if (mode == "cylindrical") {
        GinBreakdown b = gin_cylindrical(u, v);
        long long reverse = gin_cylindrical(v, u).total;
        if (reverse != b.total) {
            rep.violations.push_back("gin(" + u.name + "," + v.name + ") = " +
                                     std::to_string(b.total) + " but reversed order gives " +
                                     std::to_string(reverse));
        }
        rep.items.push_back(
            {{"a", u.name}, {"b", v.name}, {"mode", mode}, {"gin", breakdown_json(b)}});
    } else if (mode == "witness") {
        CurvePairWitness pw = ws.pair_witness(u.name, v.name);
        long long g = gin_from_witness(u, v, pw);
        rep.items.push_back({{"a", u.name},
                             {"b", v.name},
                             {"mode", mode},
                             {"gin", g},
                             {"int", pw.int_uv},
                             {"delta_infty", delta_infty_pair(u, v, pw)}});
    } else if (mode == "rin") {
        CurvePairWitness pw = ws.pair_witness(u.name, v.name);
        if (!pw.declared_rin)
            fail(Errc::missing_witness,
                 "no relative intersection number declared for " + u.name + ", " + v.name);
        long long omega = omega_term(u, v);
        rep.items.push_back({{"a", u.name},
                             {"b", v.name},
                             {"mode", mode},
                             {"rin", *pw.declared_rin},
                             {"omega", omega},
                             {"gin", *pw.declared_rin + omega}});
    } else {
        fail(Errc::invalid_argument, "unknown gin mode '" + mode + "'");
    }
}

inline void run_adjunction(const Command& cmd, const Workspace& ws, Report& rep) {
    const CurveData& u = need_curve(ws, cmd.opt("curve"));
    AdjunctionReport a = adjunction_defect(u);
    json item{{"curve", u.name},     {"defect", a.defect},       {"gin_self", a.gin_self},
              {"mu", a.mu},          {"index", a.index},         {"chi", a.chi},
              {"sigma_bar", a.sigma_bar}, {"n_odd", a.n_odd}};
    if (a.sing_twice) item["two_sing"] = *a.sing_twice;
    rep.items.push_back(item);
}

inline void run_check(const Command& cmd, const Workspace& ws, Report& rep) {
    std::string theorem = cmd.opt("theorem");
    if (theorem == "gin-zero" || theorem == "no-isect") {
        const CurveData& u = need_curve(ws, cmd.opt("a"));
        const CurveData& v = need_curve(ws, cmd.opt("b"));
        CheckVerdict verdict =
            theorem == "gin-zero" ? check_gin_zero(u, v) : check_no_isect(u, v);
        rep.items.push_back(verdict_json(verdict));
    } else if (theorem == "sgin-zero" || theorem == "embedded-projection") {
        const CurveData& u = need_curve(ws, cmd.opt("curve"));
        CheckVerdict verdict =
            theorem == "sgin-zero" ? check_sgin_zero(u) : check_embedded_projection(u);
        rep.items.push_back(verdict_json(verdict));
    } else if (theorem == "windpi") {
        const CurveData& u = need_curve(ws, cmd.opt("curve"));
        WindPiReport w = windpi_consistency(u);
        json item{{"curve", u.name},   {"wind_pi", w.wind_pi}, {"d0", w.d0_sum},
                  {"index", w.index},  {"chi", w.chi},         {"n_even", w.n_even}};
        if (w.sing_twice) item["two_sing"] = *w.sing_twice;
        rep.items.push_back(item);
    } else if (theorem == "same-direction") {
        const CurveData& u = need_curve(ws, cmd.opt("a"));
        const CurveData& v = need_curve(ws, cmd.opt("b"));
        std::size_t ia = (std::size_t)to_ll(cmd.opt("end-a"), "--end-a");
        std::size_t ib = (std::size_t)to_ll(cmd.opt("end-b"), "--end-b");
        CurvePairWitness pw = ws.pair_witness(u.name, v.name);
        auto it = pw.pair_profiles.find({ia, ib});
        if (it == pw.pair_profiles.end())
            fail(Errc::missing_witness, "no pair profile for the named ends");
        DirectionVerdict d =
            same_direction_positivity(u, v, it->second, cmd.flag("same-direction"), &pw);
        json item{{"eligible", d.eligible},
                  {"concluded_positive", d.concluded_positive},
                  {"pair_index", d.pair_index}};
        if (d.gin) item["gin"] = *d.gin;
        rep.items.push_back(item);
    } else {
        fail(Errc::invalid_argument, "unknown theorem '" + theorem + "'");
    }
}

inline void run_concat(const Command& cmd, const Workspace& ws, Report& rep) {
    const CurveData& u1 = need_curve(ws, cmd.opt("u1"));
    const CurveData& u2 = need_curve(ws, cmd.opt("u2"));
    const CurveData& v1 = need_curve(ws, cmd.opt("v1"));
    const CurveData& v2 = need_curve(ws, cmd.opt("v2"));
    ConcatReport c = concat_gin(u1, u2, v1, v2);
    json breakings = json::array();
    for (const auto& b : c.breakings_u)
        breakings.push_back({{"building", "u"}, {"orbit", b.orbit.name}, {"cover", b.cover}});
    for (const auto& b : c.breakings_v)
        breakings.push_back({{"building", "v"}, {"orbit", b.orbit.name}, {"cover", b.cover}});
    rep.items.push_back({{"defect", c.defect},
                         {"strict_expected", c.strict_expected},
                         {"breakings", breakings}});
}

inline void run_openbook(const Command& cmd, const Workspace& ws, Report& rep) {
    const CurveData& u = need_curve(ws, cmd.opt("curve"));
    const OpenBookData* ob = ws.find_openbook(cmd.opt("openbook"));
    if (!ob) fail(Errc::reference_error, "unknown open book '" + cmd.opt("openbook") + "'");
    OpenBookVerdict v = openbook_analyze(u, *ob);
    json item{{"alternative", v.alternative}, {"witness_orbit", v.witness_orbit},
              {"witness_mult", v.witness_mult}};
    if (v.alternative == 2) {
        item["gin_with_page"] = v.gin_with_page;
        item["rotation"] = v.rotation.str();
        item["rotation_bound_holds"] = v.rotation_bound_holds;
    }
    rep.items.push_back(item);
}

inline void run_oracle(const Command& cmd, const Workspace& ws, Report& rep) {
    OracleScenario sc;
    std::string name = cmd.opt_or("scenario", "");
    if (const OracleScenario* found = name.empty() ? nullptr : ws.find_scenario(name)) {
        sc = *found;
    } else if (name == "elliptic") {
        sc.name = name;
        sc.op = spectral_models::elliptic(
            to_rational(cmd.opt("theta"), "--theta").to_double());
    } else if (name == "even-hyperbolic") {
        sc.name = name;
        sc.op = spectral_models::even_hyperbolic(std::stod(cmd.opt_or("a", "1.0")),
                                                 to_ll(cmd.opt_or("alpha0", "0"), "--alpha0"));
    } else if (name == "odd-hyperbolic") {
        sc.name = name;
        sc.op = spectral_models::odd_hyperbolic(std::stod(cmd.opt_or("a", "4.0")),
                                                to_ll(cmd.opt_or("alpha0", "0"), "--alpha0"));
    } else {
        fail(Errc::reference_error, "unknown oracle scenario '" + name + "'");
    }
    if (cmd.opts.count("modes")) sc.modes = (int)to_ll(cmd.opt("modes"), "--modes");
    if (cmd.opts.count("window")) sc.window = std::stod(cmd.opt("window"));
    if (cmd.opts.count("tolerance")) sc.tolerance = std::stod(cmd.opt("tolerance"));
    if (cmd.opts.count("cover")) sc.covers = {to_ll(cmd.opt("cover"), "--cover")};

    LawReport laws = verify_spectrum_laws(sc.op, sc.modes, sc.window);
    json item{{"scenario", sc.name}, {"modes", sc.modes}, {"window", sc.window},
              {"laws", law_json(laws)}};
    if (!laws.ok)
        for (const auto& v : laws.violations) rep.violations.push_back(v);
    auto [alpha, parity] = alpha_parity_numeric(sc.op, sc.modes);
    item["alpha"] = alpha;
    item["parity"] = parity;
    json covers = json::array();
    for (long long k : sc.covers) {
        LawReport cl = verify_cover_law(sc.op, k, sc.modes, sc.window / 4.0, sc.tolerance);
        if (!cl.ok)
            for (const auto& v : cl.violations) rep.violations.push_back(v);
        LoopOperator cov = sc.op.cover(k);
        int modes = std::max(sc.modes, 2 * cov.fourier_order() + 16);
        auto [ak, pk] = alpha_parity_numeric(cov, modes);
        covers.push_back(
            {{"cover", k}, {"laws", law_json(cl)}, {"alpha", ak}, {"parity", pk}});
    }
    item["covers"] = covers;
    rep.items.push_back(item);
}

inline void run_selftest(const Command& cmd, Report& rep) {
    auto results = selftest::run_all(cmd.flag("fast"));
    for (const auto& r : results) {
        rep.items.push_back({{"id", r.id},
                             {"criterion", r.name},
                             {"passed", r.passed},
                             {"detail", r.detail},
                             {"seconds", r.seconds}});
        if (!r.passed)
            rep.violations.push_back("criterion " + std::to_string(r.id) + " (" + r.name +
                                     ") failed: " + r.detail);
    }
}

} // namespace cmd_detail

inline Report run(const Command& cmd, const Workspace& ws) {
    using namespace cmd_detail;
    Report rep;
    rep.command = cmd.name;
    for (const auto& [k, v] : cmd.opts) rep.command += " --" + k + " " + v;
    for (const auto& f : cmd.flags) rep.command += " --" + f;

    if (cmd.name == "invariants") run_invariants(cmd, ws, rep);
    else if (cmd.name == "gin") run_gin(cmd, ws, rep);
    else if (cmd.name == "adjunction") run_adjunction(cmd, ws, rep);
    else if (cmd.name == "check") run_check(cmd, ws, rep);
    else if (cmd.name == "concat") run_concat(cmd, ws, rep);
    else if (cmd.name == "openbook") run_openbook(cmd, ws, rep);
    else if (cmd.name == "oracle") run_oracle(cmd, ws, rep);
    else if (cmd.name == "selftest") run_selftest(cmd, rep);
    else fail(Errc::invalid_argument, "unknown command '" + cmd.name + "'");
    return rep;
}

} // namespace czint
