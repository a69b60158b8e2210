#pragma once

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "czint/spectral.hpp"
#include "czint/theorems.hpp"

namespace czint {

using json = nlohmann::json;

// Batch input: orbits, curves, cross-curve pair profiles, open books, and
// oracle scenarios, all cross-referenced by name.  Exact-arithmetic fields
// are encoded as integers or {num, den} objects; floats are rejected there
// and only allowed in oracle operator data.

struct OracleScenario {
    std::string name;
    LoopOperator op;
    int modes = 64;
    double window = 30.0;
    std::vector<long long> covers;
    double tolerance = 1e-6;
};

struct Workspace {
    long long horizon = kDefaultHorizon;
    std::vector<SimpleOrbit> orbits;
    std::vector<CurveData> curves;
    std::map<std::pair<std::string, std::string>, CurvePairWitness> pair_witnesses;
    std::vector<std::pair<std::string, OpenBookData>> openbooks;
    std::vector<OracleScenario> scenarios;

    const SimpleOrbit* find_orbit(const std::string& n) const {
        for (const auto& o : orbits)
            if (o.name == n) return &o;
        return nullptr;
    }
    const CurveData* find_curve(const std::string& n) const {
        for (const auto& c : curves)
            if (c.name == n) return &c;
        return nullptr;
    }
    const OpenBookData* find_openbook(const std::string& n) const {
        for (const auto& [name, ob] : openbooks)
            if (name == n) return &ob;
        return nullptr;
    }
    const OracleScenario* find_scenario(const std::string& n) const {
        for (const auto& s : scenarios)
            if (s.name == n) return &s;
        return nullptr;
    }

    // Witness data for the ordered pair (u, v), assembled from the curves'
    // declared intersection counts and the cross-curve pair profiles.
    CurvePairWitness pair_witness(const std::string& u, const std::string& v) const {
        auto it = pair_witnesses.find({u, v});
        return it == pair_witnesses.end() ? CurvePairWitness{} : it->second;
    }
};

namespace ws_detail {

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& what) {
    fail(Errc::schema_error, what + " at " + path);
}

inline const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) schema_fail(path, "missing field '" + key + "'");
    return j.at(key);
}

inline long long get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_fail(path, "expected an integer");
    return j.get<long long>();
}

// Exact rational: a JSON integer or {num, den}.  Floats are forbidden here.
inline Rational get_rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) schema_fail(path, "floats are forbidden in exact fields");
    if (j.is_object()) {
        long long num = get_int(need(j, "num", path), path + "/num");
        long long den =
            j.contains("den") ? get_int(j.at("den"), path + "/den") : 1;
        if (den == 0) schema_fail(path, "zero denominator");
        return Rational(num, den);
    }
    schema_fail(path, "expected an integer or {num, den}");
}

inline Sym2 get_sym2(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        schema_fail(path, "expected a 2x2 matrix");
    double a = j[0][0].get<double>(), b = j[0][1].get<double>();
    double b2 = j[1][0].get<double>(), c = j[1][1].get<double>();
    if (std::abs(b - b2) > 1e-12 * (1 + std::abs(b)))
        schema_fail(path, "operator coefficient matrices must be symmetric");
    return {a, b, c};
}

inline SimpleOrbit parse_orbit(const json& j, long long horizon, const std::string& path) {
    SimpleOrbit o;
    o.name = need(j, "name", path).get<std::string>();
    o.period = get_rational(need(j, "period", path), path + "/period");
    o.horizon = horizon;
    std::string kind = need(j, "kind", path).get<std::string>();
    if (kind == "elliptic") {
        o.kind = Elliptic{get_rational(need(j, "theta", path), path + "/theta")};
    } else if (kind == "even_hyperbolic") {
        o.kind = EvenHyperbolic{get_int(need(j, "alpha0", path), path + "/alpha0")};
    } else if (kind == "odd_hyperbolic") {
        o.kind = OddHyperbolic{get_int(need(j, "alpha0", path), path + "/alpha0")};
    } else {
        schema_fail(path + "/kind", "unknown orbit kind '" + kind + "'");
    }
    try {
        o.validate();
    } catch (const Error& e) {
        schema_fail(path, e.what());
    }
    return o;
}

inline void guard_multiplicity(const SimpleOrbit& orbit, long long mult,
                               const std::string& path) {
    if (mult == 0) schema_fail(path, "multiplicity must be nonzero");
    if (const auto* e = std::get_if<Elliptic>(&orbit.kind)) {
        if (std::llabs(mult) > orbit.horizon)
            fail(Errc::guard_error, "multiplicity " + std::to_string(mult) +
                                        " exceeds the irrationality horizon at " + path);
        if (mult % e->theta.den() == 0)
            fail(Errc::guard_error, "k*theta is an integer for k = " + std::to_string(mult) +
                                        " at orbit " + orbit.name + " (" + path + ")");
    }
}

inline EndData parse_end(const json& j, const Workspace& ws, bool default_holo,
                         const std::string& path) {
    std::string orbit_name = need(j, "orbit", path).get<std::string>();
    const SimpleOrbit* orbit = ws.find_orbit(orbit_name);
    if (!orbit)
        fail(Errc::reference_error, "unknown orbit '" + orbit_name + "' at " + path);
    long long mult = get_int(need(j, "mult", path), path + "/mult");
    guard_multiplicity(*orbit, mult, path);
    const json& jw = need(j, "windings", path);
    if (!jw.is_array()) schema_fail(path + "/windings", "expected an array");
    std::vector<long long> w;
    for (std::size_t i = 0; i < jw.size(); ++i)
        w.push_back(get_int(jw[i], path + "/windings/" + std::to_string(i)));
    bool holo = j.contains("holomorphic") ? j.at("holomorphic").get<bool>() : default_holo;
    try {
        return EndData(CoveredOrbit{*orbit, mult}, std::move(w), holo);
    } catch (const Error& e) {
        schema_fail(path, e.what());
    }
}

inline CurveData parse_curve(const json& j, const Workspace& ws, const std::string& path) {
    CurveData u;
    u.name = need(j, "name", path).get<std::string>();
    std::string flag = j.contains("flag") ? j.at("flag").get<std::string>() : "holomorphic";
    if (flag == "holomorphic") u.flag = CurveFlag::holomorphic;
    else if (flag == "generalized_holomorphic") u.flag = CurveFlag::generalized_holomorphic;
    else if (flag == "smooth") u.flag = CurveFlag::smooth;
    else schema_fail(path + "/flag", "unknown curve flag '" + flag + "'");
    u.c1_rel = j.contains("c1_rel") ? get_int(j.at("c1_rel"), path + "/c1_rel") : 0;
    u.connected = j.contains("connected") ? j.at("connected").get<bool>() : true;
    u.simple = j.contains("simple") ? j.at("simple").get<bool>() : true;

    const json& jc = need(j, "components", path);
    if (!jc.is_array() || jc.empty()) schema_fail(path + "/components", "expected components");
    bool default_holo = u.flag != CurveFlag::smooth;
    for (std::size_t ci = 0; ci < jc.size(); ++ci) {
        std::string cpath = path + "/components/" + std::to_string(ci);
        Component comp;
        comp.genus = get_int(need(jc[ci], "genus", cpath), cpath + "/genus");
        const json& jp = need(jc[ci], "punctures", cpath);
        if (!jp.is_array()) schema_fail(cpath + "/punctures", "expected an array");
        for (std::size_t pi = 0; pi < jp.size(); ++pi)
            comp.punctures.push_back(
                parse_end(jp[pi], ws, default_holo, cpath + "/punctures/" + std::to_string(pi)));
        u.components.push_back(std::move(comp));
    }

    if (j.contains("witness")) {
        const json& jw = j.at("witness");
        std::string wpath = path + "/witness";
        GeometricWitness wit;
        if (jw.contains("double_points"))
            wit.double_points = get_int(jw.at("double_points"), wpath + "/double_points");
        if (jw.contains("wind_pi")) wit.wind_pi = get_int(jw.at("wind_pi"), wpath + "/wind_pi");
        if (jw.contains("orbit_intersections"))
            for (const auto& [k, v] : jw.at("orbit_intersections").items()) {
                if (!ws.find_orbit(k))
                    fail(Errc::reference_error, "unknown orbit '" + k + "' at " + wpath);
                wit.orbit_intersections[k] = get_int(v, wpath + "/orbit_intersections/" + k);
            }
        if (jw.contains("curve_intersections"))
            for (const auto& [k, v] : jw.at("curve_intersections").items())
                wit.curve_intersections[k] = get_int(v, wpath + "/curve_intersections/" + k);
        u.witness = std::move(wit);
    }
    try {
        u.validate();
    } catch (const Error& e) {
        schema_fail(path, e.what());
    }
    return u;
}

inline LoopOperator parse_operator(const json& j, const std::string& path) {
    if (j.contains("model")) {
        std::string model = j.at("model").get<std::string>();
        long long alpha0 =
            j.contains("alpha0") ? get_int(j.at("alpha0"), path + "/alpha0") : 0;
        if (model == "elliptic") {
            Rational theta = get_rational(need(j, "theta", path), path + "/theta");
            return spectral_models::elliptic(theta.to_double());
        }
        double a = j.contains("a") ? j.at("a").get<double>() : 0.0;
        if (model == "even_hyperbolic")
            return spectral_models::even_hyperbolic(a == 0.0 ? 1.0 : a, alpha0);
        if (model == "odd_hyperbolic")
            return spectral_models::odd_hyperbolic(a == 0.0 ? 4.0 : a, alpha0);
        schema_fail(path + "/model", "unknown model '" + model + "'");
    }
    if (j.contains("samples")) {
        const json& js = j.at("samples");
        if (!js.is_array() || js.size() < 3) schema_fail(path + "/samples", "need >= 3 samples");
        std::vector<Sym2> samples;
        for (std::size_t i = 0; i < js.size(); ++i)
            samples.push_back(get_sym2(js[i], path + "/samples/" + std::to_string(i)));
        return LoopOperator::from_samples(samples);
    }
    LoopOperator op;
    op.c0 = get_sym2(need(j, "c0", path), path + "/c0");
    if (j.contains("cos") != j.contains("sin"))
        schema_fail(path, "cos and sin coefficient lists must come together");
    if (j.contains("cos")) {
        const json& jc = j.at("cos");
        const json& js = j.at("sin");
        if (!jc.is_array() || !js.is_array() || jc.size() != js.size())
            schema_fail(path, "cos/sin lists must be arrays of equal length");
        for (std::size_t i = 0; i < jc.size(); ++i) {
            op.cos_coeffs.push_back(get_sym2(jc[i], path + "/cos/" + std::to_string(i)));
            op.sin_coeffs.push_back(get_sym2(js[i], path + "/sin/" + std::to_string(i)));
        }
    }
    return op;
}

} // namespace ws_detail

inline Workspace parse_workspace_json(const json& root) {
    using namespace ws_detail;
    Workspace ws;
    if (!root.is_object()) fail(Errc::schema_error, "workspace must be a JSON object at /");
    long long version =
        root.contains("schema_version") ? get_int(root.at("schema_version"), "/schema_version")
                                        : 1;
    if (version != 1)
        fail(Errc::schema_error,
             "unsupported schema version " + std::to_string(version) + " at /schema_version");
    if (root.contains("horizon")) ws.horizon = get_int(root.at("horizon"), "/horizon");

    if (root.contains("orbits")) {
        const json& jo = root.at("orbits");
        if (!jo.is_array()) schema_fail("/orbits", "expected an array");
        for (std::size_t i = 0; i < jo.size(); ++i) {
            SimpleOrbit o = parse_orbit(jo[i], ws.horizon, "/orbits/" + std::to_string(i));
            if (ws.find_orbit(o.name))
                schema_fail("/orbits/" + std::to_string(i), "duplicate orbit '" + o.name + "'");
            ws.orbits.push_back(std::move(o));
        }
    }

    if (root.contains("curves")) {
        const json& jc = root.at("curves");
        if (!jc.is_array()) schema_fail("/curves", "expected an array");
        for (std::size_t i = 0; i < jc.size(); ++i) {
            CurveData u = parse_curve(jc[i], ws, "/curves/" + std::to_string(i));
            if (ws.find_curve(u.name))
                schema_fail("/curves/" + std::to_string(i), "duplicate curve '" + u.name + "'");
            ws.curves.push_back(std::move(u));
        }
    }

    // Cross-check declared curve intersection counts and seed pair witnesses.
    for (const auto& u : ws.curves) {
        if (!u.witness) continue;
        for (const auto& [vname, count] : u.witness->curve_intersections) {
            const CurveData* v = ws.find_curve(vname);
            if (!v)
                fail(Errc::reference_error,
                     "curve '" + u.name + "' declares intersections with unknown curve '" +
                         vname + "'");
            if (v->witness) {
                auto it = v->witness->curve_intersections.find(u.name);
                if (it != v->witness->curve_intersections.end() && it->second != count)
                    fail(Errc::inconsistent_witness,
                         "int(" + u.name + ", " + vname + ") declared asymmetrically");
            }
            ws.pair_witnesses[{u.name, vname}].int_uv = count;
            ws.pair_witnesses[{vname, u.name}].int_uv = count;
        }
    }

    if (root.contains("relative_intersections")) {
        const json& jr = root.at("relative_intersections");
        if (!jr.is_array()) schema_fail("/relative_intersections", "expected an array");
        for (std::size_t i = 0; i < jr.size(); ++i) {
            std::string path = "/relative_intersections/" + std::to_string(i);
            std::string a = need(jr[i], "a", path).get<std::string>();
            std::string b = need(jr[i], "b", path).get<std::string>();
            if (!ws.find_curve(a) || !ws.find_curve(b))
                fail(Errc::reference_error, "unknown curve in " + path);
            long long rin = get_int(need(jr[i], "rin", path), path + "/rin");
            ws.pair_witnesses[{a, b}].declared_rin = rin;
            ws.pair_witnesses[{b, a}].declared_rin = rin;
        }
    }

    if (root.contains("pairs")) {
        const json& jp = root.at("pairs");
        if (!jp.is_array()) schema_fail("/pairs", "expected an array");
        for (std::size_t i = 0; i < jp.size(); ++i) {
            std::string path = "/pairs/" + std::to_string(i);
            const json& item = jp[i];
            auto parse_ref = [&](const char* key) {
                const json& r = need(item, key, path);
                std::string cn = need(r, "curve", path).get<std::string>();
                long long pi = get_int(need(r, "puncture", path), path);
                const CurveData* c = ws.find_curve(cn);
                if (!c) fail(Errc::reference_error, "unknown curve '" + cn + "' at " + path);
                auto es = c->ends();
                if (pi < 0 || (std::size_t)pi >= es.size())
                    fail(Errc::reference_error,
                         "puncture index " + std::to_string(pi) + " out of range at " + path);
                return std::make_tuple(cn, (std::size_t)pi, *es[(std::size_t)pi]);
            };
            auto [ca, ia, ea] = parse_ref("a");
            auto [cb, ib, eb] = parse_ref("b");
            const json& jrw = need(item, "relative_windings", path);
            if (!jrw.is_array()) schema_fail(path + "/relative_windings", "expected an array");
            std::vector<long long> rel;
            for (std::size_t k = 0; k < jrw.size(); ++k)
                rel.push_back(get_int(jrw[k], path + "/relative_windings/" + std::to_string(k)));
            PairProfile prof;
            try {
                prof = PairProfile(ea, eb, std::move(rel));
            } catch (const Error& e) {
                schema_fail(path, e.what());
            }
            if (ca == cb) {
                CurveData* c = nullptr;
                for (auto& cu : ws.curves)
                    if (cu.name == ca) c = &cu;
                if (!c->witness) c->witness = GeometricWitness{};
                EndPairKey key{std::min(ia, ib), std::max(ia, ib)};
                c->witness->pair_profiles[key] =
                    ia <= ib ? prof : PairProfile(eb, ea, prof.entries);
                c->validate();
            } else {
                ws.pair_witnesses[{ca, cb}].pair_profiles[{ia, ib}] = prof;
                ws.pair_witnesses[{cb, ca}].pair_profiles[{ib, ia}] =
                    PairProfile(eb, ea, prof.entries);
            }
        }
    }

    if (root.contains("openbooks")) {
        const json& jb = root.at("openbooks");
        if (!jb.is_array()) schema_fail("/openbooks", "expected an array");
        for (std::size_t i = 0; i < jb.size(); ++i) {
            std::string path = "/openbooks/" + std::to_string(i);
            OpenBookData ob;
            std::string name = need(jb[i], "name", path).get<std::string>();
            const json& bind = need(jb[i], "bindings", path);
            if (!bind.is_array()) schema_fail(path + "/bindings", "expected an array");
            for (const auto& bn : bind) {
                const SimpleOrbit* b = ws.find_orbit(bn.get<std::string>());
                if (!b)
                    fail(Errc::reference_error,
                         "unknown binding orbit '" + bn.get<std::string>() + "' at " + path);
                ob.bindings.push_back(*b);
            }
            std::string page_name = need(jb[i], "page", path).get<std::string>();
            const CurveData* page = ws.find_curve(page_name);
            if (!page)
                fail(Errc::reference_error, "unknown page curve '" + page_name + "' at " + path);
            ob.page = *page;
            try {
                ob.validate();
            } catch (const Error& e) {
                fail(Errc::invalid_open_book, std::string(e.what()) + " at " + path);
            }
            ws.openbooks.emplace_back(name, std::move(ob));
        }
    }

    if (root.contains("oracle_scenarios")) {
        const json& js = root.at("oracle_scenarios");
        if (!js.is_array()) schema_fail("/oracle_scenarios", "expected an array");
        for (std::size_t i = 0; i < js.size(); ++i) {
            std::string path = "/oracle_scenarios/" + std::to_string(i);
            OracleScenario sc;
            sc.name = need(js[i], "name", path).get<std::string>();
            sc.op = parse_operator(js[i], path);
            if (js[i].contains("modes")) sc.modes = (int)get_int(js[i].at("modes"), path);
            if (js[i].contains("window")) sc.window = js[i].at("window").get<double>();
            if (js[i].contains("tolerance")) sc.tolerance = js[i].at("tolerance").get<double>();
            if (js[i].contains("covers"))
                for (const auto& c : js[i].at("covers"))
                    sc.covers.push_back(get_int(c, path + "/covers"));
            ws.scenarios.push_back(std::move(sc));
        }
    }
    return ws;
}

inline Workspace parse_workspace(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in) fail(Errc::schema_error, "cannot open workspace file " + file_path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(Errc::schema_error, std::string("invalid JSON: ") + e.what());
    }
    return parse_workspace_json(root);
}

} // namespace czint
