#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "czint/curve.hpp"

namespace czint {

// Equivalence-theorem evaluators.  Each checker evaluates every condition set
// of its theorem independently and demands that they all agree; the value of
// the calculus is pinpointing which clause of which set breaks.  Disagreement
// between sets means the declared witness data cannot come from actual
// curves, and raises InconsistentWitness naming the first violated clause.

struct ClauseResult {
    std::string clause;
    bool satisfied = true;
    std::string detail;
};

struct ConditionSet {
    std::string name;
    bool value = true;
    std::vector<ClauseResult> clauses;

    ConditionSet() = default;
    explicit ConditionSet(std::string n) : name(std::move(n)) {}

    void add(const std::string& clause, bool ok, const std::string& detail = "") {
        value = value && ok;
        clauses.push_back({clause, ok, detail});
    }

    const ClauseResult* first_violated() const {
        for (const auto& c : clauses)
            if (!c.satisfied) return &c;
        return nullptr;
    }
};

struct CheckVerdict {
    std::string checker;
    bool value = false; // the common truth value of all condition sets
    std::vector<ConditionSet> sets;
};

namespace detail {

inline void require_agreement(const std::string& checker, std::vector<ConditionSet> sets,
                              CheckVerdict& out) {
    bool first = sets.front().value;
    for (const auto& s : sets) {
        if (s.value != first) {
            std::ostringstream msg;
            msg << checker << ": condition sets disagree (";
            for (const auto& t : sets) msg << t.name << "=" << (t.value ? "true" : "false") << " ";
            msg << ")";
            for (const auto& t : sets)
                if (const auto* c = t.first_violated()) {
                    msg << "; first violated clause: [" << t.name << "] " << c->clause;
                    if (!c->detail.empty()) msg << " (" << c->detail << ")";
                    break;
                }
            fail(Errc::inconsistent_witness, msg.str());
        }
    }
    out.value = first;
    out.sets = std::move(sets);
}

inline Rational signed_ratio(long long num, long long m) { return Rational(num, 1) / Rational(m); }

} // namespace detail

// Conditions equivalent to gin(u, v) = 0 for curves without orbit-cylinder
// components.
inline CheckVerdict check_gin_zero(const CurveData& u, const CurveData& v) {
    long long gin_uv = gin_cylindrical(u, v).total;
    long long gin_vu = gin_cylindrical(v, u).total;
    if (gin_uv != gin_vu)
        fail(Errc::inconsistent_witness, "gin(u,v) = " + std::to_string(gin_uv) +
                                             " != gin(v,u) = " + std::to_string(gin_vu) +
                                             ": witness data is not symmetric-consistent");
    CheckVerdict verdict;
    ConditionSet s1{"gin-vanishes"};
    s1.add("gin(u,v) == 0", gin_uv == 0, "gin = " + std::to_string(gin_uv));

    ConditionSet s2{"signed-limit-conditions"};
    for (const auto* w : v.ends())
        if (w->positive())
            s2.add("u misses positive limit " + w->orbit().name,
                   detail::orbit_int(u, w->orbit()) == 0);
    for (const auto* z : u.ends())
        if (!z->positive())
            s2.add("v misses negative limit " + z->orbit().name,
                   detail::orbit_int(v, z->orbit()) == 0);
    for (const auto* z : u.ends())
        for (const auto* w : v.ends()) {
            if (z->orbit() != w->orbit()) continue;
            Rational rz(z->alpha(), z->abs_mult());
            Rational rw(w->alpha(), w->abs_mult());
            std::string at = z->orbit().name;
            if (z->positive() && w->positive()) {
                s2.add("positive pair at " + at, d0(*z) == 0 && rz >= rw);
            } else if (!z->positive() && !w->positive()) {
                s2.add("negative pair at " + at, d0(*w) == 0 && rw >= rz);
            } else if (!z->positive() && w->positive()) {
                s2.add("mixed pair at " + at + " covers both even",
                       d0(*z) == 0 && d0(*w) == 0 && z->parity() == 0 && w->parity() == 0);
            }
        }

    ConditionSet s3{"symmetric-limit-conditions"};
    for (const auto* w : v.ends())
        s3.add("u misses limit " + w->orbit().name, detail::orbit_int(u, w->orbit()) == 0);
    for (const auto* z : u.ends())
        s3.add("v misses limit " + z->orbit().name, detail::orbit_int(v, z->orbit()) == 0);
    for (const auto* z : u.ends())
        for (const auto* w : v.ends()) {
            if (z->orbit() != w->orbit()) continue;
            std::string at = z->orbit().name;
            s3.add("extremal windings at " + at, d0(*z) == 0 && d0(*w) == 0);
            if (z->orbit().is_elliptic()) {
                bool same_sign = (z->mult() > 0) == (w->mult() > 0);
                bool ratios = detail::signed_ratio(z->alpha(), z->mult()) ==
                              detail::signed_ratio(w->alpha(), w->mult());
                s3.add("elliptic covers aligned at " + at, same_sign && ratios);
            } else if (z->orbit().is_odd_hyperbolic()) {
                bool ok = (parity_of_int(z->mult()) == 0 && parity_of_int(w->mult()) == 0) ||
                          z->mult() == w->mult();
                s3.add("odd hyperbolic covers compatible at " + at, ok);
            }
        }

    detail::require_agreement("gin-zero", {s1, s2, s3}, verdict);
    verdict.checker = "gin-zero";
    return verdict;
}

// Conditions equivalent to the projected curves not intersecting.
inline CheckVerdict check_no_isect(const CurveData& u, const CurveData& v) {
    CheckVerdict verdict;
    long long bound = rshift_int_bound(u, v);
    ConditionSet s1{"generic-shift-bound"};
    s1.add("R-shift intersection bound == 0", bound == 0, "bound = " + std::to_string(bound));

    ConditionSet s2{"signed-limit-conditions"};
    for (const auto* w : v.ends())
        if (w->positive())
            s2.add("u misses positive limit " + w->orbit().name,
                   detail::orbit_int(u, w->orbit()) == 0);
    for (const auto* z : u.ends())
        if (!z->positive())
            s2.add("v misses negative limit " + z->orbit().name,
                   detail::orbit_int(v, z->orbit()) == 0);
    for (const auto* z : u.ends())
        for (const auto* w : v.ends()) {
            if (z->orbit() != w->orbit()) continue;
            std::string at = z->orbit().name;
            bool same_sign = (z->mult() > 0) == (w->mult() > 0);
            if (same_sign) {
                s2.add("winding ratios ordered at " + at,
                       detail::signed_ratio(wind_infty(*z), z->mult()) >=
                           detail::signed_ratio(wind_infty(*w), w->mult()));
            } else if (!z->positive() && w->positive()) {
                s2.add("mixed pair at " + at + " covers both even",
                       d0(*z) == 0 && d0(*w) == 0 && z->parity() == 0 && w->parity() == 0);
            }
        }

    ConditionSet s3{"symmetric-limit-conditions"};
    for (const auto* w : v.ends())
        s3.add("u misses limit " + w->orbit().name, detail::orbit_int(u, w->orbit()) == 0);
    for (const auto* z : u.ends())
        s3.add("v misses limit " + z->orbit().name, detail::orbit_int(v, z->orbit()) == 0);
    for (const auto* z : u.ends())
        for (const auto* w : v.ends()) {
            if (z->orbit() != w->orbit()) continue;
            s3.add("winding ratios equal at " + z->orbit().name,
                   detail::signed_ratio(wind_infty(*z), z->mult()) ==
                       detail::signed_ratio(wind_infty(*w), w->mult()));
        }

    detail::require_agreement("no-isect", {s1, s2, s3}, verdict);
    verdict.checker = "no-isect";
    return verdict;
}

// Conditions equivalent to gin(u, u) = 0 for a connected simple curve.
inline CheckVerdict check_sgin_zero(const CurveData& u) {
    if (!u.simple) fail(Errc::not_simple, "sgin-zero checker requires a simple curve");
    CheckVerdict verdict;
    auto es = u.ends();

    long long gin = self_gin_cylindrical(u).total;
    ConditionSet s1{"self-gin-vanishes"};
    s1.add("gin(u,u) == 0", gin == 0, "gin = " + std::to_string(gin));

    ConditionSet s2{"projection-conditions"};
    for (const auto* z : es)
        s2.add("u misses its limit " + z->orbit().name, detail::orbit_int(u, z->orbit()) == 0);
    for (const auto* z : es)
        s2.add("extremal winding at " + z->orbit().name, d0(*z) == 0);
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            if (es[i]->orbit() != es[j]->orbit()) continue;
            s2.add("alpha ratios equal at " + es[i]->orbit().name,
                   detail::signed_ratio(es[i]->alpha(), es[i]->mult()) ==
                       detail::signed_ratio(es[j]->alpha(), es[j]->mult()));
        }

    const auto& wit = detail::need_witness(u);
    if (!wit.wind_pi) fail(Errc::missing_witness, "sgin-zero checker needs declared wind_pi");
    long long delta = wit.double_points;
    long long dinf = delta_infty_self(u);

    ConditionSet s3{"index-conditions"};
    long long excess = fredholm_index(u) - u.chi() + n_even_punctures(u);
    s3.add("ind - chi + #even == 0", excess == 0, "value = " + std::to_string(excess));
    for (const auto* z : es)
        s3.add("sigma_bar == 1 at " + z->orbit().name, z->sigma_bar() == 1);
    s3.add("embedded with no asymptotic self-index", delta == 0 && dinf == 0,
           "delta = " + std::to_string(delta) + ", delta_infty = " + std::to_string(dinf));

    ConditionSet s4{"immersion-conditions"};
    s4.add("projection immersed transverse to the flow", *wit.wind_pi == 0,
           "wind_pi = " + std::to_string(*wit.wind_pi));
    for (const auto* z : es)
        s4.add("extremal winding at " + z->orbit().name, d0(*z) == 0);
    for (const auto* z : es)
        s4.add("sigma_bar == 1 at " + z->orbit().name, z->sigma_bar() == 1);
    s4.add("embedded with no asymptotic self-index", delta == 0 && dinf == 0);

    detail::require_agreement("sgin-zero", {s1, s2, s3, s4}, verdict);
    verdict.checker = "sgin-zero";
    return verdict;
}

// Conditions equivalent to the projection of a connected simple curve being
// an embedding.
inline CheckVerdict check_embedded_projection(const CurveData& u) {
    if (!u.simple) fail(Errc::not_simple, "embedded-projection checker requires a simple curve");
    CheckVerdict verdict;
    auto es = u.ends();
    const auto& wit = detail::need_witness(u);
    if (!wit.wind_pi)
        fail(Errc::missing_witness, "embedded-projection checker needs declared wind_pi");

    long long bound = self_rshift_bound(u);
    ConditionSet s2{"no-shift-intersections"};
    s2.add("self R-shift bound == 0", bound == 0, "bound = " + std::to_string(bound));

    ConditionSet s3{"limit-and-winding-conditions"};
    for (const auto* z : es)
        s3.add("u misses its limit " + z->orbit().name, detail::orbit_int(u, z->orbit()) == 0);
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            if (es[i]->orbit() != es[j]->orbit()) continue;
            s3.add("winding ratios equal at " + es[i]->orbit().name,
                   detail::signed_ratio(wind_infty(*es[i]), es[i]->mult()) ==
                       detail::signed_ratio(wind_infty(*es[j]), es[j]->mult()));
        }

    ConditionSet s4{"embedded-immersion-conditions"};
    s4.add("u embedded (delta == 0)", wit.double_points == 0);
    s4.add("projection immersed transverse to the flow", *wit.wind_pi == 0);
    for (const auto* z : es)
        s4.add("leading eigenvector simply covered at " + z->orbit().name, leading_cov(*z) == 1);
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            if (es[i]->orbit() != es[j]->orbit()) continue;
            if ((es[i]->mult() > 0) != (es[j]->mult() > 0)) continue;
            const PairProfile* p = detail::find_pair(wit.pair_profiles, i, j);
            if (!p)
                fail(Errc::missing_witness, "embedded-projection checker needs pair profile " +
                                                std::to_string(i) + "," + std::to_string(j));
            Rational mx = rat_max(Rational(wind_infty(*es[i]), es[i]->abs_mult()),
                                  Rational(wind_infty(*es[j]), es[j]->abs_mult()));
            Rational target = Rational(-mul_ll(es[i]->mult(), es[j]->mult())) * mx;
            s4.add("pair intersections saturate the winding bound at " + es[i]->orbit().name,
                   Rational(pair_asymptotic_intersection(*p)) == target);
        }

    detail::require_agreement("embedded-projection", {s2, s3, s4}, verdict);
    verdict.checker = "embedded-projection";
    return verdict;
}

struct DirectionVerdict {
    bool eligible = false;
    bool concluded_positive = false;
    long long pair_index = 0;
    std::optional<long long> gin; // verification value when pair witness given
};

// Two ends approaching a cover of a simple even orbit (or of the double cover
// of an odd hyperbolic orbit) in the same direction force gin >= 1.  The
// same-direction assertion is the caller's flag; it is contradicted by a
// profile that saturates the extremal winding bound.
inline DirectionVerdict same_direction_positivity(const CurveData& u, const CurveData& v,
                                                  const PairProfile& pair, bool same_direction,
                                                  const CurvePairWitness* pw = nullptr) {
    DirectionVerdict out;
    const SimpleOrbit& orbit = pair.a.orbit();
    if (orbit.is_elliptic())
        fail(Errc::orbit_not_eligible, "direction of approach needs an even orbit or the double "
                                       "cover of an odd hyperbolic orbit");
    if (orbit.is_odd_hyperbolic() &&
        (parity_of_int(pair.a.mult()) != 0 || parity_of_int(pair.b.mult()) != 0))
        fail(Errc::orbit_not_eligible,
             "odd hyperbolic orbit requires both ends to cover its double cover");
    out.eligible = true;
    if (!same_direction) return out; // no conclusion either way

    out.pair_index = pair_asymptotic_index(pair);
    if (out.pair_index == 0)
        fail(Errc::profile_contradicts_flag,
             "profile saturates the extremal bound, contradicting the same-direction flag");
    out.concluded_positive = true;
    if (pw) {
        long long g = gin_from_witness(u, v, *pw);
        if (g < 1)
            fail(Errc::inconsistent_witness,
                 "same-direction data forces gin >= 1 but witness gives " + std::to_string(g));
        out.gin = g;
    }
    return out;
}

// A stable holomorphic open book: elliptic bindings, and a genus-zero page
// with one simple positive puncture per binding and Fredholm index 2.
struct OpenBookData {
    std::vector<SimpleOrbit> bindings;
    CurveData page;

    const SimpleOrbit* binding_named(const std::string& n) const {
        for (const auto& b : bindings)
            if (b.name == n) return &b;
        return nullptr;
    }

    void validate() const {
        if (bindings.empty()) fail(Errc::invalid_open_book, "open book needs bindings");
        for (const auto& b : bindings) {
            b.validate();
            if (!b.is_elliptic())
                fail(Errc::invalid_open_book, "binding " + b.name + " must be elliptic");
        }
        page.validate();
        if (page.components.size() != 1 || page.components.front().genus != 0)
            fail(Errc::invalid_open_book, "page must be a single genus-zero component");
        const auto& punct = page.components.front().punctures;
        if (punct.size() != bindings.size())
            fail(Errc::invalid_open_book, "page must have one puncture per binding");
        std::set<std::string> seen;
        for (const auto& e : punct) {
            if (e.mult() != 1)
                fail(Errc::invalid_open_book, "page punctures must be positive and simple");
            const SimpleOrbit* b = binding_named(e.orbit().name);
            if (!b || *b != e.orbit())
                fail(Errc::invalid_open_book,
                     "page puncture at " + e.orbit().name + " is not a binding");
            if (!seen.insert(e.orbit().name).second)
                fail(Errc::invalid_open_book, "page visits binding " + e.orbit().name + " twice");
            if (d0(e) != 0)
                fail(Errc::invalid_open_book,
                     "page end at " + e.orbit().name + " must have extremal winding (d0 = 0)");
        }
        if (fredholm_index(page) != 2)
            fail(Errc::invalid_open_book, "page must have Fredholm index 2, got " +
                                              std::to_string(fredholm_index(page)));
    }
};

struct OpenBookVerdict {
    int alternative = 0; // 1 = non-binding positive limit, 2 = multiply covered binding
    std::string witness_orbit;
    long long witness_mult = 0;
    long long gin_with_page = 0;          // remark formula, alternative 2 only
    Rational rotation{0};                 // rot of the witness binding
    bool rotation_bound_holds = false;    // m_z > 1/rot
};

// Decide which alternative of the open-book theorem a curve realizes.  When
// every positive limit is a binding cover, gin(u, page) is the sum of
// floor(m_z rot(gamma_z)) over positive punctures; positivity of that sum
// exhibits a multiply covered binding with m_z > 1/rot.
inline OpenBookVerdict openbook_analyze(const CurveData& u, const OpenBookData& ob) {
    ob.validate();
    OpenBookVerdict out;
    bool has_positive = false;
    for (const auto* z : u.ends()) {
        if (!z->positive()) continue;
        has_positive = true;
        const SimpleOrbit* b = ob.binding_named(z->orbit().name);
        if (!b || *b != z->orbit()) {
            out.alternative = 1;
            out.witness_orbit = z->orbit().name;
            out.witness_mult = z->mult();
            return out;
        }
    }
    if (!has_positive)
        fail(Errc::inconsistent_input, "curve " + u.name + " has no positive punctures");

    // All positive limits are binding covers: evaluate the page pairing.
    long long gin = 0;
    const EndData* witness_end = nullptr;
    for (const auto* z : u.ends()) {
        if (!z->positive()) continue;
        long long floor_mrot =
            alpha_iter(z->orbit(), z->mult()) -
            mul_ll(z->mult(), std::get<Elliptic>(z->orbit().kind).theta.floor());
        gin += floor_mrot;
        if (floor_mrot >= 1 && !witness_end) witness_end = z;
    }

    // Cross-check against the cylindrical formula with the page as partner.
    CurveData page = ob.page;
    GeometricWitness pw;
    for (const auto& b : ob.bindings) pw.orbit_intersections[b.name] = 0;
    page.witness = pw;
    long long gin_formula = gin_cylindrical(page, u).total;
    if (gin_formula != gin)
        fail(Errc::inconsistent_input, "open-book pairing mismatch: remark formula " +
                                           std::to_string(gin) + " vs cylindrical " +
                                           std::to_string(gin_formula));

    if (gin == 0)
        fail(Errc::inconsistent_input,
             "curve with binding-only simple positive limits must be a page or intersect one "
             "(gin with every page is 0)");

    out.alternative = 2;
    out.gin_with_page = gin;
    out.witness_orbit = witness_end->orbit().name;
    out.witness_mult = witness_end->mult();
    out.rotation = rotation_index(witness_end->orbit());
    out.rotation_bound_holds = Rational(witness_end->mult()) * out.rotation > Rational(1);
    if (!out.rotation_bound_holds)
        fail(Errc::inconsistent_input, "witness puncture fails m > 1/rot");
    return out;
}

struct GenHolVerdict {
    GinBreakdown breakdown;
    bool all_terms_nonnegative = true;
};

// Positivity of the generalized intersection number for generalized
// pseudoholomorphic curves: only the cylindrical-formula terms are used, and
// each of them is individually nonnegative once d0 >= 0 holds at every end.
inline GenHolVerdict genhol_positivity(const CurveData& u, const CurveData& v) {
    if (u.flag == CurveFlag::smooth || v.flag == CurveFlag::smooth)
        fail(Errc::invalid_argument,
             "generalized positivity applies to (generalized) holomorphic curves");
    GenHolVerdict out;
    out.breakdown = gin_cylindrical(u, v);
    for (const auto& t : out.breakdown.terms)
        if (t.value < 0)
            fail(Errc::inconsistent_witness,
                 "cylindrical term " + t.label + " is negative: " + std::to_string(t.value));
    if (out.breakdown.total < 0)
        fail(Errc::inconsistent_witness, "generalized gin came out negative");
    return out;
}

} // namespace czint
