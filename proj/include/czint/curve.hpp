#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "czint/end.hpp"

namespace czint {

// Curve-level data: topology (component genera), asymptotics (one EndData per
// puncture), the relative first Chern number of the pulled-back tangent
// bundle in the reference trivialization, and declared geometric witness
// counts.  The witness fields are inputs the analysis would provide; the
// calculus cross-checks them and never silently normalizes.

enum class CurveFlag { holomorphic, generalized_holomorphic, smooth };

struct Component {
    long long genus = 0;
    std::vector<EndData> punctures;
};

using EndPairKey = std::pair<std::size_t, std::size_t>;

struct GeometricWitness {
    long long double_points = 0; // delta(u)
    std::optional<long long> wind_pi;
    std::map<std::string, long long> orbit_intersections; // int(gamma, u) by orbit name
    std::map<std::string, long long> curve_intersections; // int(u, v) by curve name
    std::map<EndPairKey, PairProfile> pair_profiles;      // same-curve end pairs, key.first < key.second
};

struct CurveData {
    std::string name;
    std::vector<Component> components;
    long long c1_rel = 0;
    CurveFlag flag = CurveFlag::holomorphic;
    bool connected = true;
    bool simple = true;
    std::optional<GeometricWitness> witness;

    std::vector<const EndData*> ends() const {
        std::vector<const EndData*> out;
        for (const auto& c : components)
            for (const auto& e : c.punctures) out.push_back(&e);
        return out;
    }

    long long chi() const {
        long long x = 0;
        for (const auto& c : components) x += 2 - 2 * c.genus;
        return x;
    }

    long long n_punctures() const {
        long long n = 0;
        for (const auto& c : components) n += (long long)c.punctures.size();
        return n;
    }

    bool requires_holomorphic_ends() const { return flag != CurveFlag::smooth; }

    void validate() const {
        for (const auto& c : components) {
            if (c.genus < 0) fail(Errc::invalid_argument, "component genus must be >= 0");
            for (const auto& e : c.punctures) {
                e.validate();
                if (requires_holomorphic_ends() && !e.holomorphic)
                    fail(Errc::invalid_argument,
                         "curve flagged (generalized) holomorphic has a non-holomorphic end");
            }
        }
        if (witness) {
            if (witness->double_points < 0)
                fail(Errc::invalid_argument, "double point count must be >= 0");
            if (witness->wind_pi && *witness->wind_pi < 0)
                fail(Errc::invalid_argument, "wind_pi must be >= 0");
            for (const auto& [k, v] : witness->orbit_intersections)
                if (v < 0) fail(Errc::invalid_argument, "int(" + k + ", u) must be >= 0");
            for (const auto& [k, v] : witness->curve_intersections)
                if (v < 0) fail(Errc::invalid_argument, "int(u, " + k + ") must be >= 0");
            auto es = ends();
            for (const auto& [key, prof] : witness->pair_profiles) {
                if (key.first >= key.second || key.second >= es.size())
                    fail(Errc::invalid_argument, "pair profile keys must index distinct ends");
                if (prof.a.covered.orbit != es[key.first]->covered.orbit ||
                    prof.a.mult() != es[key.first]->mult() ||
                    prof.b.covered.orbit != es[key.second]->covered.orbit ||
                    prof.b.mult() != es[key.second]->mult())
                    fail(Errc::inconsistent_witness,
                         "pair profile does not match the ends it is attached to");
            }
        }
    }
};

// Witness data for an ordered pair of distinct curves.
struct CurvePairWitness {
    long long int_uv = 0;                         // algebraic intersection count
    std::optional<long long> declared_rin;        // relative intersection number, if declared
    std::map<EndPairKey, PairProfile> pair_profiles; // (end index in u, end index in v)
};

inline long long n_odd_punctures(const CurveData& u) {
    long long n = 0;
    for (const auto* e : u.ends()) n += e->parity();
    return n;
}

inline long long n_even_punctures(const CurveData& u) {
    return u.n_punctures() - n_odd_punctures(u);
}

inline long long sigma_bar_total(const CurveData& u) {
    long long s = 0;
    for (const auto* e : u.ends()) s += e->sigma_bar();
    return s;
}

inline long long d0_total(const CurveData& u) {
    long long s = 0;
    for (const auto* e : u.ends()) s += d0(*e);
    return s;
}

// Total Conley-Zehnder index: 2 c1 + sum of end CZ indices.  Invariant under
// joint retrivialization of the curve and its orbits.
inline long long total_cz(const CurveData& u) {
    long long mu = 2 * u.c1_rel;
    for (const auto* e : u.ends()) mu += e->mu();
    return mu;
}

inline long long fredholm_index(const CurveData& u) {
    return total_cz(u) - u.chi() + u.n_punctures();
}

// Trivialization-balancing term: over all pairs of same-sign punctures at a
// common simple orbit, m_z m_w max{alpha_z/|m_z|, alpha_w/|m_w|}.
inline long long omega_term(const CurveData& u, const CurveData& v) {
    Rational total(0);
    for (const auto* z : u.ends())
        for (const auto* w : v.ends()) {
            if (z->orbit() != w->orbit()) continue;
            if ((z->mult() > 0) != (w->mult() > 0)) continue;
            Rational mx = rat_max(Rational(z->alpha(), z->abs_mult()),
                                  Rational(w->alpha(), w->abs_mult()));
            total += Rational(mul_ll(z->mult(), w->mult())) * mx;
        }
    return rat_to_integer(total, Errc::inconsistent_input, "Omega term");
}

namespace detail {

inline const GeometricWitness& need_witness(const CurveData& u) {
    if (!u.witness) fail(Errc::missing_witness, "curve " + u.name + " carries no witness data");
    return *u.witness;
}

// int(gamma, u) from the declared witness map; an orbit absent from a present
// witness counts as zero intersections.
inline long long orbit_int(const CurveData& u, const SimpleOrbit& orbit) {
    const auto& w = need_witness(u);
    auto it = w.orbit_intersections.find(orbit.name);
    return it == w.orbit_intersections.end() ? 0 : it->second;
}

} // namespace detail

struct GinTerm {
    std::string label;
    long long value = 0;
};

struct GinBreakdown {
    long long total = 0;
    std::vector<GinTerm> terms;
};

// Generalized intersection number of two curves in a cylindrical cobordism,
// computed from data of the projected maps: intersections of each curve with
// the asymptotic limits of the other, asymptotic windings, and orbit data.
// The three groups are: v's positive limits against u, u's negative limits
// against v, and the mixed-sign pairs at shared orbits.
inline GinBreakdown gin_cylindrical(const CurveData& u, const CurveData& v) {
    GinBreakdown out;
    auto ue = u.ends();
    auto ve = v.ends();

    for (const auto* w : ve) {
        if (!w->positive()) continue;
        Rational inner(detail::orbit_int(u, w->orbit()));
        for (const auto* z : ue) {
            if (!z->positive() || z->orbit() != w->orbit()) continue;
            Rational az(z->alpha(), z->abs_mult());
            Rational aw(w->alpha(), w->abs_mult());
            inner += Rational(z->abs_mult()) * (rat_max(az, aw) - az);
            inner += Rational(d0(*z));
        }
        long long term = rat_to_integer(Rational(w->abs_mult()) * inner,
                                        Errc::inconsistent_input, "positive-limit term");
        out.terms.push_back({"pos-limit " + w->orbit().name + "^" + std::to_string(w->mult()),
                             term});
        out.total += term;
    }

    for (const auto* z : ue) {
        if (z->positive()) continue;
        Rational inner(detail::orbit_int(v, z->orbit()));
        for (const auto* w : ve) {
            if (w->positive() || w->orbit() != z->orbit()) continue;
            Rational az(z->alpha(), z->abs_mult());
            Rational aw(w->alpha(), w->abs_mult());
            inner += Rational(w->abs_mult()) * (rat_max(az, aw) - aw);
            inner += Rational(d0(*w));
        }
        long long term = rat_to_integer(Rational(z->abs_mult()) * inner,
                                        Errc::inconsistent_input, "negative-limit term");
        out.terms.push_back({"neg-limit " + z->orbit().name + "^" + std::to_string(z->mult()),
                             term});
        out.total += term;
    }

    for (const auto* z : ue) {
        if (z->positive()) continue;
        for (const auto* w : ve) {
            if (!w->positive() || w->orbit() != z->orbit()) continue;
            long long term = mul_ll(w->abs_mult(), d0(*z)) + mul_ll(z->abs_mult(), d0(*w)) -
                             mul_ll(w->abs_mult(), z->alpha()) - mul_ll(z->abs_mult(), w->alpha());
            out.terms.push_back({"mixed " + z->orbit().name, term});
            out.total += term;
        }
    }
    return out;
}

// Self-intersection specialization; identical to gin_cylindrical(u, u).
inline GinBreakdown self_gin_cylindrical(const CurveData& u) { return gin_cylindrical(u, u); }

// gin of a map with an orbit cylinder over gamma^k, k > 0.
inline long long gin_orbit_cylinder(const CurveData& u, const SimpleOrbit& orbit, long long k) {
    if (k < 1) fail(Errc::invalid_argument, "orbit cylinder cover must be positive");
    Rational inner(u.witness ? detail::orbit_int(u, orbit) : 0);
    for (const auto* z : u.ends()) {
        if (z->orbit() != orbit) continue;
        Rational az(z->alpha(), z->abs_mult());
        Rational ak = z->positive() ? Rational(alpha_iter(orbit, k), k)
                                    : Rational(alpha_iter(orbit, -k), k);
        inner += Rational(z->abs_mult()) * (rat_max(az, ak) - az);
        inner += Rational(d0(*z));
    }
    return rat_to_integer(Rational(k) * inner, Errc::inconsistent_input, "orbit-cylinder gin");
}

// Self-intersection number of the orbit cylinder over gamma^k.
inline long long self_gin_orbit_cylinder(const SimpleOrbit& orbit, long long k) {
    if (k < 1) fail(Errc::invalid_argument, "orbit cylinder cover must be positive");
    return -k * parity_iter(orbit, k);
}

namespace detail {

// Look up the declared pair profile for ends (i, j) of one curve, or of a
// pair of curves, and sanity check it against the ends it claims to compare.
inline const PairProfile* find_pair(const std::map<EndPairKey, PairProfile>& m, std::size_t i,
                                    std::size_t j) {
    auto it = m.find({i, j});
    return it == m.end() ? nullptr : &it->second;
}

} // namespace detail

// Total asymptotic self-intersection index of one curve: per-end indices plus
// one index per unordered pair of distinct ends at a common orbit with equal
// sign.  Pair data comes from the witness.
inline long long delta_infty_self(const CurveData& u) {
    const auto& w = detail::need_witness(u);
    auto es = u.ends();
    long long total = 0;
    for (const auto* e : es) total += self_asymptotic_index(*e);
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            if (es[i]->orbit() != es[j]->orbit()) continue;
            if ((es[i]->mult() > 0) != (es[j]->mult() > 0)) continue;
            const PairProfile* p = detail::find_pair(w.pair_profiles, i, j);
            if (!p)
                fail(Errc::missing_witness, "curve " + u.name + " lacks a pair profile for ends " +
                                                std::to_string(i) + "," + std::to_string(j));
            total += pair_asymptotic_index(*p);
        }
    return total;
}

// Total asymptotic intersection index of two distinct curves.
inline long long delta_infty_pair(const CurveData& u, const CurveData& v,
                                  const CurvePairWitness& pw) {
    auto ue = u.ends();
    auto ve = v.ends();
    long long total = 0;
    for (std::size_t i = 0; i < ue.size(); ++i)
        for (std::size_t j = 0; j < ve.size(); ++j) {
            if (ue[i]->orbit() != ve[j]->orbit()) continue;
            if ((ue[i]->mult() > 0) != (ve[j]->mult() > 0)) continue;
            const PairProfile* p = detail::find_pair(pw.pair_profiles, i, j);
            if (!p)
                fail(Errc::missing_witness, "missing pair profile for ends " + std::to_string(i) +
                                                " of " + u.name + " and " + std::to_string(j) +
                                                " of " + v.name);
            total += pair_asymptotic_index(*p);
        }
    return total;
}

// gin from the positivity theorem: algebraic intersections plus the total
// asymptotic intersection index.
inline long long gin_from_witness(const CurveData& u, const CurveData& v,
                                  const CurvePairWitness& pw) {
    if (pw.int_uv < 0) fail(Errc::invalid_argument, "int(u, v) must be >= 0");
    return pw.int_uv + delta_infty_pair(u, v, pw);
}

struct AdjunctionReport {
    long long defect = 0; // gin(u,u) - mu/2 + #odd/2 + chi - sigma_bar
    long long gin_self = 0;
    long long mu = 0;
    long long index = 0;
    long long chi = 0;
    long long sigma_bar = 0;
    long long n_odd = 0;
    std::optional<long long> sing_twice; // 2(delta + delta_infty) when witness is complete
};

// Adjunction defect of a connected simple curve.  Even and nonnegative on
// valid data; equals twice the singularity index when the witness supplies
// double points and pair profiles.  An odd or negative value means the
// declared data cannot come from one holomorphic curve.
inline AdjunctionReport adjunction_defect(const CurveData& u) {
    if (!u.connected || !u.simple)
        fail(Errc::not_simple, "adjunction requires a connected simple curve");
    if (!u.witness) fail(Errc::missing_self_gin, "self gin needs witness orbit intersections");
    AdjunctionReport r;
    r.gin_self = self_gin_cylindrical(u).total;
    r.mu = total_cz(u);
    r.index = fredholm_index(u);
    r.chi = u.chi();
    r.sigma_bar = sigma_bar_total(u);
    r.n_odd = n_odd_punctures(u);
    Rational defect = Rational(r.gin_self) - Rational(r.mu, 2) + Rational(r.n_odd, 2) +
                      Rational(r.chi) - Rational(r.sigma_bar);
    r.defect = rat_to_integer(defect, Errc::inconsistent_witness, "adjunction defect");
    if (r.defect % 2 != 0)
        fail(Errc::inconsistent_witness,
             "odd adjunction defect " + std::to_string(r.defect) + " on curve " + u.name);
    if (r.defect < 0)
        fail(Errc::inconsistent_witness,
             "negative adjunction defect " + std::to_string(r.defect) + " on curve " + u.name);

    // Index-form rearrangement must agree identically.
    Rational index_form = Rational(r.gin_self) -
                          Rational(r.index - r.chi + n_even_punctures(u), 2) +
                          Rational(u.n_punctures()) - Rational(r.sigma_bar);
    if (rat_to_integer(index_form, Errc::inconsistent_witness, "index-form defect") != r.defect)
        fail(Errc::inconsistent_witness, "adjunction index form disagrees with CZ form");

    bool have_pairs = true;
    {
        auto es = u.ends();
        for (std::size_t i = 0; i < es.size() && have_pairs; ++i)
            for (std::size_t j = i + 1; j < es.size() && have_pairs; ++j) {
                if (es[i]->orbit() != es[j]->orbit()) continue;
                if ((es[i]->mult() > 0) != (es[j]->mult() > 0)) continue;
                if (!detail::find_pair(u.witness->pair_profiles, i, j)) have_pairs = false;
            }
        for (const auto* e : es)
            if (!e->embedded_profile()) have_pairs = false;
    }
    if (have_pairs) {
        long long sing2 = 2 * (u.witness->double_points + delta_infty_self(u));
        r.sing_twice = sing2;
        if (sing2 != r.defect)
            fail(Errc::inconsistent_witness,
                 "adjunction defect " + std::to_string(r.defect) + " != 2 sing = " +
                     std::to_string(sing2) + " on curve " + u.name);
    }
    return r;
}

struct WindPiReport {
    long long wind_pi = 0;
    long long d0_sum = 0;
    long long index = 0;
    long long chi = 0;
    long long n_even = 0;
    std::optional<long long> sing_twice; // from the adjunction rearrangement
};

// Checks the declared wind_pi against the index identity
// wind_pi + d0(u) = (ind - chi + #even)/2, then evaluates the adjunction
// rearrangement gin - (wind_pi + d0) + #punctures - sigma_bar = 2 sing.
inline WindPiReport windpi_consistency(const CurveData& u) {
    const auto& w = detail::need_witness(u);
    if (!w.wind_pi) fail(Errc::missing_witness, "curve " + u.name + " declares no wind_pi");
    WindPiReport r;
    r.wind_pi = *w.wind_pi;
    r.d0_sum = d0_total(u);
    r.index = fredholm_index(u);
    r.chi = u.chi();
    r.n_even = n_even_punctures(u);
    long long rhs2 = r.index - r.chi + r.n_even;
    if (rhs2 % 2 != 0 || r.wind_pi + r.d0_sum != rhs2 / 2)
        fail(Errc::inconsistent_witness,
             "wind_pi identity violated: " + std::to_string(r.wind_pi) + " + " +
                 std::to_string(r.d0_sum) + " != (" + std::to_string(rhs2) + ")/2");
    long long gin = self_gin_cylindrical(u).total;
    long long sing2 = gin - (r.wind_pi + r.d0_sum) + u.n_punctures() - sigma_bar_total(u);
    if (sing2 < 0 || sing2 % 2 != 0)
        fail(Errc::inconsistent_witness,
             "adjunction wind_pi form yields invalid 2 sing = " + std::to_string(sing2));
    r.sing_twice = sing2;
    return r;
}

// Generic upper bound for int(u, v_c) over R-shifts c: the cylindrical gin
// formula with asymptotic windings in place of the extremal windings on the
// same-sign terms.
inline long long rshift_int_bound(const CurveData& u, const CurveData& v) {
    auto ue = u.ends();
    auto ve = v.ends();
    Rational total(0);
    for (const auto* w : ve) {
        if (!w->positive()) continue;
        Rational inner(detail::orbit_int(u, w->orbit()));
        for (const auto* z : ue) {
            if (!z->positive() || z->orbit() != w->orbit()) continue;
            Rational wz(wind_infty(*z), z->abs_mult());
            Rational ww(wind_infty(*w), w->abs_mult());
            inner += Rational(z->abs_mult()) * (rat_max(wz, ww) - wz);
        }
        total += Rational(w->abs_mult()) * inner;
    }
    for (const auto* z : ue) {
        if (z->positive()) continue;
        Rational inner(detail::orbit_int(v, z->orbit()));
        for (const auto* w : ve) {
            if (w->positive() || w->orbit() != z->orbit()) continue;
            Rational wz(wind_infty(*z), z->abs_mult());
            Rational ww(wind_infty(*w), w->abs_mult());
            inner += Rational(w->abs_mult()) * (rat_max(wz, ww) - ww);
        }
        total += Rational(z->abs_mult()) * inner;
    }
    for (const auto* z : ue) {
        if (z->positive()) continue;
        for (const auto* w : ve) {
            if (!w->positive() || w->orbit() != z->orbit()) continue;
            total += Rational(mul_ll(w->abs_mult(), d0(*z)) + mul_ll(z->abs_mult(), d0(*w)) -
                              mul_ll(w->abs_mult(), z->alpha()) -
                              mul_ll(z->abs_mult(), w->alpha()));
        }
    }
    long long b = rat_to_integer(total, Errc::inconsistent_input, "R-shift bound");
    if (b < 0) fail(Errc::inconsistent_witness, "negative R-shift intersection bound");
    return b;
}

// Generic upper bound for int(u, u_c) over nonzero R-shifts:
// wind_pi + 2 delta + sum over ends of [cov(e1) - 1 + Delta_2] plus the
// saturation gaps of the declared pair profiles.
inline long long self_rshift_bound(const CurveData& u) {
    const auto& w = detail::need_witness(u);
    if (!w.wind_pi) fail(Errc::missing_witness, "self R-shift bound needs wind_pi");
    long long total = *w.wind_pi + 2 * w.double_points;
    for (const auto* e : u.ends()) total += leading_cov(*e) - 1 + delta2(generic_completion(*e));
    auto es = u.ends();
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            if (es[i]->orbit() != es[j]->orbit()) continue;
            if ((es[i]->mult() > 0) != (es[j]->mult() > 0)) continue;
            const PairProfile* p = detail::find_pair(w.pair_profiles, i, j);
            if (!p)
                fail(Errc::missing_witness,
                     "self R-shift bound needs a pair profile for ends " + std::to_string(i) +
                         "," + std::to_string(j));
            Rational mx = rat_max(Rational(wind_infty(*es[i]), es[i]->abs_mult()),
                                  Rational(wind_infty(*es[j]), es[j]->abs_mult()));
            Rational term = Rational(pair_asymptotic_intersection(*p)) +
                            Rational(mul_ll(es[i]->mult(), es[j]->mult())) * mx;
            long long t = rat_to_integer(term, Errc::inconsistent_witness, "pair gap term");
            if (t < 0)
                fail(Errc::inconsistent_witness,
                     "pair profile exceeds the asymptotic winding bound");
            total += 2 * t; // ordered pairs count each unordered pair twice
        }
    if (total < 0) fail(Errc::inconsistent_witness, "negative self R-shift bound");
    return total;
}

// Curve expressed in new trivializations, one integer degree per simple
// orbit (absent names shift by zero).  End windings gain m*deg, the orbit
// parameters are rebased, and c1 loses sum(m_z deg_z); all invariants of the
// calculus are unchanged.
inline CurveData retrivialize_curve(const CurveData& u,
                                    const std::map<std::string, long long>& shifts) {
    auto deg_of = [&shifts](const SimpleOrbit& o) {
        auto it = shifts.find(o.name);
        return it == shifts.end() ? 0LL : it->second;
    };
    CurveData out = u;
    long long c1_shift = 0;
    for (auto& comp : out.components)
        for (auto& e : comp.punctures) {
            long long d = deg_of(e.orbit());
            c1_shift += mul_ll(e.mult(), d);
            e = retrivialize_end(e, TrivializationShift{d});
        }
    out.c1_rel = u.c1_rel - c1_shift;
    if (out.witness) {
        for (auto& [key, prof] : out.witness->pair_profiles)
            prof = retrivialize_pair(prof, TrivializationShift{deg_of(prof.a.orbit())});
    }
    out.validate();
    return out;
}

inline CurvePairWitness retrivialize_pair_witness(const CurvePairWitness& pw,
                                                  const std::map<std::string, long long>& shifts) {
    CurvePairWitness out = pw;
    for (auto& [key, prof] : out.pair_profiles) {
        auto it = shifts.find(prof.a.orbit().name);
        long long d = it == shifts.end() ? 0 : it->second;
        prof = retrivialize_pair(prof, TrivializationShift{d});
    }
    return out;
}

// Breaking data of a concatenation u1 (top) glued to u2 (bottom): negative
// punctures of u1 match positive punctures of u2 over the same orbit with
// opposite multiplicity.
struct Breaking {
    SimpleOrbit orbit;
    long long cover = 0; // positive cover of the breaking orbit
};

inline std::vector<Breaking> match_breaking(const CurveData& top, const CurveData& bottom) {
    std::vector<const EndData*> neg, pos;
    for (const auto* e : top.ends())
        if (!e->positive()) neg.push_back(e);
    for (const auto* e : bottom.ends())
        if (e->positive()) pos.push_back(e);
    if (neg.size() != pos.size())
        fail(Errc::matching_invalid, "breaking puncture counts differ between " + top.name +
                                         " and " + bottom.name);
    std::vector<bool> used(pos.size(), false);
    std::vector<Breaking> out;
    for (const auto* z : neg) {
        bool matched = false;
        for (std::size_t j = 0; j < pos.size(); ++j) {
            if (used[j]) continue;
            if (pos[j]->orbit() == z->orbit() && pos[j]->mult() == -z->mult()) {
                used[j] = true;
                out.push_back({z->orbit(), pos[j]->mult()});
                matched = true;
                break;
            }
        }
        if (!matched)
            fail(Errc::matching_invalid, "no matching positive puncture for " + z->orbit().name +
                                             "^" + std::to_string(z->mult()));
    }
    return out;
}

struct ConcatReport {
    long long defect = 0;
    bool strict_expected = false; // some matched pair has both covers odd
    std::vector<Breaking> breakings_u;
    std::vector<Breaking> breakings_v;
};

// Concatenation defect gin(u1.u2, v1.v2) - gin(u1,v1) - gin(u2,v2): one
// concat_defect contribution per pair of breaking orbits shared between the
// u- and v-buildings.
inline ConcatReport concat_gin(const CurveData& u1, const CurveData& u2, const CurveData& v1,
                               const CurveData& v2) {
    ConcatReport r;
    r.breakings_u = match_breaking(u1, u2);
    r.breakings_v = match_breaking(v1, v2);
    for (const auto& bu : r.breakings_u)
        for (const auto& bv : r.breakings_v) {
            if (bu.orbit != bv.orbit) continue;
            r.defect += concat_defect(bu.orbit, bu.cover, bv.cover);
            bool odd_u = parity_iter(bu.orbit, bu.cover) == 1;
            bool odd_v = parity_iter(bv.orbit, bv.cover) == 1;
            if (odd_u && odd_v) r.strict_expected = true;
        }
    if (r.defect < 0) fail(Errc::inconsistent_input, "negative concatenation defect");
    return r;
}

} // namespace czint
