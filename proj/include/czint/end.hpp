#pragma once

#include <cstdlib>
#include <numeric>
#include <vector>

#include "czint/orbit.hpp"

namespace czint {

// One puncture of an asymptotically cylindrical curve.  The asymptotic
// expansion is modeled by the strictly decreasing integer windings
// w_1 > w_2 > ... > w_N of its eigenvectors in the reference trivialization;
// eigenvalues are dropped since every invariant in scope depends only on the
// windings and their gcd structure.
//
// The derived covering sequence is k_0 = |m|, k_i = gcd(k_{i-1}, w_i); the
// expansion is admissible when the sequence decreases strictly past the
// leading term until it reaches 1 (k_1 may equal k_0, the fully covered
// leading term; entries after the first k_i = 1 refine the expansion without
// affecting any invariant).  An end is "embedded" when the sequence reaches
// k_N = 1.
struct EndData {
    CoveredOrbit covered;
    std::vector<long long> windings;
    bool holomorphic = true;

    EndData() = default;
    EndData(CoveredOrbit cov, std::vector<long long> w, bool holo = true)
        : covered(std::move(cov)), windings(std::move(w)), holomorphic(holo) {
        validate();
    }

    long long mult() const { return covered.mult; }
    long long abs_mult() const { return std::llabs(covered.mult); }
    const SimpleOrbit& orbit() const { return covered.orbit; }
    bool positive() const { return covered.mult > 0; }

    long long alpha() const { return alpha_iter(covered.orbit, covered.mult); }
    long long mu() const { return cz_index(covered.orbit, covered.mult); }
    int parity() const { return parity_iter(covered.orbit, covered.mult); }
    long long sigma_bar() const { return spectral_covering(covered); }

    // k_0 = |m|, k_i = gcd(k_{i-1}, w_i); size = windings.size() + 1.
    std::vector<long long> cover_sequence() const {
        std::vector<long long> k;
        k.reserve(windings.size() + 1);
        k.push_back(abs_mult());
        for (long long w : windings) k.push_back(std::gcd(k.back(), std::llabs(w)));
        return k;
    }

    bool embedded_profile() const {
        auto k = cover_sequence();
        return !windings.empty() && k.back() == 1;
    }

    void validate() const {
        covered.validate();
        for (size_t i = 1; i < windings.size(); ++i)
            if (windings[i] >= windings[i - 1])
                fail(Errc::invalid_argument, "end windings must be strictly decreasing");
        auto k = cover_sequence();
        for (size_t i = 2; i < k.size(); ++i)
            if (k[i] >= k[i - 1] && k[i - 1] > 1)
                fail(Errc::invalid_argument,
                     "covering sequence of the expansion must decrease strictly past the "
                     "leading term");
        if (holomorphic && !windings.empty() && windings.front() > alpha())
            fail(Errc::invalid_argument,
                 "holomorphic end requires wind_infty <= alpha (d0 >= 0)");
    }
};

// Leading asymptotic winding.
inline long long wind_infty(const EndData& end) {
    if (end.windings.empty()) fail(Errc::empty_profile, "end has no expansion windings");
    return end.windings.front();
}

// Defect d0 = alpha - wind_infty; trivialization invariant, >= 0 when
// holomorphic.
inline long long d0(const EndData& end) { return end.alpha() - wind_infty(end); }

// Covering number of the leading eigenvector, cov(e1) = gcd(|m|, w1).
inline long long leading_cov(const EndData& end) {
    long long g = std::gcd(end.abs_mult(), std::llabs(wind_infty(end)));
    return g == 0 ? end.abs_mult() : g;
}

// Delta_1 = (|m|-1) d0 - sigma_bar + cov(e1): even, nonnegative, zero exactly
// when |m| = 1, d0 = 0, or d0 = 1 with sigma_bar = |m|.
inline long long delta1(const EndData& end) {
    if (!end.holomorphic) fail(Errc::non_holomorphic_end, "delta1 requires a holomorphic end");
    return (end.abs_mult() - 1) * d0(end) - end.sigma_bar() + leading_cov(end);
}

// Secondary winding of an embedded multiply covered end:
// wind_2 = sum (k_{i-1} - k_i) w_i.
inline long long wind2(const EndData& end) {
    if (end.windings.empty()) fail(Errc::empty_profile, "end has no expansion windings");
    auto k = end.cover_sequence();
    if (k.back() != 1)
        fail(Errc::not_embedded_end, "wind2 requires an embedded end profile (k_N = 1)");
    long long s = 0;
    for (size_t i = 0; i < end.windings.size(); ++i)
        s += mul_ll(k[i] - k[i + 1], end.windings[i]);
    return s;
}

// Delta_2 = (|m|-1) wind_infty - cov(e1) + 1 - wind_2: even, nonnegative,
// zero iff the expansion has at most two terms whose windings differ by one.
inline long long delta2(const EndData& end) {
    if (!end.holomorphic) fail(Errc::non_holomorphic_end, "delta2 requires a holomorphic end");
    return (end.abs_mult() - 1) * wind_infty(end) - leading_cov(end) + 1 - wind2(end);
}

// Relative asymptotic self-intersection number of an embedded end.
inline long long self_asymptotic_intersection(const EndData& end) { return -wind2(end); }

// A profile whose covering sequence has not reached 1 is closed generically:
// one more winding, dropping by one, lands the sequence on 1 and adds nothing
// to Delta_2.
inline EndData generic_completion(const EndData& end) {
    if (end.embedded_profile()) return end;
    if (end.windings.empty()) fail(Errc::empty_profile, "end has no expansion windings");
    EndData completed = end;
    completed.windings.push_back(completed.windings.back() - 1);
    completed.validate();
    return completed;
}

// Asymptotic self-intersection index delta_infty = (Delta_1 + Delta_2)/2,
// the count of self-tangencies at infinity hidden behind the puncture.
inline long long self_asymptotic_index(const EndData& end) {
    EndData e = generic_completion(end);
    long long tot = delta1(e) + delta2(e);
    if (tot % 2 != 0) fail(Errc::inconsistent_input, "Delta_tot came out odd");
    if (tot < 0) fail(Errc::inconsistent_input, "negative asymptotic self-intersection index");
    return tot / 2;
}

// The c-fold cover of an end scales multiplicity and all windings by c.
inline EndData cover_end(const EndData& end, long long c) {
    if (c < 1) fail(Errc::invalid_argument, "cover factor must be >= 1");
    CoveredOrbit cov = end.covered;
    cov.mult = mul_ll(cov.mult, c);
    std::vector<long long> w;
    w.reserve(end.windings.size());
    for (long long wi : end.windings) w.push_back(mul_ll(wi, c));
    return EndData(std::move(cov), std::move(w), end.holomorphic);
}

// Same end expressed in a trivialization shifted by deg: each winding gains
// m*deg and the orbit parameter is rebased so d0, Delta_1, Delta_2 and the
// asymptotic indices are untouched.
inline EndData retrivialize_end(const EndData& end, TrivializationShift shift) {
    CoveredOrbit cov = end.covered;
    cov.orbit = rebase_orbit(cov.orbit, shift.deg);
    std::vector<long long> w;
    w.reserve(end.windings.size());
    for (long long wi : end.windings) w.push_back(wi + mul_ll(end.mult(), shift.deg));
    return EndData(std::move(cov), std::move(w), end.holomorphic);
}

// Relative winding data for two ends limiting to covers of one simple orbit
// with the same sign.  For equal covers m_a = m_b the entries are the |m_a|
// windings of the pairwise differences of the two expansions ("direct"
// comparison); for unequal covers the comparison happens at the common cover
// and carries |m_a * m_b| entries.
struct PairProfile {
    EndData a;
    EndData b;
    std::vector<long long> entries;

    PairProfile() = default;
    PairProfile(EndData ea, EndData eb, std::vector<long long> rel)
        : a(std::move(ea)), b(std::move(eb)), entries(std::move(rel)) {
        validate();
    }

    bool equal_covers() const { return a.mult() == b.mult(); }

    // Covering factors applied to (a, b) before comparison.
    long long cover_factor_a() const { return equal_covers() ? 1 : b.abs_mult(); }
    long long cover_factor_b() const { return equal_covers() ? 1 : a.abs_mult(); }

    // Multiplicity of the orbit cover on which the comparison lives.
    long long common_mult() const { return mul_ll(cover_factor_a(), a.mult()); }

    long long expected_entries() const { return std::llabs(common_mult()); }

    long long entry_bound() const {
        return std::max(mul_ll(cover_factor_a(), wind_infty(a)),
                        mul_ll(cover_factor_b(), wind_infty(b)));
    }

    void validate() const {
        a.validate();
        b.validate();
        if (a.orbit() != b.orbit())
            fail(Errc::mismatched_orbits, "pair ends must share one simple orbit");
        if ((a.mult() > 0) != (b.mult() > 0))
            fail(Errc::mismatched_orbits, "pair ends must have the same puncture sign");
        if ((long long)entries.size() != expected_entries())
            fail(Errc::invalid_argument,
                 "pair profile must carry " + std::to_string(expected_entries()) +
                     " relative windings, got " + std::to_string(entries.size()));
        if (a.holomorphic && b.holomorphic) {
            long long bound = entry_bound();
            for (long long l : entries)
                if (l > bound)
                    fail(Errc::inconsistent_witness,
                         "relative winding " + std::to_string(l) +
                             " exceeds the holomorphic bound " + std::to_string(bound));
        }
    }
};

// Generic profile: every relative winding at its maximal allowed value.  This
// realizes the generic R-shift of the pair.
inline PairProfile generic_pair(const EndData& a, const EndData& b) {
    PairProfile p;
    p.a = a;
    p.b = b;
    long long bound = p.entry_bound();
    p.entries.assign((size_t)p.expected_entries(), bound);
    p.validate();
    return p;
}

// Total relative winding of the pair.
inline long long pair_wind_rel(const PairProfile& p) {
    long long s = 0;
    for (long long l : p.entries) s += l;
    return s;
}

// Relative asymptotic intersection number of the two ends.  Computed from the
// comparison windings; the rational division must land on an integer, and a
// remainder means the declared profile is inconsistent.
inline long long pair_asymptotic_intersection(const PairProfile& p) {
    long long scale = mul_ll(p.cover_factor_a(), p.cover_factor_b());
    Rational v = Rational(-pair_wind_rel(p), scale);
    return rat_to_integer(v, Errc::non_integral_result, "pair asymptotic intersection");
}

// Asymptotic intersection index of the pair: intersection count at infinity
// in excess of the topological minimum; nonnegative for holomorphic pairs.
inline long long pair_asymptotic_index(const PairProfile& p) {
    if (!p.a.holomorphic || !p.b.holomorphic)
        fail(Errc::non_holomorphic_end, "pair asymptotic index requires holomorphic ends");
    Rational omega =
        Rational(mul_ll(p.a.mult(), p.b.mult())) *
        rat_max(Rational(p.a.alpha(), p.a.abs_mult()), Rational(p.b.alpha(), p.b.abs_mult()));
    long long idx = pair_asymptotic_intersection(p) +
                    rat_to_integer(omega, Errc::inconsistent_input, "pair Omega term");
    if (idx < 0)
        fail(Errc::negative_index,
             "negative asymptotic intersection index signals invalid holomorphic data");
    return idx;
}

// Change of trivialization for the pair: each comparison winding lives along
// the common cover, so it gains (common multiplicity)*deg.
inline PairProfile retrivialize_pair(const PairProfile& p, TrivializationShift shift) {
    PairProfile out;
    out.a = retrivialize_end(p.a, shift);
    out.b = retrivialize_end(p.b, shift);
    long long step = mul_ll(p.common_mult(), shift.deg);
    out.entries.reserve(p.entries.size());
    for (long long l : p.entries) out.entries.push_back(l + step);
    out.validate();
    return out;
}

} // namespace czint
