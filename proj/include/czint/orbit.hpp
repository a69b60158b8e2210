#pragma once

#include <cstdlib>
#include <numeric>
#include <string>
#include <variant>

#include "czint/errors.hpp"
#include "czint/rational.hpp"

namespace czint {

// Iteration arithmetic of nondegenerate periodic orbits.  A simple orbit is
// classified as elliptic, even hyperbolic, or odd hyperbolic; the extremal
// negative eigenvector winding alpha of the k-fold cover is determined by one
// parameter per orbit, stored relative to a fixed reference trivialization:
//
//   even hyperbolic:  alpha(k) = k*alpha0
//   odd hyperbolic:   alpha(k) = floor(k*(alpha0 + 1/2))
//   elliptic:         alpha(k) = floor(k*theta)
//
// Irrational theta is modeled by a reduced rational p/q together with an
// irrationality horizon H: an operation that needs k*theta to be
// non-integral demands |k| <= H and q not dividing k, and fails hard
// otherwise.  With q chosen larger than every multiplicity in play this
// reproduces every floor/ceiling identity that irrationality gives.

inline constexpr long long kDefaultHorizon = 10000;

struct Elliptic {
    Rational theta; // reduced, non-integer: den >= 2
};
struct EvenHyperbolic {
    long long alpha0 = 0;
};
struct OddHyperbolic {
    long long alpha0 = 0;
};

using OrbitKind = std::variant<Elliptic, EvenHyperbolic, OddHyperbolic>;

struct SimpleOrbit {
    std::string name;
    Rational period{1};
    OrbitKind kind = EvenHyperbolic{0};
    long long horizon = kDefaultHorizon;

    bool is_elliptic() const { return std::holds_alternative<Elliptic>(kind); }
    bool is_even() const { return std::holds_alternative<EvenHyperbolic>(kind); }
    bool is_odd_hyperbolic() const { return std::holds_alternative<OddHyperbolic>(kind); }

    void validate() const {
        if (!(period > Rational(0))) fail(Errc::invalid_argument, "orbit period must be positive");
        if (horizon < 1) fail(Errc::invalid_argument, "irrationality horizon must be >= 1");
        if (const auto* e = std::get_if<Elliptic>(&kind)) {
            if (e->theta.den() < 2)
                fail(Errc::invalid_argument,
                     "elliptic rotation surrogate must be a non-integer rational");
        }
    }

    friend bool operator==(const SimpleOrbit& a, const SimpleOrbit& b) {
        if (a.name != b.name || a.period != b.period) return false;
        if (a.kind.index() != b.kind.index()) return false;
        if (const auto* e = std::get_if<Elliptic>(&a.kind))
            return e->theta == std::get<Elliptic>(b.kind).theta;
        if (const auto* h = std::get_if<EvenHyperbolic>(&a.kind))
            return h->alpha0 == std::get<EvenHyperbolic>(b.kind).alpha0;
        return std::get<OddHyperbolic>(a.kind).alpha0 == std::get<OddHyperbolic>(b.kind).alpha0;
    }
    friend bool operator!=(const SimpleOrbit& a, const SimpleOrbit& b) { return !(a == b); }
};

// Degree of the transition between two trivializations along a simple orbit.
struct TrivializationShift {
    long long deg = 0;
};

// A periodic orbit gamma^m; the sign of mult is the puncture sign.
struct CoveredOrbit {
    SimpleOrbit orbit;
    long long mult = 1;

    void validate() const {
        orbit.validate();
        if (mult == 0) fail(Errc::invalid_argument, "covering multiplicity must be nonzero");
        if (orbit.is_elliptic() && std::llabs(mult) > orbit.horizon)
            fail(Errc::elliptic_guard_violated,
                 "multiplicity " + std::to_string(mult) + " exceeds irrationality horizon");
    }
};

inline int parity_of_int(long long k) { return int(std::llabs(k) % 2); }

namespace detail {
inline void elliptic_guard(const SimpleOrbit& orbit, const Elliptic& e, long long k) {
    if (std::llabs(k) > orbit.horizon)
        fail(Errc::elliptic_guard_violated, "|k| = " + std::to_string(std::llabs(k)) +
                                                " exceeds irrationality horizon of orbit " +
                                                orbit.name);
    if (k % e.theta.den() == 0)
        fail(Errc::elliptic_guard_violated, "k*theta is an integer for k = " + std::to_string(k) +
                                                ", theta = " + e.theta.str() + " (orbit " +
                                                orbit.name + ")");
}
} // namespace detail

// Extremal winding alpha of gamma^k in the reference trivialization.
inline long long alpha_iter(const SimpleOrbit& orbit, long long k) {
    if (k == 0) fail(Errc::invalid_argument, "cover multiplicity must be nonzero");
    if (const auto* e = std::get_if<EvenHyperbolic>(&orbit.kind)) return mul_ll(k, e->alpha0);
    if (const auto* o = std::get_if<OddHyperbolic>(&orbit.kind))
        return (Rational(k) * (Rational(o->alpha0) + Rational(1, 2))).floor();
    const auto& e = std::get<Elliptic>(orbit.kind);
    detail::elliptic_guard(orbit, e, k);
    return (Rational(k) * e.theta).floor();
}

// Parity of the Conley-Zehnder index of gamma^k: even covers of even orbits
// stay even, odd hyperbolic covers carry the parity of k, elliptic covers are
// always odd.
inline int parity_iter(const SimpleOrbit& orbit, long long k) {
    if (k == 0) fail(Errc::invalid_argument, "cover multiplicity must be nonzero");
    if (orbit.is_even()) return 0;
    if (orbit.is_odd_hyperbolic()) return parity_of_int(k);
    return 1;
}

inline long long cz_index(const SimpleOrbit& orbit, long long k) {
    return 2 * alpha_iter(orbit, k) + parity_iter(orbit, k);
}

// Spectral covering number of gamma^k: gcd(|k|, alpha(gamma^k)).  Invariant
// under trivialization shifts since those change alpha by multiples of k.
inline long long spectral_covering(const SimpleOrbit& orbit, long long k) {
    long long a = alpha_iter(orbit, k);
    long long g = std::gcd(std::llabs(k), std::llabs(a));
    return g == 0 ? std::llabs(k) : g;
}

inline long long spectral_covering(const CoveredOrbit& c) {
    return spectral_covering(c.orbit, c.mult);
}

// alpha transforms affinely under a change of trivialization.
inline long long shift_alpha(long long alpha, long long k, TrivializationShift shift) {
    return alpha + mul_ll(k, shift.deg);
}

// Concatenation defect of a breaking orbit: the loss term when two buildings
// are glued along gamma with covers m (on one factor) and n (on the other).
// Even orbits glue without loss; odd hyperbolic orbits lose min{n p(m), m p(n)};
// elliptic orbits always lose at least one.
inline long long concat_defect(const SimpleOrbit& orbit, long long m, long long n) {
    if (m < 1 || n < 1) fail(Errc::invalid_argument, "concat_defect needs positive covers");
    if (orbit.is_elliptic())
        detail::elliptic_guard(orbit, std::get<Elliptic>(orbit.kind), mul_ll(m, n));
    Rational am(alpha_iter(orbit, m)), an(alpha_iter(orbit, n));
    Rational amm(alpha_iter(orbit, -m)), anm(alpha_iter(orbit, -n));
    Rational d = Rational(-mul_ll(m, n)) *
                 (rat_max(am / Rational(m), an / Rational(n)) +
                  rat_max(amm / Rational(m), anm / Rational(n)));
    long long v = rat_to_integer(d, Errc::inconsistent_input, "concatenation defect");
    if (v < 0) fail(Errc::inconsistent_input, "negative concatenation defect");
    return v;
}

// Fractional part of the elliptic rotation surrogate; governs floor(m*rot)
// intersection counts with open-book pages.
inline Rational rotation_index(const SimpleOrbit& orbit) {
    const auto* e = std::get_if<Elliptic>(&orbit.kind);
    if (!e) fail(Errc::not_elliptic, "rotation index requires an elliptic orbit: " + orbit.name);
    return e->theta.frac();
}

// Re-express the orbit's invariants in a trivialization differing from the
// reference by deg.  alpha(gamma^k) gains k*deg for every k, which amounts to
// shifting the stored parameter by deg.
inline SimpleOrbit rebase_orbit(const SimpleOrbit& orbit, long long deg) {
    SimpleOrbit out = orbit;
    if (auto* e = std::get_if<Elliptic>(&out.kind)) e->theta += Rational(deg);
    else if (auto* h = std::get_if<EvenHyperbolic>(&out.kind)) h->alpha0 += deg;
    else std::get<OddHyperbolic>(out.kind).alpha0 += deg;
    return out;
}

} // namespace czint
