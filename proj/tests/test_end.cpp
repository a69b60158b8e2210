#include <catch2/catch_amalgamated.hpp>

#include "czint/end.hpp"

using namespace czint;

namespace {

SimpleOrbit elliptic57() { return SimpleOrbit{"e", Rational(1), Elliptic{Rational(5, 7)}}; }
SimpleOrbit even_orbit(long long a0) { return SimpleOrbit{"h", Rational(1), EvenHyperbolic{a0}}; }

EndData make_end(SimpleOrbit orbit, long long m, std::vector<long long> w, bool holo = true) {
    return EndData(CoveredOrbit{std::move(orbit), m}, std::move(w), holo);
}

} // namespace

TEST_CASE("leading winding and d0") {
    CHECK(wind_infty(make_end(elliptic57(), 4, {2})) == 2);
    CHECK(wind_infty(make_end(even_orbit(0), 1, {0})) == 0);
    CHECK(wind_infty(make_end(even_orbit(0), -3, {-2, -3}, false)) == -2);
    CHECK(d0(make_end(elliptic57(), 4, {2})) == 0);
    CHECK(d0(make_end(elliptic57(), 4, {1})) == 1);
    CHECK(d0(make_end(even_orbit(0), 1, {0})) == 0);
    CHECK_THROWS_AS(wind_infty(make_end(even_orbit(0), 2, {})), Error);
}

TEST_CASE("profile admissibility") {
    // holomorphic ends need w1 <= alpha
    CHECK_THROWS_AS(make_end(elliptic57(), 4, {3}), Error);
    CHECK_NOTHROW(make_end(elliptic57(), 4, {3}, false));
    // windings strictly decreasing
    CHECK_THROWS_AS(make_end(even_orbit(5), 4, {2, 2}), Error);
    // covering sequence must drop strictly after the leading term
    CHECK_THROWS_AS(make_end(even_orbit(5), 4, {4, 2, 0}), Error);
    CHECK_NOTHROW(make_end(even_orbit(5), 4, {4, 2, 1}));
    // entries past the first k_i = 1 refine the expansion and are admissible
    CHECK_NOTHROW(make_end(even_orbit(0), -3, {-2, -3}, false));
    CHECK(wind2(make_end(even_orbit(5), 4, {3, 1})) ==
          wind2(make_end(even_orbit(5), 4, {3, 1, 0})));
}

TEST_CASE("delta1") {
    CHECK(delta1(make_end(even_orbit(3), 1, {1})) == 0);
    CHECK(delta1(make_end(elliptic57(), 4, {1})) == 2); // 3*1 - gcd(4,2) + gcd(4,1)
    CHECK(delta1(make_end(elliptic57(), 4, {2})) == 0);
    CHECK_THROWS_AS(delta1(make_end(even_orbit(0), 2, {-1}, false)), Error);
}

TEST_CASE("wind2 and delta2") {
    CHECK(wind2(make_end(even_orbit(1), 4, {1})) == 3);
    CHECK(wind2(make_end(even_orbit(1), 4, {2, 1})) == 5);
    CHECK(wind2(make_end(even_orbit(5), 1, {5})) == 0);
    CHECK_THROWS_AS(wind2(make_end(even_orbit(0), -2, {0})), Error); // k_N = 2

    CHECK(delta2(make_end(even_orbit(1), 4, {2, 1})) == 0);
    CHECK(delta2(make_end(even_orbit(1), 6, {3, 1})) == 2);
    CHECK(delta2(make_end(even_orbit(3), 1, {3})) == 0);
}

TEST_CASE("asymptotic self-intersection number and index") {
    CHECK(self_asymptotic_intersection(make_end(even_orbit(1), 4, {1})) == -3);
    CHECK(self_asymptotic_intersection(make_end(even_orbit(0), 1, {0})) == 0);
    CHECK(self_asymptotic_intersection(make_end(even_orbit(1), 4, {2, 1})) == -5);

    CHECK(self_asymptotic_index(make_end(elliptic57(), 4, {1})) == 1);
    CHECK(self_asymptotic_index(make_end(even_orbit(2), 1, {2})) == 0);
    CHECK(self_asymptotic_index(make_end(elliptic57(), 4, {2})) == 0);
}

TEST_CASE("end covers") {
    EndData covered = cover_end(make_end(even_orbit(1), 2, {1}), 3);
    CHECK(covered.mult() == 6);
    CHECK(covered.windings == std::vector<long long>{3});

    EndData e = make_end(elliptic57(), 4, {2, 1});
    EndData same = cover_end(e, 1);
    CHECK(same.mult() == e.mult());
    CHECK(same.windings == e.windings);

    EndData neg = cover_end(make_end(even_orbit(0), -1, {0}), 2);
    CHECK(neg.mult() == -2);
    CHECK(neg.windings == std::vector<long long>{0});

    for (long long c = 1; c <= 5; ++c)
        CHECK(wind_infty(cover_end(e, c)) == c * wind_infty(e));
}

TEST_CASE("delta invariants over small profiles") {
    // Delta_1, Delta_2 even and nonnegative; zero cases as characterized.
    std::vector<SimpleOrbit> orbits = {even_orbit(1), even_orbit(-1), elliptic57(),
                                       SimpleOrbit{"o", Rational(1), OddHyperbolic{0}}};
    for (const auto& orbit : orbits)
        for (long long am = 1; am <= 12; ++am)
            for (long long sign : {1, -1}) {
                long long m = sign * am;
                if (orbit.is_elliptic() && m % 7 == 0) continue;
                long long alpha = alpha_iter(orbit, m);
                for (long long w1 = -12; w1 <= alpha; ++w1) {
                    EndData e = make_end(orbit, m, {w1});
                    long long dd1 = delta1(e);
                    CHECK(dd1 >= 0);
                    CHECK(dd1 % 2 == 0);
                    bool zero_char = am == 1 || d0(e) == 0 ||
                                     (d0(e) == 1 && e.sigma_bar() == am);
                    CHECK((dd1 == 0) == zero_char);
                    CHECK(self_asymptotic_index(e) >= 0);
                }
            }
}

TEST_CASE("pair profiles") {
    SimpleOrbit h = even_orbit(1);
    EndData a2 = make_end(h, 2, {2});
    EndData b2 = make_end(h, 2, {2});

    CHECK(pair_wind_rel(PairProfile(a2, b2, {2, 2})) == 4);
    CHECK(pair_wind_rel(PairProfile(make_end(h, 1, {0}), make_end(h, 1, {0}), {0})) == 0);
    CHECK(pair_wind_rel(PairProfile(a2, b2, {1, 2})) == 3);

    CHECK(pair_asymptotic_intersection(PairProfile(a2, b2, {2, 2})) == -4);
    EndData a1 = make_end(h, 1, {1});
    CHECK(pair_asymptotic_intersection(PairProfile(a1, b2, {2, 2})) == -2); // -(4)/(1*2)
    CHECK(pair_asymptotic_intersection(
              PairProfile(make_end(h, 1, {0}), make_end(h, 1, {0}), {0})) == 0);

    CHECK(pair_asymptotic_index(PairProfile(a2, b2, {2, 2})) == 0);
    CHECK(pair_asymptotic_index(PairProfile(a2, b2, {1, 2})) == 1);
    CHECK(pair_asymptotic_index(PairProfile(a1, make_end(h, 1, {1}), {1})) == 0);
}

TEST_CASE("pair profile validation") {
    SimpleOrbit h = even_orbit(1);
    SimpleOrbit e = elliptic57();
    CHECK_THROWS_AS(PairProfile(make_end(h, 1, {1}), make_end(e, 1, {0}), {0}), Error);
    CHECK_THROWS_AS(PairProfile(make_end(h, 1, {1}), make_end(h, -1, {-1}, false), {0}), Error);
    // wrong entry count
    CHECK_THROWS_AS(PairProfile(make_end(h, 2, {2}), make_end(h, 2, {2}), {2}), Error);
    // entry above the holomorphic bound
    CHECK_THROWS_AS(PairProfile(make_end(h, 2, {2}), make_end(h, 2, {2}), {3, 2}), Error);
    // non-integral asymptotic intersection
    CHECK_THROWS_AS(
        pair_asymptotic_intersection(PairProfile(make_end(h, 1, {1}), make_end(h, 2, {2}), {2, 1})),
        Error);
}

TEST_CASE("generic pair saturates and scales") {
    SimpleOrbit h = even_orbit(1);
    EndData a = make_end(h, 2, {1});
    EndData b = make_end(h, 2, {2});
    PairProfile gen = generic_pair(a, b);
    CHECK(pair_wind_rel(gen) == 2 * 2); // |m| * max{w1}
    for (long long c = 1; c <= 4; ++c) {
        PairProfile cov = generic_pair(cover_end(a, c), cover_end(b, c));
        CHECK(pair_wind_rel(cov) == c * c * pair_wind_rel(gen));
    }
}

TEST_CASE("trivialization invariance of end invariants") {
    EndData e = make_end(elliptic57(), 4, {1});
    for (long long d = -5; d <= 5; ++d) {
        EndData shifted = retrivialize_end(e, {d});
        CHECK(shifted.windings.front() == e.windings.front() + 4 * d);
        CHECK(d0(shifted) == d0(e));
        CHECK(delta1(shifted) == delta1(e));
        CHECK(delta2(shifted) == delta2(e));
        CHECK(self_asymptotic_index(shifted) == self_asymptotic_index(e));
        CHECK(shifted.sigma_bar() == e.sigma_bar());
    }

    SimpleOrbit h = even_orbit(1);
    PairProfile pair(make_end(h, 2, {2}), make_end(h, 2, {2}), {2, 2});
    for (long long d = -5; d <= 5; ++d) {
        PairProfile shifted = retrivialize_pair(pair, {d});
        for (std::size_t i = 0; i < shifted.entries.size(); ++i)
            CHECK(shifted.entries[i] == pair.entries[i] + 2 * d);
        CHECK(pair_asymptotic_index(shifted) == pair_asymptotic_index(pair));
    }
}
