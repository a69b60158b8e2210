#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "czint/orbit.hpp"

using namespace czint;

namespace {

SimpleOrbit elliptic(long long p, long long q, const std::string& name = "e") {
    return SimpleOrbit{name, Rational(1), Elliptic{Rational(p, q)}};
}
SimpleOrbit even_orbit(long long a0, const std::string& name = "h") {
    return SimpleOrbit{name, Rational(1), EvenHyperbolic{a0}};
}
SimpleOrbit odd_orbit(long long a0, const std::string& name = "o") {
    return SimpleOrbit{name, Rational(1), OddHyperbolic{a0}};
}

bool guard_ok(const SimpleOrbit& orbit, long long k) {
    const auto* e = std::get_if<Elliptic>(&orbit.kind);
    return !e || (k % e->theta.den() != 0 && std::llabs(k) <= orbit.horizon);
}

} // namespace

TEST_CASE("alpha iteration closed forms") {
    CHECK(alpha_iter(even_orbit(2), 3) == 6);
    CHECK(alpha_iter(odd_orbit(1), 1) == 1);
    CHECK(alpha_iter(odd_orbit(1), 2) == 3);
    CHECK(alpha_iter(elliptic(5, 7), 4) == 2); // floor(20/7)
    CHECK(alpha_iter(elliptic(5, 7), -4) == -3);
    CHECK(alpha_iter(even_orbit(-1), -3) == 3);
}

TEST_CASE("elliptic guard") {
    CHECK_THROWS_MATCHES(alpha_iter(elliptic(5, 7), 7), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("EllipticGuardViolated")));
    CHECK_THROWS_AS(alpha_iter(elliptic(5, 7), 14), Error);
    SimpleOrbit tight = elliptic(5, 7);
    tight.horizon = 3;
    CHECK_THROWS_AS(alpha_iter(tight, 4), Error);
    CHECK_THROWS_AS(alpha_iter(elliptic(5, 7), 0), Error);
}

TEST_CASE("parity of covers") {
    CHECK(parity_iter(even_orbit(9), 7) == 0);
    CHECK(parity_iter(odd_orbit(1), 2) == 0);
    CHECK(parity_iter(odd_orbit(1), 3) == 1);
    CHECK(parity_iter(elliptic(5, 7), 3) == 1);
    CHECK(parity_iter(elliptic(5, 7), -2) == 1);
}

TEST_CASE("Conley-Zehnder index") {
    CHECK(cz_index(even_orbit(2), 3) == 12);
    CHECK(cz_index(elliptic(5, 7), 1) == 1);
    CHECK(cz_index(odd_orbit(0), 1) == 1);
}

TEST_CASE("spectral covering number") {
    CHECK(spectral_covering(even_orbit(3), 4) == 4);
    CHECK(spectral_covering(odd_orbit(0), 6) == 3);
    CHECK(spectral_covering(elliptic(5, 7), 4) == 2);
    // closed forms for hyperbolic orbits
    for (long long k = 1; k <= 20; ++k) {
        CHECK(spectral_covering(even_orbit(2), k) == k);
        CHECK(spectral_covering(even_orbit(2), -k) == k);
        long long expect = k % 2 == 0 ? k / 2 : 1;
        CHECK(spectral_covering(odd_orbit(3), k) == expect);
    }
}

TEST_CASE("alpha under trivialization shifts") {
    CHECK(shift_alpha(2, 3, {1}) == 5);
    CHECK(shift_alpha(2, 3, {0}) == 2);
    CHECK(shift_alpha(-1, -2, {2}) == -5);
    // sigma_bar is blind to the shift
    for (long long d = -5; d <= 5; ++d)
        for (long long k = 1; k <= 30; ++k) {
            if (k % 17 == 0) continue;
            long long a = alpha_iter(elliptic(12, 17), k);
            CHECK(std::gcd(k, std::llabs(shift_alpha(a, k, {d}))) ==
                  std::gcd(k, std::llabs(a)));
        }
}

TEST_CASE("concatenation defect closed forms") {
    CHECK(concat_defect(even_orbit(5), 4, 9) == 0);
    CHECK(concat_defect(odd_orbit(0), 3, 5) == 3); // min{5*1, 3*1} = 3
    CHECK(concat_defect(elliptic(5, 7), 2, 3) == 2);

    for (long long m = 1; m <= 12; ++m)
        for (long long n = 1; n <= 12; ++n) {
            CHECK(concat_defect(even_orbit(-2), m, n) == 0);
            long long odd_expect = std::min(n * (m % 2), m * (n % 2));
            CHECK(concat_defect(odd_orbit(1), m, n) == odd_expect);
            CHECK(concat_defect(elliptic(101, 257), m, n) >= 1);
        }
}

TEST_CASE("rotation index") {
    CHECK(rotation_index(elliptic(5, 7)) == Rational(5, 7));
    CHECK(rotation_index(elliptic(12, 7)) == Rational(5, 7));
    CHECK(rotation_index(elliptic(-2, 7)) == Rational(5, 7));
    CHECK_THROWS_AS(rotation_index(even_orbit(0)), Error);
}

TEST_CASE("iteration identities across kinds") {
    std::vector<SimpleOrbit> orbits = {elliptic(5, 7),  elliptic(12, 17), elliptic(101, 257),
                                       even_orbit(-3),  even_orbit(0),    even_orbit(4),
                                       odd_orbit(-2),   odd_orbit(0),     odd_orbit(3)};
    for (const auto& orbit : orbits)
        for (long long k = -50; k <= 50; ++k) {
            if (k == 0 || !guard_ok(orbit, k)) continue;
            CHECK(cz_index(orbit, k) == 2 * alpha_iter(orbit, k) + parity_iter(orbit, k));
            long long sum = alpha_iter(orbit, k) + alpha_iter(orbit, -k);
            if (orbit.is_elliptic()) CHECK(sum == -1);
            if (orbit.is_even()) CHECK(sum == 0);
            if (orbit.is_odd_hyperbolic()) CHECK(sum == -parity_of_int(k));
        }
}

TEST_CASE("odd hyperbolic alpha satisfies both printed forms") {
    for (long long a0 = -3; a0 <= 3; ++a0)
        for (long long k = -50; k <= 50; ++k) {
            if (k == 0) continue;
            long long lhs = alpha_iter(odd_orbit(a0), k);
            CHECK(lhs == k * a0 + (k - parity_of_int(k)) / 2);
        }
}

TEST_CASE("rebasing the reference trivialization shifts alpha by k*deg") {
    std::vector<SimpleOrbit> orbits = {elliptic(5, 7), even_orbit(2), odd_orbit(-1)};
    for (const auto& orbit : orbits)
        for (long long d = -5; d <= 5; ++d) {
            SimpleOrbit shifted = rebase_orbit(orbit, d);
            for (long long k = -20; k <= 20; ++k) {
                if (k == 0 || !guard_ok(orbit, k)) continue;
                CHECK(alpha_iter(shifted, k) == shift_alpha(alpha_iter(orbit, k), k, {d}));
                CHECK(parity_iter(shifted, k) == parity_iter(orbit, k));
            }
        }
}
