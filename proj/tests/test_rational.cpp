#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "czint/rational.hpp"

using czint::Rational;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(5, 7) + Rational(2, 7) == Rational(1));
    CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
    CHECK(Rational(7, 3) - Rational(1, 3) == Rational(2));
    CHECK(Rational(1, 2) / Rational(3, 4) == Rational(2, 3));
    CHECK(Rational(-1, 2) < Rational(1, 3));
}

TEST_CASE("floor and fractional part") {
    CHECK(Rational(20, 7).floor() == 2);
    CHECK(Rational(-10, 7).floor() == -2);
    CHECK(Rational(-15, 7).floor() == -3);
    CHECK(Rational(6).floor() == 6);
    CHECK(Rational(-6).floor() == -6);
    CHECK(Rational(12, 7).frac() == Rational(5, 7));
    CHECK(Rational(-2, 7).frac() == Rational(5, 7));
    CHECK(Rational(9, 4).ceil() == 3);
    CHECK(Rational(-9, 4).ceil() == -2);
}

TEST_CASE("floor of k*theta matches integer floor division for random rationals") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        long long p = (long long)(rng() % 2001) - 1000;
        long long q = (long long)(rng() % 999) + 2;
        long long k = (long long)(rng() % 201) - 100;
        Rational r = Rational(k) * Rational(p, q);
        long long f = r.floor();
        CHECK(Rational(f) <= r);
        CHECK(r < Rational(f + 1));
    }
}

TEST_CASE("overflow raises") {
    Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * Rational(4), czint::Error);
    CHECK_THROWS_AS(Rational(1, 0), czint::Error);
}
