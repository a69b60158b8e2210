#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "czint/orbit.hpp"
#include "czint/spectral.hpp"

using namespace czint;

namespace {

LoopOperator random_smooth(std::mt19937_64& rng, int order) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    LoopOperator op;
    op.c0 = {coef(rng), coef(rng), coef(rng)};
    for (int f = 1; f <= order; ++f) {
        op.cos_coeffs.push_back({coef(rng), coef(rng), coef(rng)});
        op.sin_coeffs.push_back({coef(rng), coef(rng), coef(rng)});
    }
    return op;
}

} // namespace

TEST_CASE("winding of sampled loops") {
    auto sample = [](auto f) {
        std::vector<std::complex<double>> out;
        for (int m = 0; m < 256; ++m) out.push_back(f(double(m) / 256));
        return out;
    };
    CHECK(winding_of(sample([](double t) {
              return std::complex<double>(std::cos(2 * M_PI * t), std::sin(2 * M_PI * t));
          })) == 1);
    CHECK(winding_of(sample([](double) { return std::complex<double>(0.7, -0.2); })) == 0);
    CHECK(winding_of(sample([](double t) {
              return std::complex<double>(std::cos(4 * M_PI * t), -std::sin(4 * M_PI * t));
          })) == -2);
    CHECK_THROWS_AS(winding_of(sample([](double t) {
                        return std::complex<double>(t - 0.5, 0.0);
                    })),
                    Error);
}

TEST_CASE("free operator spectrum") {
    LoopOperator free_op; // S = 0
    Eigen::MatrixXd A = discretize(free_op, 4);
    CHECK((A - A.transpose()).cwiseAbs().maxCoeff() < 1e-12 * (1 + A.cwiseAbs().maxCoeff()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    REQUIRE(solver.eigenvalues().size() == 18);
    // eigenvalues 2*pi*j, each twice, j = -4..4
    for (int j = -4; j <= 4; ++j) {
        int count = 0;
        for (int i = 0; i < 18; ++i)
            if (std::abs(solver.eigenvalues()(i) - 2 * M_PI * j) < 1e-9) ++count;
        CHECK(count == 2);
    }
}

TEST_CASE("constant elliptic spectrum matches the closed form") {
    LoopOperator op = spectral_models::elliptic(0.3);
    auto pairs = window_spectrum(op, 32, 40.0);
    for (const auto& p : pairs) {
        double expected = 2 * M_PI * (double(p.winding) - 0.3);
        CHECK(std::abs(p.eigenvalue - expected) < 1e-9);
    }
    auto [alpha, parity] = alpha_parity_numeric(op, 32);
    CHECK(alpha == 0);
    CHECK(parity == 1);
}

TEST_CASE("constant even hyperbolic spectrum matches the closed form") {
    LoopOperator op = spectral_models::even_hyperbolic(1.0);
    auto pairs = window_spectrum(op, 32, 30.0);
    for (const auto& p : pairs) {
        // |lambda| = sqrt(1 + 4 pi^2 n^2) with n = winding
        double expected = std::sqrt(1.0 + 4 * M_PI * M_PI * double(p.winding * p.winding));
        CHECK(std::abs(std::abs(p.eigenvalue) - expected) < 1e-8);
    }
    auto [alpha, parity] = alpha_parity_numeric(op, 32);
    CHECK(alpha == 0);
    CHECK(parity == 0);
}

TEST_CASE("zero operator is degenerate") {
    LoopOperator free_op;
    CHECK_THROWS_MATCHES(alpha_parity_numeric(free_op, 16), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("DegenerateOrbit")));
}

TEST_CASE("spectrum laws hold for smooth operators") {
    LawReport r1 = verify_spectrum_laws(spectral_models::elliptic(0.3), 32, 30.0);
    CHECK(r1.ok);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        LoopOperator op = random_smooth(rng, 4);
        LawReport rep = verify_spectrum_laws(op, 48, 30.0);
        INFO((rep.violations.empty() ? std::string() : rep.violations.front()));
        CHECK(rep.ok);
    }
}

TEST_CASE("cover law") {
    LoopOperator op = spectral_models::elliptic(0.3);
    LawReport rep = verify_cover_law(op, 4, 32, 8.0);
    INFO((rep.violations.empty() ? std::string() : rep.violations.front()));
    CHECK(rep.ok);
    auto [alpha4, parity4] = alpha_parity_numeric(op.cover(4), 32);
    CHECK(alpha4 == 1); // floor(4 * 0.3)
    CHECK(parity4 == 1);

    CHECK(verify_cover_law(op, 1, 32, 8.0).ok);

    LoopOperator h = spectral_models::even_hyperbolic(1.0);
    auto [alpha3, parity3] = alpha_parity_numeric(h.cover(3), 32);
    CHECK(alpha3 == 0);
    CHECK(parity3 == 0);
}

TEST_CASE("model families agree with the exact iteration laws") {
    SpectralParams params;

    SimpleOrbit ell{"e", Rational(1), Elliptic{Rational(3, 10)}};
    LoopOperator ell_op = spectral_models::elliptic(0.3);
    for (long long k = 1; k <= 8; ++k) {
        auto [a, p] = alpha_parity_numeric(ell_op.cover(k), 48, params);
        CHECK(a == alpha_iter(ell, k));
        CHECK(p == parity_iter(ell, k));
    }

    auto modes_for = [](const LoopOperator& op) {
        return std::max(48, 2 * op.fourier_order() + 16);
    };
    for (long long a0 : {-1LL, 0LL, 2LL}) {
        SimpleOrbit ev{"h", Rational(1), EvenHyperbolic{a0}};
        LoopOperator ev_op = spectral_models::even_hyperbolic(1.0, a0);
        for (long long k = 1; k <= 8; ++k) {
            LoopOperator cov = ev_op.cover(k);
            auto [a, p] = alpha_parity_numeric(cov, modes_for(cov), params);
            CHECK(a == alpha_iter(ev, k));
            CHECK(p == parity_iter(ev, k));
        }
    }

    for (long long a0 : {0LL, 1LL}) {
        SimpleOrbit od{"o", Rational(1), OddHyperbolic{a0}};
        LoopOperator od_op = spectral_models::odd_hyperbolic(4.0, a0);
        for (long long k = 1; k <= 8; ++k) {
            LoopOperator cov = od_op.cover(k);
            auto [a, p] = alpha_parity_numeric(cov, modes_for(cov), params);
            CHECK(a == alpha_iter(od, k));
            CHECK(p == parity_iter(od, k));
        }
    }
}

TEST_CASE("doubling the truncation leaves window eigenvalues put") {
    std::mt19937_64 rng(3);
    LoopOperator op = random_smooth(rng, 4);
    auto coarse = window_spectrum(op, 48, 20.0);
    auto fine = window_spectrum(op, 96, 20.0);
    REQUIRE(coarse.size() == fine.size());
    for (std::size_t i = 0; i < coarse.size(); ++i)
        CHECK(std::abs(coarse[i].eigenvalue - fine[i].eigenvalue) < 1e-8);
}

TEST_CASE("operators from samples") {
    std::mt19937_64 rng(5);
    LoopOperator op = random_smooth(rng, 3);
    std::vector<Sym2> samples;
    for (int j = 0; j < 33; ++j) samples.push_back(op.eval(double(j) / 33));
    LoopOperator back = LoopOperator::from_samples(samples);
    for (int j = 0; j < 10; ++j) {
        double t = double(j) / 10;
        CHECK(std::abs(op.eval(t).a - back.eval(t).a) < 1e-10);
        CHECK(std::abs(op.eval(t).b - back.eval(t).b) < 1e-10);
        CHECK(std::abs(op.eval(t).c - back.eval(t).c) < 1e-10);
    }
}

TEST_CASE("truncation guard") {
    LoopOperator op = spectral_models::odd_hyperbolic(4.0, 3); // Fourier order 7
    CHECK_THROWS_AS(discretize(op, 2 * op.fourier_order() - 1), Error);
    CHECK_THROWS_AS(window_spectrum(spectral_models::elliptic(0.3), 8, 100.0), Error);
}
