#include <catch2/catch.hpp>

#include <random>

#include "hecke/mollifier.hpp"

using namespace hecke;

TEST_CASE("H shape") {
    HShape H;
    H.theta = 0.2;
    double c = 2.0 + 1.5 / 0.2;
    CHECK(H(0.0) == Approx(c));
    CHECK(H(1.0) == 0.0);
    CHECK(H(0.5) == Approx(0.25 * (c + 0.5)));
    CHECK(H(-0.2) == 0.0);
    CHECK(H(1.3) == 0.0);
    CHECK(H.h0() == Approx(c));
    CHECK(H.hp0() == Approx(1.0 - 2.0 * c));

    SECTION("analytic derivatives match finite differences") {
        for (double x : {0.1, 0.35, 0.6, 0.9}) {
            double h1 = 1e-6, h2 = 1e-4;
            double fd1 = (H(x + h1) - H(x - h1)) / (2.0 * h1);
            double fd2 = (H(x + h2) - 2.0 * H(x) + H(x - h2)) / (h2 * h2);
            CHECK(H.deriv1(x) == Approx(fd1).margin(1e-8));
            CHECK(H.deriv2(x) == Approx(fd2).margin(1e-4));
        }
    }

    SECTION("smoothed variant agrees on [0,1] and rolls off smoothly") {
        HShape S;
        S.theta = 0.2;
        S.kind = HShape::Kind::smoothed_hstar;
        S.eps = 0.01;
        for (double x = 0.0; x <= 1.0; x += 0.07) CHECK(S(x) == Approx(H(x)));
        CHECK(S(-0.02) == 0.0);
        CHECK(S(-0.005) > 0.0);
        CHECK(S(-0.005) < S(0.0));
    }
}

TEST_CASE("mollifier coefficients") {
    MollifierSpec spec(100000.0, 0.17409, 0.14);
    // b_1 = H(0)
    CHECK(mollifier_b(kOne, spec) == Approx(spec.shape.h0()));
    // non-squarefree -> 0 (norm 25 = (norm 5)^2 fits under M iff M >= 25)
    MollifierSpec wide(1e9, 0.25, 0.1);
    GaussInt pisq = primary_associate(GaussInt{-1, -2} * GaussInt{-1, -2}).second;
    CHECK(mollifier_b(pisq, wide) == 0.0);
    // boundary: H(1) = 0 at N(m) = M
    // (take m of norm 5 and a spec with M = 5)
    MollifierSpec tight(5.0 * 5.0 * 5.0 * 5.0, 0.25, 0.1);  // M = 625^0.25 = 5
    CHECK(spec.shape(1.0) == 0.0);
    CHECK(mollifier_b(GaussInt{-1, -2}, tight) == Approx(0.0).margin(1e-12));
    // out of range throws
    CHECK_THROWS_AS(mollifier_b(GaussInt{-3, 0}, tight), std::domain_error);
    CHECK_THROWS_AS(mollifier_b(GaussInt{1, 2}, spec), std::domain_error);
}

TEST_CASE("spec parameter validation") {
    CHECK_THROWS_AS(MollifierSpec(1000.0, 0.3, 0.2), std::domain_error);
    CHECK_THROWS_AS(MollifierSpec(1000.0, 0.0, 0.1), std::domain_error);
    MollifierSpec ok(10000.0, 0.17409, 0.15);
    CHECK(ok.mollifier_length() == Approx(std::pow(10000.0, 0.17409)));
    CHECK(ok.sieve_radius() == Approx(std::pow(10000.0, 0.15)));
}

TEST_CASE("M(pi) fast path equals the naive oracle") {
    MollifierSpec spec(1e12, 0.25, 0.12);  // M = 10^3
    MollifierTerms terms(spec);
    REQUIRE(terms.m.size() > 50);
    NormSieve sv = sieve_primes(30000);
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<std::size_t> pick(0, sv.primes.size() - 1);
    for (int t = 0; t < 10; ++t) {
        const GaussInt& pi = sv.primes[pick(rng)];
        double fast = mollifier_value(pi, terms);
        double naive = mollifier_value_naive(pi, spec);
        REQUIRE(fast == Approx(naive).margin(1e-12));
    }
}

TEST_CASE("M(pi) degenerate cases") {
    // only the m = 1 term when M < 2
    MollifierSpec spec(100.0, 0.1, 0.19);  // M = 100^0.1 ~ 1.58
    MollifierTerms terms(spec);
    REQUIRE(terms.m.size() == 1);
    CHECK(mollifier_value(GaussInt{-3, 0}, terms) == Approx(spec.shape.h0()));
}
