#include <catch2/catch.hpp>

#include <random>

#include "hecke/enumerate.hpp"
#include "hecke/gauss_sum.hpp"

using namespace hecke;

namespace {
std::mt19937_64 rng(0x6a755353);

GaussInt random_gauss(i64 box) {
    std::uniform_int_distribution<i64> d(-box, box);
    return {d(rng), d(rng)};
}
}  // namespace

TEST_CASE("e_tilde basics") {
    CHECK(std::abs(e_tilde({3.7, 0.0}) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(e_tilde({0.0, 0.5}) - cplx{-1.0, 0.0}) < 1e-12);
    for (int t = 0; t < 100; ++t) {
        std::uniform_real_distribution<double> d(-20.0, 20.0);
        cplx z{d(rng), d(rng)};
        CHECK(std::abs(std::abs(e_tilde(z)) - 1.0) < 1e-14);
    }
}

TEST_CASE("residue systems") {
    auto r2 = residue_system(kOnePlusI);
    CHECK(r2.size() == 2);
    auto r9 = residue_system(GaussInt{-3, 0});
    CHECK(r9.size() == 9);
    // pairwise incongruent
    for (std::size_t i = 0; i < r9.size(); ++i)
        for (std::size_t j = i + 1; j < r9.size(); ++j)
            CHECK_FALSE(divides(GaussInt{-3, 0}, r9[i] - r9[j]));
    CHECK_THROWS_AS(residue_system(GaussInt{200, 1}, 10000), std::domain_error);
    CHECK_THROWS_AS(residue_system(kZero), std::domain_error);
}

TEST_CASE("gauss sum worked examples") {
    // g(0,-3) = 0: l=1 <= h=infty odd
    CHECK(std::abs(gauss_sum_bruteforce(kZero, GaussInt{-3, 0})) < 1e-12);
    CHECK(std::abs(gauss_sum(kZero, GaussInt{-3, 0})) < 1e-12);

    // g(1, -1-2i) = -sqrt(5)
    cplx g5 = gauss_sum_bruteforce(kOne, GaussInt{-1, -2});
    CHECK(std::abs(g5 - cplx{-std::sqrt(5.0), 0.0}) < 1e-9);
    CHECK(std::abs(gauss_sum(kOne, GaussInt{-1, -2}) - g5) < 1e-9);

    // unit modulus convention
    CHECK(std::abs(gauss_sum_bruteforce(kOne, kOne) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(gauss_sum(kOne, kOne) - cplx{1.0, 0.0}) < 1e-15);

    // g(k, pi^2) = -N(pi) when pi || k (l = h+1 = 2 even); when pi does not
    // divide k the l >= h+2 branch gives 0.  Both confirmed by brute force.
    GaussInt pi{-1, 2};
    GaussInt pisq0 = primary_associate(pi * pi).second;
    CHECK(std::abs(gauss_sum(pi, pisq0) - cplx{-5.0, 0.0}) < 1e-12);
    CHECK(std::abs(gauss_sum_bruteforce(pi, pisq0) - cplx{-5.0, 0.0}) < 1e-9);
    CHECK(std::abs(gauss_sum(GaussInt{1, 0}, pisq0)) < 1e-12);
    CHECK(std::abs(gauss_sum_bruteforce(GaussInt{1, 0}, pisq0)) < 1e-9);

    // g(pi, pi) = 0 (l = 1 <= h = 1 odd)
    CHECK(std::abs(gauss_sum(pi, primary_associate(pi).second)) < 1e-12);
    CHECK(std::abs(gauss_sum_bruteforce(GaussInt{-1, -2}, GaussInt{-1, -2})) < 1e-12);

    // g(0, pi^2) = phi(pi^2) (the h = infinity, even-l branch)
    GaussInt pisq = primary_associate(pi * pi).second;
    CHECK(std::abs(gauss_sum(kZero, pisq) - cplx{20.0, 0.0}) < 1e-12);
    CHECK(std::abs(gauss_sum_bruteforce(kZero, pisq) - cplx{20.0, 0.0}) < 1e-9);
}

TEST_CASE("closed form equals brute force, exhaustive small sweep") {
    // moduli: every primary n with N(n) <= 120; k in a small box
    auto primaries = enumerate_primary(120);
    for (const GaussInt& n : primaries) {
        if (n.is_one()) continue;
        for (i64 kr = -3; kr <= 3; ++kr) {
            for (i64 ki = -3; ki <= 3; ++ki) {
                GaussInt k{kr, ki};
                cplx a = gauss_sum(k, n);
                cplx b = gauss_sum_bruteforce(k, n);
                REQUIRE(std::abs(a - b) < 1e-8);
            }
        }
    }
}

TEST_CASE("twisting identity g(rs,n) = (s/n) g(r,n)") {
    int done = 0;
    while (done < 200) {
        GaussInt n = random_gauss(9);
        if (n.is_zero() || !is_odd(n) || n.is_unit() || norm(n) > 150) continue;
        n = primary_associate(n).second;
        GaussInt r = random_gauss(5);
        GaussInt s = random_gauss(5);
        if (s.is_zero() || !gcd(s, n).is_one()) continue;
        cplx lhs = gauss_sum_bruteforce(r * s, n);
        cplx rhs = double(residue_symbol_fast(s, n)) * gauss_sum_bruteforce(r, n);
        REQUIRE(std::abs(lhs - rhs) < 1e-9);
        ++done;
    }
}

TEST_CASE("multiplicativity across coprime primary moduli") {
    auto primaries = enumerate_primary(60);
    int done = 0;
    std::uniform_int_distribution<std::size_t> pick(1, primaries.size() - 1);
    while (done < 120) {
        GaussInt m = primaries[pick(rng)];
        GaussInt n = primaries[pick(rng)];
        if (m.is_one() || n.is_one()) continue;
        if (norm(m) * norm(n) > 2500) continue;
        if (!gcd(m, n).is_one()) continue;
        GaussInt k = random_gauss(4);
        cplx lhs = gauss_sum_bruteforce(k, primary_associate(m * n).second);
        cplx rhs = gauss_sum_bruteforce(k, m) * gauss_sum_bruteforce(k, n);
        REQUIRE(std::abs(lhs - rhs) < 1e-8);
        ++done;
    }
}

TEST_CASE("|g(k,n)| = sqrt(N(n)) for squarefree n coprime to k") {
    auto primaries = enumerate_primary(300);
    int done = 0;
    std::uniform_int_distribution<std::size_t> pick(1, primaries.size() - 1);
    while (done < 150) {
        GaussInt n = primaries[pick(rng)];
        if (n.is_one()) continue;
        FactoredElement fe = factor(n);
        if (!is_squarefree(fe)) continue;
        GaussInt k = random_gauss(6);
        if (k.is_zero() || !gcd(k, n).is_one()) continue;
        double target = std::sqrt(to_double(norm(n)));
        REQUIRE(std::abs(std::abs(gauss_sum(k, n)) - target) < 1e-9 * target);
        REQUIRE(std::abs(std::abs(gauss_sum_bruteforce(k, n)) - target) < 1e-9 * target);
        ++done;
    }
}

TEST_CASE("prime power magnitudes lie on the allowed ladder") {
    // |g| in {0} union {N^{j/2}} for prime-power moduli and k != 0; k = 0
    // lands on phi(pi^l) instead (covered in the worked examples)
    GaussInt pi{3, 2};  // norm 13
    for (int l = 1; l <= 2; ++l) {
        GaussInt mod = primary_associate(pow(pi, unsigned(l))).second;
        for (i64 kr = -2; kr <= 2; ++kr) {
            for (i64 ki = -2; ki <= 2; ++ki) {
                if (kr == 0 && ki == 0) continue;
                double mag = std::abs(gauss_sum_bruteforce(GaussInt{kr, ki}, mod));
                if (mag < 1e-9) continue;
                double ratio = std::log(mag) / std::log(13.0);
                double nearest = std::round(ratio * 2.0) / 2.0;
                REQUIRE(std::abs(ratio - nearest) < 1e-9);
            }
        }
    }
}
