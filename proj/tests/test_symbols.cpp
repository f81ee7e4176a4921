#include <catch2/catch.hpp>

#include <cstdio>
#include <map>
#include <random>

#include "hecke/symbols.hpp"

using namespace hecke;

namespace {

std::mt19937_64 rng(0xabcdef12);

GaussInt random_gauss(i64 box) {
    std::uniform_int_distribution<i64> d(-box, box);
    return {d(rng), d(rng)};
}

GaussInt random_odd(i64 box) {
    GaussInt z;
    do { z = random_gauss(box); } while (z.is_zero() || !is_odd(z));
    return z;
}

GaussInt random_primary(i64 box) {
    return primary_associate(random_odd(box)).second;
}

}  // namespace

TEST_CASE("euler criterion examples") {
    // (i / -1-2i): i^((5-1)/2) = i^2 = -1
    CHECK(euler_symbol(kImagUnit, GaussInt{-1, -2}) == -1);
    CHECK(euler_symbol(GaussInt{-1, -2}, GaussInt{-1, -2}) == 0);
    // squares are residues
    for (int t = 0; t < 200; ++t) {
        GaussInt pi = GaussInt{-1, -2};
        GaussInt a = random_gauss(20);
        if (divides(pi, a)) continue;
        CHECK(euler_symbol(a * a, pi) == 1);
    }
}

TEST_CASE("residue_symbol conventions") {
    CHECK(residue_symbol(random_gauss(50), kOne) == 1);
    CHECK(residue_symbol(random_gauss(50), GaussInt{0, 1}) == 1);
    CHECK_THROWS_AS(residue_symbol(kOne, GaussInt{1, 1}), std::domain_error);
    // multiplicative extension: (a/n^2) = (a/n)^2
    GaussInt n{-1, 2};
    GaussInt a{3, 4};
    int s1 = residue_symbol(a, n);
    int s2 = residue_symbol(a, n * n);
    CHECK(s2 == s1 * s1);
}

TEST_CASE("mod_canonical is translation invariant") {
    for (int t = 0; t < 500; ++t) {
        GaussInt n = random_odd(40);
        GaussInt a = random_gauss(200);
        GaussInt k = random_gauss(5);
        CHECK(mod_canonical(a, n) == mod_canonical(a + k * n, n));
        GaussInt r = mod_canonical(a, n);
        CHECK(divides(n, a - r));
    }
}

TEST_CASE("char table build and properties") {
    const CharTable& tab = char_tables();

    SECTION("principal class maps to +1") {
        CHECK(tab.i_symbol(kOne) == 1);
        CHECK(tab.onepi_symbol(kOne) == 1);
    }

    SECTION("(i/pi) = (-1)^((N(pi)-1)/4) on random primary primes") {
        NormSieve sv = sieve_primes(20000);
        std::uniform_int_distribution<std::size_t> pick(0, sv.primes.size() - 1);
        for (int t = 0; t < 100; ++t) {
            const GaussInt& p = sv.primes[pick(rng)];
            u64 np = u64(norm(p));
            int expect = ((np - 1) / 4) % 2 == 0 ? 1 : -1;
            REQUIRE(tab.i_symbol(p) == expect);
            REQUIRE(tab.i_symbol(p) == euler_symbol(kImagUnit, p));
            REQUIRE(tab.onepi_symbol(p) == euler_symbol(kOnePlusI, p));
        }
    }

    SECTION("class function: primes in the same class mod 16(1+i) share values") {
        NormSieve sv = sieve_primes(30000);
        std::map<std::size_t, std::pair<int, int>> seen;
        int pairs = 0;
        for (const GaussInt& p : sv.primes) {
            auto k = CharTable::class_key(p);
            auto vi = euler_symbol(kImagUnit, p);
            auto vo = euler_symbol(kOnePlusI, p);
            auto it = seen.find(k);
            if (it == seen.end()) {
                seen[k] = {vi, vo};
            } else {
                REQUIRE(it->second.first == vi);
                REQUIRE(it->second.second == vo);
                if (++pairs > 400) break;
            }
        }
        REQUIRE(pairs > 100);
    }

    SECTION("dump/load round trip") {
        std::string path = "/tmp/hecke_chartable_test.txt";
        tab.dump(path);
        CharTable loaded = CharTable::load(path);
        for (int t = 0; t < 200; ++t) {
            GaussInt n = random_primary(60);
            REQUIRE(loaded.i_symbol(n) == tab.i_symbol(n));
            REQUIRE(loaded.onepi_symbol(n) == tab.onepi_symbol(n));
        }
        std::remove(path.c_str());
    }
}

TEST_CASE("fast symbol equals the Euler-criterion symbol") {
    int done = 0;
    while (done < 20000) {
        GaussInt n = random_odd(700);  // norms up to ~10^6
        GaussInt a = random_gauss(700);
        if (a.is_zero()) continue;
        REQUIRE(residue_symbol_fast(a, n) == residue_symbol(a, n));
        ++done;
    }
}

TEST_CASE("reciprocity (m/n) = (n/m) for coprime primary pairs") {
    int done = 0;
    while (done < 3000) {
        GaussInt m = random_primary(70);
        GaussInt n = random_primary(70);
        if (norm(m) > 10000 || norm(n) > 10000) continue;
        if (!gcd(m, n).is_one()) continue;
        REQUIRE(residue_symbol(m, n) == residue_symbol(n, m));
        ++done;
    }
    // a worked pair
    CHECK(residue_symbol(GaussInt{-1, -2}, GaussInt{-3, 0}) ==
          residue_symbol(GaussInt{-3, 0}, GaussInt{-1, -2}));
}

TEST_CASE("multiplicativity in numerator and denominator") {
    // exhaustive over odd m, n of norm <= 300 (sampled numerators)
    std::vector<GaussInt> odds;
    for (i64 a = -17; a <= 17; ++a)
        for (i64 b = -17; b <= 17; ++b) {
            GaussInt z{a, b};
            if (!z.is_zero() && is_odd(z) && norm(z) <= 300) odds.push_back(z);
        }
    std::uniform_int_distribution<std::size_t> pick(0, odds.size() - 1);
    for (int t = 0; t < 3000; ++t) {
        GaussInt m = odds[pick(rng)], n = odds[pick(rng)];
        GaussInt a = random_gauss(30), b = random_gauss(30);
        if (a.is_zero() || b.is_zero()) continue;
        REQUIRE(residue_symbol_fast(a * b, n) ==
                residue_symbol_fast(a, n) * residue_symbol_fast(b, n));
        REQUIRE(residue_symbol_fast(a, m * n) ==
                residue_symbol_fast(a, m) * residue_symbol_fast(a, n));
    }
}

TEST_CASE("squares are residues mod primary primes") {
    NormSieve sv = sieve_primes(5000);
    std::uniform_int_distribution<std::size_t> pick(0, sv.primes.size() - 1);
    for (int t = 0; t < 500; ++t) {
        const GaussInt& pi = sv.primes[pick(rng)];
        GaussInt a = random_gauss(50);
        if (a.is_zero() || divides(pi, a)) continue;
        REQUIRE(residue_symbol_fast(a * a, pi) == 1);
    }
}

TEST_CASE("chi conventions") {
    SECTION("chi_{+-1} is identically 1") {
        for (int t = 0; t < 100; ++t) {
            GaussInt a = random_gauss(100);
            CHECK(chi_eval(kOne, a) == 1);
            CHECK(chi_eval(GaussInt{-1, 0}, a) == 1);
        }
    }
    SECTION("chi_{(1+i)^5 pi}(1+i) = 0") {
        GaussInt c = pow(kOnePlusI, 5) * GaussInt{-1, -2};
        CHECK(chi_eval(c, kOnePlusI) == 0);
        CHECK(chi_eval(c, GaussInt{2, 0}) == 0);
    }
    SECTION("chi_{(1+i)^5 pi}(n) = ((1+i)/n)(pi/n) for odd n coprime to pi") {
        GaussInt pi{-1, -2};
        GaussInt c = pow(kOnePlusI, 5) * pi;
        int done = 0;
        while (done < 500) {
            GaussInt n = random_odd(80);
            if (divides(pi, n)) continue;
            int lhs = chi_eval(c, n);
            int rhs = residue_symbol_fast(kOnePlusI, n) * residue_symbol_fast(pi, n);
            REQUIRE(lhs == rhs);
            ++done;
        }
    }
    SECTION("chi_{(1+i)^5 d} is well-defined per prime: table path vs Euler path") {
        NormSieve sv = sieve_primes(2000);
        std::uniform_int_distribution<std::size_t> pick(0, sv.primes.size() - 1);
        for (int t = 0; t < 200; ++t) {
            const GaussInt& d = sv.primes[pick(rng)];
            const GaussInt& n = sv.primes[pick(rng)];
            if (d == n) continue;
            GaussInt c = pow(kOnePlusI, 5) * d;
            int fast = chi_eval(c, n);
            int slow = euler_symbol(kOnePlusI, n) * euler_symbol(d, n);
            REQUIRE(fast == slow);
        }
    }
}

TEST_CASE("symbol periodicity in the denominator mod 16(1+i)") {
    // (i/.) and ((1+i)/.) are class functions mod 16(1+i): shifting the
    // denominator by multiples of 16(1+i) preserves values
    const GaussInt mu{16, 16};
    int done = 0;
    while (done < 300) {
        GaussInt n = random_primary(60);
        GaussInt t = random_gauss(4);
        GaussInt n2 = n + mu * (t * GaussInt{4, 0});  // 64(1+i) multiples keep primarity
        if (n2.is_zero() || !is_odd(n2)) continue;
        if (!is_primary_fast(n2)) continue;
        REQUIRE(residue_symbol_fast(kImagUnit, n) == residue_symbol_fast(kImagUnit, n2));
        REQUIRE(residue_symbol_fast(kOnePlusI, n) == residue_symbol_fast(kOnePlusI, n2));
        ++done;
    }
}
